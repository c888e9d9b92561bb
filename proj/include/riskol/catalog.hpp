#pragma once

#include <string>
#include <vector>

#include "riskol/scenario.hpp"

namespace riskol {

/// Shared settings of the parking case study.
struct CaseStudy {
  int horizon = 500;
  ParkingOptions parking;
  std::size_t default_samples = 8;
};

struct CatalogEntry {
  std::string id;
  std::string description;
};

/// Ids and one-line descriptions of the built-in scenarios.
std::vector<CatalogEntry> builtin_scenarios();

/// Builds a built-in scenario; throws std::invalid_argument for an unknown id.
Scenario make_builtin_scenario(const std::string& id, const CaseStudy& study = {});

/// Target occupancy and risk schedules used by the catalog.
Schedule step_target(int switch_step = 200);
Schedule step_risk(int switch_step = 200);
Schedule sinusoidal_target(int horizon);
Schedule sinusoidal_risk(int horizon);
/// low if floor(2^m t / T) is even, high otherwise.
Schedule switching(int m, int horizon, double low, double high);

}  // namespace riskol
