#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>

#include "riskol/experiment.hpp"

namespace riskol {

/// Flat `key = value` settings; keys match the long CLI flags without dashes.
using Settings = std::map<std::string, std::string>;

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
/// Throws std::invalid_argument naming the line on malformed input.
Settings parse_settings(std::istream& in);
Settings load_settings(const std::filesystem::path& path);

/// Applies settings on top of config; unknown keys and bad values throw.
void apply_settings(const Settings& settings, ExperimentConfig& config);

/// Value of RISKOL_OUT_DIR, or "results".
std::filesystem::path default_output_dir();

}  // namespace riskol
