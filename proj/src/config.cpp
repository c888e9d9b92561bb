#include "riskol/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace riskol {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw std::invalid_argument("setting " + key + ": not a number: " + v);
  return d;
}

unsigned long long to_count(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || v.front() == '-') {
    throw std::invalid_argument("setting " + key + ": not a non-negative integer: " + v);
  }
  return n;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("setting " + key + ": not a boolean: " + v);
}

std::vector<LearnerMode> to_modes(const std::string& v) {
  if (v == "first") return {LearnerMode::first_order};
  if (v == "zeroth") return {LearnerMode::zeroth_order};
  if (v == "both") return {LearnerMode::first_order, LearnerMode::zeroth_order};
  throw std::invalid_argument("setting mode: expected first, zeroth or both: " + v);
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  return out;
}

}  // namespace

Settings parse_settings(std::istream& in) {
  Settings out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("line " + std::to_string(number) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

Settings load_settings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path.string());
  return parse_settings(in);
}

void apply_settings(const Settings& settings, ExperimentConfig& config) {
  for (const auto& [key, v] : settings) {
    if (key == "scenario") {
      config.scenario = v;
    } else if (key == "mode") {
      config.modes = to_modes(v);
    } else if (key == "runs") {
      config.runs = to_count(key, v);
    } else if (key == "seed-base") {
      config.seed_base = to_count(key, v);
    } else if (key == "nt") {
      config.samples = SampleSpec::parse(v);
    } else if (key == "a") {
      config.a = to_double(key, v);
    } else if (key == "c") {
      config.c = to_double(key, v);
    } else if (key == "out") {
      config.out = v;
    } else if (key == "eta") {
      config.eta = to_double(key, v);
    } else if (key == "delta") {
      config.delta = to_double(key, v);
    } else if (key == "eta-scale-first") {
      config.eta_scale_first = to_double(key, v);
    } else if (key == "eta-scale-zeroth") {
      config.eta_scale_zeroth = to_double(key, v);
    } else if (key == "eta-grid") {
      config.eta_grid = to_list(key, v);
    } else if (key == "x1") {
      config.x1 = to_double(key, v);
    } else if (key == "threads") {
      config.threads = static_cast<unsigned>(to_count(key, v));
    } else if (key == "baselines") {
      config.baselines = to_bool(key, v);
    } else if (key == "horizon") {
      config.study.horizon = static_cast<int>(to_count(key, v));
    } else {
      throw std::invalid_argument("unknown setting: " + key);
    }
  }
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("RISKOL_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "results";
}

}  // namespace riskol
