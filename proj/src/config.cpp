// Copyright 2026 The gpopt Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gpopt/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "gpopt/errors.hpp"

namespace gpopt {
namespace {

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::uint64_t ParseUnsigned(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config: '" + key + "' expects a non-negative integer, got '" + value + "'");
  }
  return out;
}

double ParseReal(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty()) {
    throw ConfigError("config: '" + key + "' expects a real number, got '" + value + "'");
  }
  return out;
}

std::string FormatReal(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

std::string_view HyperModeName(HyperMode mode) {
  switch (mode) {
    case HyperMode::kAuto: return "auto";
    case HyperMode::kFixed: return "fixed";
    case HyperMode::kCrossValidated: return "cross_validated";
  }
  return "";
}

void ExperimentConfig::Validate() const {
  AlphaFromDelta(policy.delta);
  kernel.Validate();
  if (trials == 0) throw ConfigError("config: trials must be positive");
  if (!(noise_variance > 0.0)) throw ConfigError("config: noise_variance must be positive");
  if (hyper_samples < 10) throw ConfigError("config: hyper_samples must be at least 10");
  if (grid && grid->kind == GridKind::kLattice && grid->per_axis == 0) {
    throw ConfigError("config: grid_per_axis must be positive");
  }
  if (grid && grid->kind == GridKind::kHalton && grid->count == 0) {
    throw ConfigError("config: grid_points must be positive");
  }
}

ExperimentConfig ParseConfig(std::istream& in) {
  ExperimentConfig config;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  GridSpec grid;
  bool grid_set = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config: line " + std::to_string(line_no) + " has an empty key or value");
    }
    if (!seen.insert(key).second) throw ConfigError("config: duplicate key '" + key + "'");

    if (key == "task") {
      config.task = value;
    } else if (key == "task_seed") {
      config.task_seed = ParseUnsigned(key, value);
    } else if (key == "policy") {
      config.policy.kind = ParsePolicyKind(value);
    } else if (key == "delta") {
      config.policy.delta = ParseReal(key, value);
    } else if (key == "horizon") {
      config.horizon = ParseUnsigned(key, value);
    } else if (key == "trials") {
      config.trials = ParseUnsigned(key, value);
    } else if (key == "init_observations") {
      config.init_observations = ParseUnsigned(key, value);
    } else if (key == "grid") {
      grid_set = true;
      if (value == "lattice") {
        grid.kind = GridKind::kLattice;
      } else if (value == "halton") {
        grid.kind = GridKind::kHalton;
      } else {
        throw ConfigError("config: grid must be lattice or halton");
      }
    } else if (key == "grid_per_axis") {
      grid_set = true;
      grid.per_axis = ParseUnsigned(key, value);
    } else if (key == "grid_points") {
      grid_set = true;
      grid.count = ParseUnsigned(key, value);
    } else if (key == "grid_seed") {
      grid_set = true;
      grid.seed = ParseUnsigned(key, value);
    } else if (key == "hyper_mode") {
      if (value == "auto") {
        config.hyper_mode = HyperMode::kAuto;
      } else if (value == "fixed") {
        config.hyper_mode = HyperMode::kFixed;
      } else if (value == "cross_validated") {
        config.hyper_mode = HyperMode::kCrossValidated;
      } else {
        throw ConfigError("config: hyper_mode must be auto, fixed or cross_validated");
      }
    } else if (key == "kernel") {
      if (value == "rbf") {
        config.kernel.family = KernelFamily::kSquaredExponential;
      } else if (value == "matern") {
        config.kernel.family = KernelFamily::kMatern;
      } else if (value == "linear") {
        config.kernel.family = KernelFamily::kLinear;
      } else {
        throw ConfigError("config: kernel must be rbf, matern or linear");
      }
    } else if (key == "length_scale") {
      config.kernel.length_scale = ParseReal(key, value);
    } else if (key == "matern_nu") {
      config.kernel.matern_nu = ParseReal(key, value);
    } else if (key == "output_scale") {
      config.kernel.output_scale = ParseReal(key, value);
    } else if (key == "hyper_samples") {
      config.hyper_samples = ParseUnsigned(key, value);
    } else if (key == "noise_variance") {
      config.noise_variance = ParseReal(key, value);
    } else if (key == "himmelblau_tilt") {
      config.himmelblau_tilt = ParseReal(key, value);
    } else if (key == "master_seed") {
      config.master_seed = ParseUnsigned(key, value);
    } else if (key == "threads") {
      config.threads = ParseUnsigned(key, value);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  if (grid_set) config.grid = grid;
  config.Validate();
  return config;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return ParseConfig(in);
}

std::map<std::string, std::string> DescribeConfig(const ExperimentConfig& config) {
  std::map<std::string, std::string> out;
  out["task"] = config.task;
  out["task_seed"] = std::to_string(config.task_seed);
  out["policy"] = std::string(PolicyName(config.policy.kind));
  out["delta"] = FormatReal(config.policy.delta);
  out["alpha"] = FormatReal(AlphaFromDelta(config.policy.delta));
  out["horizon"] = std::to_string(config.horizon);
  out["trials"] = std::to_string(config.trials);
  out["init_observations"] = std::to_string(config.init_observations);
  out["grid"] = config.grid ? config.grid->Describe() : "task default";
  out["hyper_mode"] = std::string(HyperModeName(config.hyper_mode));
  out["kernel"] = config.kernel.Describe();
  out["hyper_samples"] = std::to_string(config.hyper_samples);
  out["noise_variance"] = FormatReal(config.noise_variance);
  out["himmelblau_tilt"] = FormatReal(config.himmelblau_tilt);
  out["master_seed"] = std::to_string(config.master_seed);
  return out;
}

}  // namespace gpopt
