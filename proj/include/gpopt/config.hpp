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

#ifndef GPOPT_CONFIG_HPP_
#define GPOPT_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>

#include "gpopt/grid.hpp"
#include "gpopt/kernel.hpp"
#include "gpopt/policy.hpp"

namespace gpopt {

enum class HyperMode {
  kAuto,            // fixed true kernel for generated GPs, cross-validated otherwise
  kFixed,           // use ExperimentConfig::kernel
  kCrossValidated,  // RBF length scale by 5-fold CV on a separate pre-sample
};

struct ExperimentConfig {
  std::string task = "himmelblau";
  std::uint64_t task_seed = 0;
  PolicyConfig policy;
  std::size_t horizon = 200;
  std::size_t trials = 100;
  std::size_t init_observations = 10;
  std::optional<GridSpec> grid;  // task default when empty
  HyperMode hyper_mode = HyperMode::kAuto;
  Kernel kernel = Kernel::SquaredExponential(1.0);
  std::size_t hyper_samples = 200;
  double noise_variance = 1e-4;  // GP model noise, standardized units
  double himmelblau_tilt = 0.5;
  std::uint64_t master_seed = 0;
  std::size_t threads = 0;  // 0: hardware concurrency

  void Validate() const;
};

// Flat "key = value" lines; '#' starts a comment; blank lines are ignored.
// Unknown keys, duplicate keys and malformed values throw ConfigError.
//
// Keys: task, task_seed, policy, delta, horizon, trials, init_observations,
// grid (lattice|halton), grid_per_axis, grid_points, grid_seed,
// hyper_mode (auto|fixed|cross_validated), kernel (rbf|matern|linear),
// length_scale, matern_nu, output_scale, hyper_samples, noise_variance,
// himmelblau_tilt, master_seed, threads.
ExperimentConfig ParseConfig(std::istream& in);
ExperimentConfig LoadConfig(const std::string& path);

// Key/value pairs describing the effective configuration.
std::map<std::string, std::string> DescribeConfig(const ExperimentConfig& config);

std::string_view HyperModeName(HyperMode mode);

}  // namespace gpopt

#endif  // GPOPT_CONFIG_HPP_
