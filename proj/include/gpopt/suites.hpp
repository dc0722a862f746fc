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

#ifndef GPOPT_SUITES_HPP_
#define GPOPT_SUITES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpopt/config.hpp"
#include "gpopt/harness.hpp"

namespace gpopt {

// Writes traces.csv, aggregate.csv and manifest.json for one experiment.
struct RunSummary {
  std::size_t trials = 0;
  std::size_t failed = 0;
};
RunSummary RunAndExport(const ExperimentConfig& config, const std::string& out_dir);

struct BenchOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t horizon = 200;
  std::size_t threads = 0;
  std::vector<std::string> tasks;  // empty: every paper task
  std::vector<PolicyKind> policies{PolicyKind::kGpMi, PolicyKind::kGpUcb, PolicyKind::kExpectedImprovement};
};

// The configuration bench uses for one (task, policy) cell.
ExperimentConfig BenchConfig(const BenchOptions& options, const std::string& task, PolicyKind policy);

// Per task: <task>/traces.csv (all policies); aggregate.csv and manifest.json
// at the top of out_dir.
RunSummary RunBenchSuite(const BenchOptions& options, const std::string& out_dir);

struct BoundsOptions {
  std::uint64_t seed = 0;
  std::optional<std::size_t> trials;   // overrides every Monte-Carlo trial count
  std::optional<std::size_t> horizon;  // overrides identity, residual and bound horizons
  std::size_t threads = 0;
};

struct GateResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// One CSV per check plus manifest.json listing the gated invariants.
std::vector<GateResult> RunBoundsSuite(const BoundsOptions& options, const std::string& out_dir);

}  // namespace gpopt

#endif  // GPOPT_SUITES_HPP_
