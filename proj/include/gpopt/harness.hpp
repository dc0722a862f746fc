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

#ifndef GPOPT_HARNESS_HPP_
#define GPOPT_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gpopt/config.hpp"
#include "gpopt/kernel.hpp"
#include "gpopt/objectives.hpp"
#include "gpopt/policy.hpp"
#include "gpopt/posterior.hpp"
#include "gpopt/random.hpp"

namespace gpopt {

// One row of a trace. Initialization rows have t = 0 and carry no regret into
// the cumulative sum.
struct TraceRow {
  std::size_t t = 0;
  std::size_t index = 0;  // candidate index of x
  Point x;
  double y = 0.0;
  double regret = 0.0;      // max_value - f(x), true f
  double cum_regret = 0.0;  // R_t
  double avg_regret = 0.0;  // R_t / t
  double gamma_hat = 0.0;   // after this step
  double phi_at_query = 0.0;
  double sigma2_at_query = 0.0;  // posterior variance at x before the update
  double mean_at_query = 0.0;
  // Posterior quantities at the reference point (the optimum unless the
  // caller picks another grid point), before the update.
  double sigma2_at_reference = std::numeric_limits<double>::quiet_NaN();
  double mean_at_reference = std::numeric_limits<double>::quiet_NaN();
  double cov_reference_query = std::numeric_limits<double>::quiet_NaN();
  double max_phi = 0.0;  // max over candidates of phi_t
};

struct RegretTrace {
  std::string task;
  std::string policy;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t reference_index = 0;
  std::vector<TraceRow> init;
  std::vector<TraceRow> steps;
  bool failed = false;
  std::string error;

  double cumulative_regret() const { return steps.empty() ? 0.0 : steps.back().cum_regret; }
};

// Knobs of the select / evaluate / observe loop shared by the harness and
// the diagnostics.
struct LoopSetup {
  ObservationMode mode = ObservationMode::kNoisyValue;
  std::size_t horizon = 0;
  std::optional<std::size_t> reference_index;  // defaults to the optimum
};

// Runs one policy on one objective from the given initialization. Noisy
// values come from noise_rng; in regret-feedback mode the loop observes the
// noiseless regret max_value - f(x_t) instead. Numerical failures are caught
// and recorded in the trace.
RegretTrace RunPolicyLoop(const Objective& objective, const Kernel& kernel, double noise_variance,
                          const PolicyConfig& policy, const std::vector<std::size_t>& init_indices,
                          Rng& noise_rng, const LoopSetup& setup);

// Length-scale selection for an RBF kernel: 16 log-spaced values over
// [1e-2, 1e2] x (diameter of the samples' bounding box), scored by 5-fold
// cross-validated squared prediction error. Folds are assigned by a
// permutation drawn from seed.
Kernel EstimateHyperparams(const PointSet& points, const Eigen::VectorXd& values, double noise_variance,
                           std::uint64_t seed);
std::vector<double> LengthScaleGrid(double diameter);

// Objective plus the prior the learners share.
struct PreparedExperiment {
  Objective objective;
  Kernel kernel;
  std::vector<std::string> notes;
};

PreparedExperiment Prepare(const ExperimentConfig& config);

// Per-trial seed derived from the master seed.
std::uint64_t TrialSeed(std::uint64_t master_seed, std::size_t trial);
// Initialization indices, uniform without replacement; depends only on the
// trial seed so every policy sees the same set.
std::vector<std::size_t> InitIndices(std::uint64_t trial_seed, std::size_t grid_size, std::size_t count);

RegretTrace RunTrial(const ExperimentConfig& config, const PreparedExperiment& prepared, std::size_t trial);
RegretTrace RunTrial(const ExperimentConfig& config, std::size_t trial);

// All trials, ordered by trial index.
std::vector<RegretTrace> RunExperiment(const ExperimentConfig& config, const PreparedExperiment& prepared);

struct AggregateRow {
  std::size_t t = 0;
  double mean = 0.0;  // mean of R_t / t
  double lower = 0.0;
  double upper = 0.0;
  std::size_t n = 0;
};

// Mean average regret per step with a 95% normal interval over successful
// traces. Throws InputError with fewer than two of them or unequal horizons.
std::vector<AggregateRow> Aggregate(const std::vector<RegretTrace>& traces);

// CSV exports. Trace columns: task, policy, trial, t, x1..xd, y, regret,
// cum_regret, avg_regret, gamma_hat, phi_at_query, sigma2_at_query.
std::vector<std::string> TraceCsvHeader(std::size_t dim);
void WriteTracesCsv(const std::vector<RegretTrace>& traces, std::size_t dim, std::ostream& out);
void WriteTracesCsv(const std::vector<RegretTrace>& traces, std::size_t dim, const std::string& path);

// Aggregate columns: task, policy, t, mean_avg_regret, ci_lower, ci_upper, trials.
std::vector<std::string> AggregateCsvHeader();
void WriteAggregateCsv(const std::string& task, const std::string& policy,
                       const std::vector<AggregateRow>& rows, std::ostream& out, bool header = true);
void WriteAggregateCsv(const std::string& task, const std::string& policy,
                       const std::vector<AggregateRow>& rows, const std::string& path);

}  // namespace gpopt

#endif  // GPOPT_HARNESS_HPP_
