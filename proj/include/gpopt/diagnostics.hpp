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

#ifndef GPOPT_DIAGNOSTICS_HPP_
#define GPOPT_DIAGNOSTICS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpopt/harness.hpp"
#include "gpopt/kernel.hpp"
#include "gpopt/objectives.hpp"
#include "gpopt/policy.hpp"
#include "gpopt/posterior.hpp"
#include "gpopt/sampling.hpp"

namespace gpopt {

// Desk-scale simulation where f is an exact draw from the prior the learner
// uses, on an evenly spaced grid over [0, 1].
struct SampledGpSetup {
  Kernel kernel = Kernel::SquaredExponential(0.1);
  double noise_variance = 0.01;
  std::size_t grid_points = 100;

  PointSet Grid() const;
};

// Grid-backed objective holding one prior draw (not standardized); its noise
// level matches the setup's noise variance.
Objective SampledGpObjective(const SampledGpSetup& setup, const GpSampler& sampler, std::uint64_t seed);

// |sum_t phi_t(x_t) - sqrt(alpha gamma_hat_T)| where phi_t is the telescoping
// variant sqrt(alpha (var_t + gamma_{t-1})) - sum_{i<t} phi_i(x_i), rebuilt
// from the variance log. Throws InputError for non-GP-MI traces.
double CheckEq5Identity(const RegretTrace& trace, double alpha);

// RHS - LHS of the exploration-term inequality
//   sum_t (phi_t(x_t) - phi_t(x*)) <= sqrt(alpha g_T) - sqrt(alpha)/2 sum_t var_t(x*) / sqrt(g_T + 1),
// with phi_t the telescoping variant and x* the trace's reference point.
double CheckLemma4(const RegretTrace& trace, double alpha);

// C1 I(X_T) - gamma_hat_T over the policy's queries; negative means the
// inequality failed.
double CheckEq3(const RegretTrace& trace, const Kernel& kernel, double noise_variance);

enum class CrossTerm {
  kPosterior,  // posterior covariance of (f(x*), f(x_t))
  kPrior,      // prior k(x*, x_t), as an ablation
};

struct ResidualStats {
  double mean = 0.0;
  double variance = 0.0;
  std::size_t samples = 0;
  std::size_t excluded = 0;  // steps with l_t below 1e-6 (or l_t^2 < 0)
  bool sufficient = false;   // at least one pooled sample
};

// Pools Y_t / l_t with Y_t = r_t - (mu_t(x*) - mu_t(x_t)) and
// l_t^2 = var_t(x*) + var_t(x_t) - 2 cov, over GP-MI runs on prior draws.
// x* is a grid point drawn independently of f for every trial.
ResidualStats CheckLemma1Residuals(const SampledGpSetup& setup, std::size_t trials, std::size_t horizon,
                                   std::uint64_t seed, CrossTerm cross = CrossTerm::kPosterior,
                                   double delta = 0.05);

struct TrialBound {
  double regret = 0.0;        // R_T
  double bound = 0.0;         // 5 sqrt(alpha C1 gamma) + 4 sqrt(alpha)
  double gamma_proxy = 0.0;   // I_T(X_T) of the selected set
  double gamma_hat = 0.0;
  double generic_bound = 0.0; // generic-scheme bound with the same gamma stand-in
  bool failed = false;
};

struct BoundCheckReport {
  ObservationMode setting = ObservationMode::kNoisyValue;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t failed = 0;
  double violation_rate = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double greedy_gamma_upper = 0.0;  // inflated greedy surrogate, for context
  std::vector<TrialBound> per_trial;
};

// Monte-Carlo violation rate of the GP-MI regret bound. Failed trials are
// counted in `failed` and excluded from the rate.
BoundCheckReport CheckTheorem2(ObservationMode setting, const SampledGpSetup& setup, double delta,
                               std::size_t trials, std::size_t horizon, std::uint64_t seed);

struct GrowthFit {
  PolicyKind policy = PolicyKind::kGpMi;
  std::vector<double> mean_regret;  // per horizon
  double log_model_rss = 0.0;       // R_T ~ c (log T)^((d+1)/2)
  double sqrt_model_rss = 0.0;      // R_T ~ c sqrt(T)
  bool prefers_log = false;
};

struct GrowthReport {
  std::vector<std::size_t> horizons;
  std::vector<GrowthFit> fits;  // same order as the policies argument
  std::size_t dim = 1;
};

// Runs every policy on the same prior draws up to the largest horizon and
// compares one-parameter growth models on log R_T.
GrowthReport CheckCorollaryGrowth(const SampledGpSetup& setup, const std::vector<PolicyKind>& policies,
                                  const std::vector<std::size_t>& horizons, std::size_t trials,
                                  std::uint64_t seed, double delta = 0.05);

struct OverconfidenceOptions {
  MixtureSpec mixture;
  Kernel kernel = Kernel::SquaredExponential(0.5);
  double noise_variance = 1e-4;
  std::size_t horizon = 300;
  std::size_t init_observations = 10;
  double delta = 1e-6;

  // Thin-peak mixture learned with a too-long length scale.
  static OverconfidenceOptions ThinPeak();
  // Single broad bump with a matching length scale.
  static OverconfidenceOptions Unimodal();
};

struct OverconfidenceCase {
  std::uint64_t seed = 0;
  double initial_regret = 0.0;   // simple regret after initialization
  double min_regret = 0.0;       // min over GP-MI steps
  double final_regret = 0.0;
  double final_max_phi = 0.0;    // max_x phi_T(x) for GP-MI
  double observed_range = 0.0;   // range of observed values
  double ucb_final_max_phi = 0.0;
  bool stalled = false;
};

OverconfidenceCase EvaluateOverconfidence(const OverconfidenceOptions& options, std::uint64_t seed);
// First seed in [begin, end) where GP-MI stalls.
std::optional<OverconfidenceCase> FindOverconfidenceFailure(const OverconfidenceOptions& options,
                                                            std::uint64_t begin, std::uint64_t end);

}  // namespace gpopt

#endif  // GPOPT_DIAGNOSTICS_HPP_
