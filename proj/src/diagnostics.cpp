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

#include "gpopt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpopt/errors.hpp"
#include "gpopt/grid.hpp"
#include "gpopt/info.hpp"
#include "gpopt/parallel.hpp"
#include "gpopt/random.hpp"

namespace gpopt {
namespace {

void RequireGpMi(const RegretTrace& trace, const char* check) {
  if (trace.policy != PolicyName(PolicyKind::kGpMi)) {
    throw InputError(std::string(check) + ": trace was not produced by gp_mi");
  }
}

PointSet QueryPoints(const RegretTrace& trace) {
  if (trace.steps.empty()) return PointSet();
  PointSet points(trace.steps.front().x.size(), static_cast<Eigen::Index>(trace.steps.size()));
  for (std::size_t t = 0; t < trace.steps.size(); ++t) points.col(static_cast<Eigen::Index>(t)) = trace.steps[t].x;
  return points;
}

double LogRss(const std::vector<double>& log_regret, const std::vector<double>& log_model) {
  double shift = 0.0;
  for (std::size_t i = 0; i < log_regret.size(); ++i) shift += log_regret[i] - log_model[i];
  shift /= static_cast<double>(log_regret.size());
  double rss = 0.0;
  for (std::size_t i = 0; i < log_regret.size(); ++i) {
    const double r = log_regret[i] - log_model[i] - shift;
    rss += r * r;
  }
  return rss;
}

}  // namespace

PointSet SampledGpSetup::Grid() const { return LatticeGrid(Box::Uniform(1, 0.0, 1.0), grid_points); }

Objective SampledGpObjective(const SampledGpSetup& setup, const GpSampler& sampler, std::uint64_t seed) {
  const Eigen::VectorXd draw = sampler.Draw(seed);
  Objective obj = ObjectiveFromGrid("sampled_gp", Box::Uniform(1, 0.0, 1.0), setup.Grid(), draw, 0.0, false);
  obj.noise_std = std::sqrt(setup.noise_variance);
  return obj;
}

double CheckEq5Identity(const RegretTrace& trace, double alpha) {
  RequireGpMi(trace, "check_eq5_identity");
  double gamma_prev = 0.0;
  double phi_sum = 0.0;
  for (const auto& row : trace.steps) {
    const double phi = std::sqrt(alpha * (row.sigma2_at_query + gamma_prev)) - phi_sum;
    phi_sum += phi;
    gamma_prev += row.sigma2_at_query;
  }
  const double gamma_hat = trace.steps.empty() ? 0.0 : trace.steps.back().gamma_hat;
  return std::abs(phi_sum - std::sqrt(alpha * gamma_hat));
}

double CheckLemma4(const RegretTrace& trace, double alpha) {
  RequireGpMi(trace, "check_lemma4");
  double gamma_prev = 0.0;
  double lhs = 0.0;
  double star_sum = 0.0;
  for (const auto& row : trace.steps) {
    if (!std::isfinite(row.sigma2_at_reference)) {
      throw InputError("check_lemma4: trace lacks the posterior variance at x*");
    }
    // The shared correction term of the telescoping phi_t cancels here.
    lhs += std::sqrt(alpha * (row.sigma2_at_query + gamma_prev)) -
           std::sqrt(alpha * (row.sigma2_at_reference + gamma_prev));
    star_sum += row.sigma2_at_reference;
    gamma_prev += row.sigma2_at_query;
  }
  const double gamma_hat = trace.steps.empty() ? 0.0 : trace.steps.back().gamma_hat;
  const double rhs = std::sqrt(alpha * gamma_hat) - 0.5 * std::sqrt(alpha) * star_sum / std::sqrt(gamma_hat + 1.0);
  return rhs - lhs;
}

double CheckEq3(const RegretTrace& trace, const Kernel& kernel, double noise_variance) {
  if (trace.steps.empty()) return 0.0;
  const double info = MutualInformation(kernel, QueryPoints(trace), noise_variance);
  return C1(noise_variance) * info - trace.steps.back().gamma_hat;
}

ResidualStats CheckLemma1Residuals(const SampledGpSetup& setup, std::size_t trials, std::size_t horizon,
                                   std::uint64_t seed, CrossTerm cross, double delta) {
  const GpSampler sampler(setup.kernel, setup.Grid());
  std::vector<std::vector<double>> pooled(trials);
  std::vector<std::size_t> excluded(trials, 0);
  ParallelFor(trials, [&](std::size_t trial) {
    const std::uint64_t trial_seed = mix_seed(seed, trial);
    const Objective obj = SampledGpObjective(setup, sampler, mix_seed(trial_seed, 10));
    Rng pick(mix_seed(trial_seed, 11));
    LoopSetup loop;
    loop.horizon = horizon;
    loop.reference_index = std::uniform_int_distribution<std::size_t>(0, obj.size() - 1)(pick);
    Rng noise(mix_seed(trial_seed, 12));
    const RegretTrace trace =
        RunPolicyLoop(obj, setup.kernel, setup.noise_variance, {PolicyKind::kGpMi, delta}, {}, noise, loop);
    if (trace.failed) throw NumericalError("check_lemma1_residuals: " + trace.error);
    const double f_ref = obj.values[static_cast<Eigen::Index>(*loop.reference_index)];
    for (const auto& row : trace.steps) {
      const double f_query = obj.values[static_cast<Eigen::Index>(row.index)];
      const double residual = (f_ref - f_query) - (row.mean_at_reference - row.mean_at_query);
      const double cross_cov = cross == CrossTerm::kPosterior
                                   ? row.cov_reference_query
                                   : setup.kernel(obj.grid.col(static_cast<Eigen::Index>(*loop.reference_index)), row.x);
      const double ell2 = row.sigma2_at_reference + row.sigma2_at_query - 2.0 * cross_cov;
      if (!(ell2 > 1e-12)) {
        ++excluded[trial];
        continue;
      }
      pooled[trial].push_back(residual / std::sqrt(ell2));
    }
  });
  ResidualStats stats;
  double sum = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    stats.excluded += excluded[i];
    for (double v : pooled[i]) {
      sum += v;
      ++stats.samples;
    }
  }
  stats.sufficient = stats.samples > 0;
  if (!stats.sufficient) return stats;
  stats.mean = sum / static_cast<double>(stats.samples);
  double ss = 0.0;
  for (const auto& values : pooled) {
    for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
  }
  stats.variance = stats.samples > 1 ? ss / static_cast<double>(stats.samples - 1) : 0.0;
  return stats;
}

BoundCheckReport CheckTheorem2(ObservationMode setting, const SampledGpSetup& setup, double delta,
                               std::size_t trials, std::size_t horizon, std::uint64_t seed) {
  const GpSampler sampler(setup.kernel, setup.Grid());
  BoundCheckReport report;
  report.setting = setting;
  report.trials = trials;
  report.delta = delta;
  report.alpha = AlphaFromDelta(delta);
  const double alpha = report.alpha;
  const double c1 = C1(setup.noise_variance);
  report.greedy_gamma_upper =
      GreedyGammaBound(setup.kernel, setup.Grid(), std::min(horizon, setup.grid_points), setup.noise_variance)
          .upper_proxy;
  report.per_trial.resize(trials);
  ParallelFor(trials, [&](std::size_t trial) {
    const std::uint64_t trial_seed = mix_seed(seed, trial);
    const Objective obj = SampledGpObjective(setup, sampler, mix_seed(trial_seed, 20));
    Rng noise(mix_seed(trial_seed, 21));
    LoopSetup loop;
    loop.mode = setting;
    loop.horizon = horizon;
    const RegretTrace trace =
        RunPolicyLoop(obj, setup.kernel, setup.noise_variance, {PolicyKind::kGpMi, delta}, {}, noise, loop);
    TrialBound& out = report.per_trial[trial];
    if (trace.failed) {
      out.failed = true;
      return;
    }
    out.regret = trace.cumulative_regret();
    out.gamma_hat = trace.steps.empty() ? 0.0 : trace.steps.back().gamma_hat;
    out.gamma_proxy = MutualInformation(setup.kernel, QueryPoints(trace), setup.noise_variance);
    out.bound = 5.0 * std::sqrt(alpha * c1 * out.gamma_proxy) + 4.0 * std::sqrt(alpha);
    double exploration_gap = 0.0;
    double star_sum = 0.0;
    double gamma_prev = 0.0;
    for (const auto& row : trace.steps) {
      exploration_gap += row.phi_at_query - PhiGpMi(row.sigma2_at_reference, gamma_prev, alpha);
      star_sum += row.sigma2_at_reference;
      gamma_prev = row.gamma_hat;
    }
    const double scale = c1 * out.gamma_proxy + 1.0;
    out.generic_bound =
        exploration_gap + 4.0 * std::sqrt(alpha * scale) + 0.5 * std::sqrt(alpha) * star_sum / std::sqrt(scale);
  });
  std::size_t counted = 0;
  for (const auto& t : report.per_trial) {
    if (t.failed) {
      ++report.failed;
      continue;
    }
    ++counted;
    if (t.regret > t.bound) ++report.violations;
  }
  report.violation_rate = counted > 0 ? static_cast<double>(report.violations) / static_cast<double>(counted) : 0.0;
  return report;
}

GrowthReport CheckCorollaryGrowth(const SampledGpSetup& setup, const std::vector<PolicyKind>& policies,
                                  const std::vector<std::size_t>& horizons, std::size_t trials, std::uint64_t seed,
                                  double delta) {
  if (horizons.empty() || policies.empty()) throw InputError("check_corollary_growth: nothing to check");
  const std::size_t max_horizon = *std::max_element(horizons.begin(), horizons.end());
  const GpSampler sampler(setup.kernel, setup.Grid());
  // regrets[policy][trial][horizon index]
  std::vector<std::vector<std::vector<double>>> regrets(
      policies.size(), std::vector<std::vector<double>>(trials, std::vector<double>(horizons.size(), 0.0)));
  ParallelFor(trials, [&](std::size_t trial) {
    const std::uint64_t trial_seed = mix_seed(seed, trial);
    const Objective obj = SampledGpObjective(setup, sampler, mix_seed(trial_seed, 30));
    for (std::size_t p = 0; p < policies.size(); ++p) {
      Rng noise(mix_seed(trial_seed, 31));
      LoopSetup loop;
      loop.horizon = max_horizon;
      const RegretTrace trace =
          RunPolicyLoop(obj, setup.kernel, setup.noise_variance, {policies[p], delta}, {}, noise, loop);
      if (trace.failed) throw NumericalError("check_corollary_growth: " + trace.error);
      for (std::size_t h = 0; h < horizons.size(); ++h) {
        regrets[p][trial][h] = horizons[h] == 0 ? 0.0 : trace.steps[horizons[h] - 1].cum_regret;
      }
    }
  });
  GrowthReport report;
  report.horizons = horizons;
  report.dim = 1;
  const double power = (static_cast<double>(report.dim) + 1.0) / 2.0;
  for (std::size_t p = 0; p < policies.size(); ++p) {
    GrowthFit fit;
    fit.policy = policies[p];
    std::vector<double> log_regret;
    std::vector<double> log_model;
    std::vector<double> sqrt_model;
    for (std::size_t h = 0; h < horizons.size(); ++h) {
      double sum = 0.0;
      for (std::size_t trial = 0; trial < trials; ++trial) sum += regrets[p][trial][h];
      const double mean = sum / static_cast<double>(trials);
      fit.mean_regret.push_back(mean);
      const double t = static_cast<double>(horizons[h]);
      log_regret.push_back(std::log(mean));
      log_model.push_back(power * std::log(std::log(t)));
      sqrt_model.push_back(0.5 * std::log(t));
    }
    fit.log_model_rss = LogRss(log_regret, log_model);
    fit.sqrt_model_rss = LogRss(log_regret, sqrt_model);
    fit.prefers_log = fit.log_model_rss <= fit.sqrt_model_rss;
    report.fits.push_back(std::move(fit));
  }
  return report;
}

OverconfidenceOptions OverconfidenceOptions::ThinPeak() {
  OverconfidenceOptions options;
  options.mixture = MixtureSpec::Default();
  options.mixture.bumps[0].width = 0.03;
  options.mixture.grid.per_axis = 51;
  options.kernel = Kernel::SquaredExponential(0.5);
  return options;
}

OverconfidenceOptions OverconfidenceOptions::Unimodal() {
  OverconfidenceOptions options;
  options.mixture = MixtureSpec::Default();
  options.mixture.bumps = {{0.5, 0.5, 1.0, 0.25}};
  options.mixture.perturbation_amplitude = 0.0;
  options.mixture.grid.per_axis = 51;
  options.kernel = Kernel::SquaredExponential(0.25);
  return options;
}

OverconfidenceCase EvaluateOverconfidence(const OverconfidenceOptions& options, std::uint64_t seed) {
  const Objective obj = MakeGaussianMixture(seed, options.mixture);
  const std::vector<std::size_t> init = InitIndices(mix_seed(seed, 40), obj.size(), options.init_observations);
  LoopSetup loop;
  loop.horizon = options.horizon;
  OverconfidenceCase out;
  out.seed = seed;
  Rng noise(mix_seed(seed, 41));
  const RegretTrace mi =
      RunPolicyLoop(obj, options.kernel, options.noise_variance, {PolicyKind::kGpMi, options.delta}, init, noise, loop);
  Rng noise_ucb(mix_seed(seed, 41));
  const RegretTrace ucb = RunPolicyLoop(obj, options.kernel, options.noise_variance,
                                        {PolicyKind::kGpUcb, options.delta}, init, noise_ucb, loop);
  if (mi.failed || ucb.failed || mi.steps.empty()) return out;
  double best_init = -std::numeric_limits<double>::infinity();
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = -std::numeric_limits<double>::infinity();
  for (const auto& row : mi.init) {
    best_init = std::max(best_init, obj.values[static_cast<Eigen::Index>(row.index)]);
    y_min = std::min(y_min, row.y);
    y_max = std::max(y_max, row.y);
  }
  out.min_regret = std::numeric_limits<double>::infinity();
  for (const auto& row : mi.steps) {
    out.min_regret = std::min(out.min_regret, row.regret);
    y_min = std::min(y_min, row.y);
    y_max = std::max(y_max, row.y);
  }
  out.initial_regret = obj.max_value - best_init;
  out.final_regret = mi.steps.back().regret;
  out.final_max_phi = mi.steps.back().max_phi;
  out.observed_range = y_max - y_min;
  out.ucb_final_max_phi = ucb.steps.back().max_phi;
  out.stalled = out.min_regret > 0.1 * out.initial_regret && out.final_max_phi < 0.01 * out.observed_range;
  return out;
}

std::optional<OverconfidenceCase> FindOverconfidenceFailure(const OverconfidenceOptions& options,
                                                            std::uint64_t begin, std::uint64_t end) {
  for (std::uint64_t seed = begin; seed < end; ++seed) {
    OverconfidenceCase c = EvaluateOverconfidence(options, seed);
    if (c.stalled) return c;
  }
  return std::nullopt;
}

}  // namespace gpopt
