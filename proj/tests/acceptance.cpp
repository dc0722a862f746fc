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

// Acceptance runner: one PASS/FAIL line per criterion, exit 0 when every
// criterion passes or fails only as a documented known failure.
//
//   gpopt_acceptance [--only N[,N...]]

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gpopt/diagnostics.hpp"
#include "gpopt/harness.hpp"
#include "gpopt/info.hpp"
#include "gpopt/objectives.hpp"
#include "gpopt/policy.hpp"
#include "gpopt/posterior.hpp"
#include "gpopt/random.hpp"
#include "gpopt/suites.hpp"

// Extra bench flags for the reproducibility run, set by the build.
#ifndef GPOPT_BENCH_ARGS
#define GPOPT_BENCH_ARGS ""
#endif

namespace gpopt {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string Fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// GP-MI traces gathered along the way, checked by the identity criteria.
struct TracePool {
  struct Entry {
    RegretTrace trace;
    Kernel kernel;
    double noise_variance;
  };
  std::vector<Entry> entries;

  void Add(const std::vector<RegretTrace>& traces, const Kernel& kernel, double noise) {
    for (const auto& t : traces) {
      if (t.policy == "gp_mi" && !t.failed) entries.push_back({t, kernel, noise});
    }
  }
};

// ---------------------------------------------------------------------------
// 1. Posterior against an independent dense solve.

Kernel RandomKernel(Rng& rng) {
  std::uniform_real_distribution<double> scale(0.3, 2.0);
  const double l = scale(rng);
  switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0: return Kernel::SquaredExponential(l);
    case 1: return Kernel::Matern(0.5, l);
    case 2: return Kernel::Matern(1.5, l);
    case 3: return Kernel::Matern(2.5, l);
    case 4: return Kernel::Matern(3.0, l);
    default: return Kernel::Linear(2.5);
  }
}

Outcome PosteriorOracle() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int instance = 0; instance < 100; ++instance) {
    const int d = std::uniform_int_distribution<int>(1, 6)(rng);
    const int t = std::uniform_int_distribution<int>(1, 60)(rng);
    const Kernel kernel = RandomKernel(rng);
    const double noise = std::pow(10.0, -4.0 + 3.0 * unit(rng));
    PointSet x(d, t);
    Eigen::VectorXd y(t);
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < d; ++j) x(j, i) = unit(rng);
      y[i] = normal(rng);
    }
    PointSet probes(d, 8);
    for (int i = 0; i < probes.cols(); ++i) {
      for (int j = 0; j < d; ++j) probes(j, i) = unit(rng);
    }
    probes.col(0) = x.col(0);  // one probe on a data point

    PosteriorState inc(kernel, noise);
    for (int i = 0; i < t; ++i) inc = inc.Extend(x.col(i), y[i]);
    const PosteriorState batch = PosteriorState::Fit(kernel, x, y, noise);

    Eigen::MatrixXd c(t, t);
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < t; ++j) c(i, j) = kernel(x.col(i), x.col(j));
    }
    c.diagonal().array() += noise + batch.jitter();
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(c);
    const Eigen::VectorXd weights = lu.solve(y);
    auto cross = [&](int p) {
      Eigen::VectorXd k(t);
      for (int i = 0; i < t; ++i) k[i] = kernel(x.col(i), probes.col(p));
      return k;
    };
    for (int p = 0; p < probes.cols(); ++p) {
      const Eigen::VectorXd kp = cross(p);
      const double mean = kp.dot(weights);
      const double var = std::max(kernel(probes.col(p), probes.col(p)) - kp.dot(lu.solve(kp)), 0.0);
      for (const PosteriorState* s : {static_cast<const PosteriorState*>(&inc), &batch}) {
        worst = std::max(worst, std::abs(s->Mean(probes.col(p)) - mean));
        worst = std::max(worst, std::abs(s->Variance(probes.col(p)) - var));
      }
      const int q = (p + 1) % static_cast<int>(probes.cols());
      const double cov = kernel(probes.col(p), probes.col(q)) - kp.dot(lu.solve(cross(q)));
      for (const PosteriorState* s : {static_cast<const PosteriorState*>(&inc), &batch}) {
        worst = std::max(worst, std::abs(s->Covariance(probes.col(p), probes.col(q)) - cov));
      }
    }
  }
  const double secs = Seconds(start);
  return {worst <= 1e-8 && secs < 10.0, "max deviation " + Fmt(worst) + " over 100 instances, " + Fmt(secs) + " s"};
}

// ---------------------------------------------------------------------------
// 2. Posterior variance never increases along a run.

double WorstVarianceIncrease(const RegretTrace& trace, PosteriorState state, const PointSet& probes) {
  for (const auto& row : trace.init) state = state.Extend(row.x, row.y);
  Eigen::VectorXd before(probes.cols());
  for (Eigen::Index p = 0; p < probes.cols(); ++p) before[p] = state.Variance(probes.col(p));
  double worst = -1.0;
  for (const auto& row : trace.steps) {
    state = state.Extend(row.x, row.y);
    for (Eigen::Index p = 0; p < probes.cols(); ++p) {
      const double after = state.Variance(probes.col(p));
      worst = std::max(worst, after - before[p]);
      before[p] = after;
    }
  }
  return worst;
}

PointSet RandomProbes(const Box& box, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PointSet probes(box.dim(), static_cast<Eigen::Index>(count));
  for (Eigen::Index p = 0; p < probes.cols(); ++p) {
    for (Eigen::Index j = 0; j < box.dim(); ++j) {
      probes(j, p) = box.low[j] + unit(rng) * (box.high[j] - box.low[j]);
    }
  }
  return probes;
}

Outcome VarianceMonotone() {
  double worst = -1.0;
  std::size_t runs = 0;
  // Noisy values on benchmark tasks.
  for (const char* task : {"himmelblau", "branin", "generated_gp2"}) {
    BenchOptions options;
    options.seed = 2;
    options.trials = 10;
    options.horizon = 50;
    const ExperimentConfig config = BenchConfig(options, task, PolicyKind::kGpMi);
    const PreparedExperiment prepared = Prepare(config);
    const PointSet probes = RandomProbes(prepared.objective.box, 100, 5);
    for (const auto& trace : RunExperiment(config, prepared)) {
      if (trace.failed) return {false, std::string(task) + ": trial failed: " + trace.error};
      worst = std::max(worst, WorstVarianceIncrease(trace, PosteriorState(prepared.kernel, config.noise_variance), probes));
      ++runs;
    }
  }
  // Noiseless regret feedback on prior draws.
  const SampledGpSetup setup;
  const GpSampler sampler(setup.kernel, setup.Grid());
  const PointSet probes = RandomProbes(Box::Uniform(1, 0.0, 1.0), 100, 6);
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const Objective obj = SampledGpObjective(setup, sampler, mix_seed(77, trial));
    Rng noise(trial);
    LoopSetup loop;
    loop.mode = ObservationMode::kRegretFeedback;
    loop.horizon = 50;
    const RegretTrace trace = RunPolicyLoop(obj, setup.kernel, setup.noise_variance, {PolicyKind::kGpMi, 0.05}, {},
                                            noise, loop);
    if (trace.failed) return {false, "regret feedback trial failed: " + trace.error};
    worst = std::max(worst, WorstVarianceIncrease(
                                trace, PosteriorState(setup.kernel, 0.0, ObservationMode::kRegretFeedback, obj.max_point),
                                probes));
    ++runs;
  }
  return {worst <= 1e-10, std::to_string(runs) + " runs x 50 steps x 100 probes, largest increase " + Fmt(worst)};
}

// ---------------------------------------------------------------------------
// 3, 4. Information inequality and telescoping identity on every GP-MI trace.

void CollectOtherTasks(TracePool& pool) {
  for (const std::string& task : PaperTaskNames()) {
    if (task == "himmelblau" || task == "gaussian_mixture") continue;  // covered by 8 and 9
    BenchOptions options;
    options.seed = 3;
    options.trials = 10;
    options.horizon = 100;
    const ExperimentConfig config = BenchConfig(options, task, PolicyKind::kGpMi);
    const PreparedExperiment prepared = Prepare(config);
    pool.Add(RunExperiment(config, prepared), prepared.kernel, config.noise_variance);
  }
}

Outcome InformationInequality(const TracePool& pool) {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& e : pool.entries) worst = std::min(worst, CheckEq3(e.trace, e.kernel, e.noise_variance));
  return {!pool.entries.empty() && worst >= -1e-8,
          std::to_string(pool.entries.size()) + " GP-MI traces, smallest margin C1 I - gamma_hat " + Fmt(worst)};
}

Outcome TelescopingIdentity(const TracePool& pool, const std::vector<RegretTrace>& extra) {
  double worst = 0.0;
  std::size_t n = 0;
  for (const auto& e : pool.entries) {
    worst = std::max(worst, CheckEq5Identity(e.trace, AlphaFromDelta(1e-6)));
    ++n;
  }
  for (const auto& t : extra) {
    worst = std::max(worst, CheckEq5Identity(t, AlphaFromDelta(1e-6)));
    ++n;
  }
  return {n > 0 && worst <= 1e-8, std::to_string(n) + " GP-MI traces, largest deviation " + Fmt(worst)};
}

// ---------------------------------------------------------------------------
// 5. Exploration-term inequality on generated-GP runs.

Outcome ExplorationInequality(std::vector<RegretTrace>& runs) {
  BenchOptions options;
  options.seed = 5;
  options.trials = 50;
  options.horizon = 100;
  const ExperimentConfig config = BenchConfig(options, "generated_gp2", PolicyKind::kGpMi);
  runs = RunExperiment(config, Prepare(config));
  double worst = std::numeric_limits<double>::infinity();
  std::size_t failed = 0;
  for (const auto& t : runs) {
    if (t.failed) {
      ++failed;
      continue;
    }
    worst = std::min(worst, CheckLemma4(t, AlphaFromDelta(config.policy.delta)));
  }
  std::erase_if(runs, [](const RegretTrace& t) { return t.failed; });
  return {failed == 0 && worst >= -1e-8,
          "50 runs (" + std::to_string(failed) + " failed), smallest slack " + Fmt(worst)};
}

// ---------------------------------------------------------------------------
// 6. Standardized residuals.

Outcome Residuals() {
  const auto start = std::chrono::steady_clock::now();
  const ResidualStats s = CheckLemma1Residuals(SampledGpSetup{}, 2000, 50, 6);
  const double secs = Seconds(start);
  const bool ok = s.samples >= 5000 && std::abs(s.mean) <= 0.05 && s.variance >= 0.9 && s.variance <= 1.1 &&
                  secs < 120.0;
  return {ok, std::to_string(s.samples) + " samples (" + std::to_string(s.excluded) + " excluded), mean " +
                  Fmt(s.mean) + ", variance " + Fmt(s.variance) + ", " + Fmt(secs) + " s"};
}

// ---------------------------------------------------------------------------
// 7. Regret bound under regret feedback.

Outcome RegretBound() {
  const auto start = std::chrono::steady_clock::now();
  const double delta = 0.05;
  const BoundCheckReport r = CheckTheorem2(ObservationMode::kRegretFeedback, SampledGpSetup{}, delta, 200, 50, 7);
  const double secs = Seconds(start);
  const double limit = delta + 2.0 * std::sqrt(delta * (1.0 - delta) / 200.0);
  const BoundCheckReport noisy = CheckTheorem2(ObservationMode::kNoisyValue, SampledGpSetup{}, delta, 200, 50, 7);
  const bool ok = r.failed == 0 && r.violation_rate <= limit && secs < 300.0;
  return {ok, "violation rate " + Fmt(r.violation_rate) + " (limit " + Fmt(limit) + ", " +
                  std::to_string(r.failed) + " failed), " + Fmt(secs) + " s; noisy-value setting, report only: " +
                  Fmt(noisy.violation_rate)};
}

// ---------------------------------------------------------------------------
// 8. Ordering against the competitors.

// P(X >= k) for X ~ Binomial(n, 1/2).
double SignTestPValue(std::size_t wins, std::size_t n) {
  double p = 0.0;
  for (std::size_t k = wins; k <= n; ++k) {
    p += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) - n * std::log(2.0));
  }
  return std::min(p, 1.0);
}

struct Comparison {
  bool passed = false;
  std::string detail;
};

Comparison Compare(const std::vector<RegretTrace>& mi, const std::vector<RegretTrace>& other, const char* name) {
  std::size_t wins = 0, losses = 0;
  double mean_mi = 0.0, mean_other = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < mi.size(); ++i) {
    if (mi[i].failed || other[i].failed) continue;
    const double a = mi[i].steps.back().avg_regret;
    const double b = other[i].steps.back().avg_regret;
    mean_mi += a;
    mean_other += b;
    ++n;
    if (a < b) ++wins;
    if (a > b) ++losses;
  }
  mean_mi /= static_cast<double>(n);
  mean_other /= static_cast<double>(n);
  const double p = SignTestPValue(wins, wins + losses);
  return {mean_mi <= mean_other && p <= 0.05,
          std::string("vs ") + name + ": mean " + Fmt(mean_mi) + " vs " + Fmt(mean_other) + ", wins " +
              std::to_string(wins) + "/" + std::to_string(wins + losses) + ", p " + Fmt(p)};
}

Outcome Ordering(TracePool& pool) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (const char* task : {"himmelblau", "gaussian_mixture"}) {
    BenchOptions options;
    options.seed = 8;
    options.trials = 100;
    options.horizon = 100;
    std::map<PolicyKind, std::vector<RegretTrace>> runs;
    const PreparedExperiment prepared = Prepare(BenchConfig(options, task, PolicyKind::kGpMi));
    for (PolicyKind kind : options.policies) {
      runs[kind] = RunExperiment(BenchConfig(options, task, kind), prepared);
    }
    pool.Add(runs[PolicyKind::kGpMi], prepared.kernel, BenchConfig(options, task, PolicyKind::kGpMi).noise_variance);
    const Comparison ucb = Compare(runs[PolicyKind::kGpMi], runs[PolicyKind::kGpUcb], "gp_ucb");
    ok = ok && ucb.passed;
    detail += std::string(task) + " " + ucb.detail + "; ";
    if (std::string(task) == "gaussian_mixture") {
      const Comparison ei = Compare(runs[PolicyKind::kGpMi], runs[PolicyKind::kExpectedImprovement], "ei");
      ok = ok && ei.passed;
      detail += std::string(task) + " " + ei.detail + "; ";
    }
  }
  const double secs = Seconds(start);
  return {ok && secs < 900.0, detail + Fmt(secs) + " s"};
}

// ---------------------------------------------------------------------------
// 9. Sensitivity to delta.

Outcome DeltaRobustness(TracePool& pool) {
  BenchOptions options;
  options.seed = 9;
  options.trials = 100;
  options.horizon = 100;
  ExperimentConfig config = BenchConfig(options, "himmelblau", PolicyKind::kGpMi);
  const PreparedExperiment prepared = Prepare(config);
  std::vector<double> means;
  std::string detail;
  for (double delta : {1e-1, 1e-3, 1e-6, 1e-9}) {
    config.policy.delta = delta;
    const auto traces = RunExperiment(config, prepared);
    pool.Add(traces, prepared.kernel, config.noise_variance);
    means.push_back(Aggregate(traces).back().mean);
    detail += "delta " + Fmt(delta) + ": " + Fmt(means.back()) + "; ";
  }
  const auto [lo, hi] = std::minmax_element(means.begin(), means.end());
  const double spread = (*hi - *lo) / *lo;
  return {spread < 0.2, detail + "relative spread (max - min) / min " + Fmt(spread)};
}

// ---------------------------------------------------------------------------
// 10. Growth of the cumulative regret.

Outcome Growth(Outcome& fixed_vs_ucb) {
  const GrowthReport r = CheckCorollaryGrowth(SampledGpSetup{}, {PolicyKind::kGpMi, PolicyKind::kGpUcb, PolicyKind::kFixedPhi},
                                              {25, 50, 100, 200}, 30, 10, 1e-6);
  std::string curve;
  for (std::size_t i = 0; i < r.horizons.size(); ++i) {
    curve += (i ? ", " : "") + std::string("R_") + std::to_string(r.horizons[i]) + " " + Fmt(r.fits[0].mean_regret[i]);
  }
  const double ucb = r.fits[1].mean_regret.back();
  const double fixed = r.fits[2].mean_regret.back();
  fixed_vs_ucb = {fixed <= ucb, "R_200 fixed_phi " + Fmt(fixed) + " vs gp_ucb " + Fmt(ucb)};
  return {r.fits[0].prefers_log, "gp_mi " + curve + "; rss log model " + Fmt(r.fits[0].log_model_rss) +
                                     " vs sqrt model " + Fmt(r.fits[0].sqrt_model_rss)};
}

// ---------------------------------------------------------------------------
// 11. Mutual information against determinants; greedy against exhaustive.

Outcome InformationOracle() {
  Rng rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int instance = 0; instance < 200; ++instance) {
    const int d = std::uniform_int_distribution<int>(1, 4)(rng);
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    const Kernel kernel = RandomKernel(rng);
    const double noise = std::pow(10.0, -3.0 + 3.0 * unit(rng));
    PointSet x(d, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) x(j, i) = unit(rng);
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) += kernel(x.col(i), x.col(j)) / noise;
    }
    const double oracle = 0.5 * std::log(m.fullPivLu().determinant());
    worst = std::max(worst, std::abs(MutualInformation(kernel, x, noise) - oracle));
  }
  std::size_t greedy_ok = 0;
  const int instances = 50;
  for (int instance = 0; instance < instances; ++instance) {
    const Kernel kernel = RandomKernel(rng);
    const double noise = std::pow(10.0, -3.0 + 3.0 * unit(rng));
    PointSet cand(2, 8);
    for (int i = 0; i < 8; ++i) cand.col(i) << unit(rng), unit(rng);
    const GreedyGammaResult g = GreedyGammaBound(kernel, cand, 3, noise);
    double best = 0.0;
    for (int a = 0; a < 8; ++a) {
      for (int b = a + 1; b < 8; ++b) {
        for (int c = b + 1; c < 8; ++c) {
          PointSet s(2, 3);
          s << cand.col(a), cand.col(b), cand.col(c);
          best = std::max(best, MutualInformation(kernel, s, noise));
        }
      }
    }
    if (g.value <= best + 1e-12 && best <= g.upper_proxy + 1e-12 && g.value >= (1.0 - std::exp(-1.0)) * best - 1e-12) {
      ++greedy_ok;
    }
  }
  return {worst <= 1e-10 && greedy_ok == instances,
          "200 sets, max |I - 1/2 log det| " + Fmt(worst) + "; greedy bound held on " + std::to_string(greedy_ok) +
              "/" + std::to_string(instances) + " exhaustive C(8,3) enumerations"};
}

// ---------------------------------------------------------------------------
// 12. Byte-identical bench output.

std::map<std::string, std::string> ReadTree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[fs::relative(entry.path(), root).string()] = s.str();
  }
  return files;
}

Outcome Reproducible() {
  const fs::path base = fs::temp_directory_path() / "gpopt_acceptance_bench";
  fs::remove_all(base);
  std::vector<std::map<std::string, std::string>> trees;
  for (const char* name : {"a", "b"}) {
    const fs::path out = base / name;
    const std::string cmd = std::string(GPOPT_CLI_PATH) + " bench --suite paper --seed 7 " + GPOPT_BENCH_ARGS +
                            " --out " + out.string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {false, "bench exited with status " + std::to_string(status)};
    trees.push_back(ReadTree(out));
  }
  fs::remove_all(base);
  std::size_t csvs = 0;
  for (const auto& [name, text] : trees[0]) {
    if (name.size() > 4 && name.substr(name.size() - 4) == ".csv") ++csvs;
  }
  const bool same = trees[0] == trees[1];
  return {same && csvs > 0, std::to_string(trees[0].size()) + " files (" + std::to_string(csvs) + " CSV), " +
                                (same ? "byte-identical" : "differ")};
}

// ---------------------------------------------------------------------------
// 13. Overconfidence fixture.

Outcome Overconfidence() {
  std::ifstream in(std::string(GPOPT_TEST_DATA_DIR) + "/overconfidence_exemplar.txt");
  std::map<std::string, std::string> fx;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (!line.empty() && line[0] != '#' && eq != std::string::npos) fx[line.substr(0, eq)] = line.substr(eq + 3);
  }
  if (fx.count("seed") == 0) return {false, "fixture missing"};
  const std::uint64_t seed = std::stoull(fx.at("seed"));
  const OverconfidenceCase a = EvaluateOverconfidence(OverconfidenceOptions::ThinPeak(), seed);
  const OverconfidenceCase b = EvaluateOverconfidence(OverconfidenceOptions::ThinPeak(), seed);
  bool replay = a.final_max_phi == b.final_max_phi && a.final_regret == b.final_regret;
  for (const auto& [key, got] : std::map<std::string, double>{{"initial_regret", a.initial_regret},
                                                                {"final_regret", a.final_regret},
                                                                {"final_max_phi", a.final_max_phi},
                                                                {"observed_range", a.observed_range},
                                                                {"ucb_final_max_phi", a.ucb_final_max_phi}}) {
    const double want = std::stod(fx.at(key));
    replay = replay && std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want));
  }
  const bool stall = a.final_max_phi < 0.01 * a.observed_range && a.final_regret > 0.1 * a.initial_regret;
  const bool ucb_explores = a.ucb_final_max_phi > a.final_max_phi;
  return {replay && stall && ucb_explores,
          "seed " + std::to_string(seed) + ": final bonus " + Fmt(a.final_max_phi) + " vs range " +
              Fmt(a.observed_range) + ", final regret " + Fmt(a.final_regret) + " vs initial " + Fmt(a.initial_regret) +
              ", gp_ucb final bonus " + Fmt(a.ucb_final_max_phi) + (replay ? ", replays fixture" : ", FIXTURE MISMATCH")};
}

}  // namespace
}  // namespace gpopt

int main(int argc, char** argv) {
  using namespace gpopt;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--only" && i + 1 < argc) {
      std::stringstream list(argv[++i]);
      std::string item;
      while (std::getline(list, item, ',')) only.insert(std::stoi(item));
    } else {
      std::cerr << "usage: gpopt_acceptance [--only N[,N...]]\n";
      return 1;
    }
  }
  auto wanted = [&](std::initializer_list<int> ids) {
    if (only.empty()) return true;
    return std::any_of(ids.begin(), ids.end(), [&](int id) { return only.count(id) > 0; });
  };

  // Criteria that fail for reasons analysed in the README; they still print
  // FAIL but do not fail the run. An unexpected pass is reported as such.
  const std::set<std::string> known_failures{"9", "10a"};

  std::vector<std::pair<std::string, std::pair<std::string, Outcome>>> results;
  auto record = [&](const std::string& id, const std::string& name, const std::function<Outcome()>& fn) {
    std::cerr << "[acceptance] " << id << " " << name << " ..." << std::endl;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cerr << "[acceptance] " << id << " done in " << Fmt(Seconds(start)) << " s" << std::endl;
    results.push_back({id, {name, o}});
  };

  TracePool pool;
  std::vector<RegretTrace> generated;
  if (wanted({1})) record("1", "posterior_oracle", PosteriorOracle);
  if (wanted({2})) record("2", "variance_monotone", VarianceMonotone);
  if (wanted({5, 4})) record("5", "exploration_inequality", [&] { return ExplorationInequality(generated); });
  if (wanted({6})) record("6", "standardized_residuals", Residuals);
  if (wanted({7})) record("7", "regret_bound_regret_feedback", RegretBound);
  if (wanted({8, 3, 4})) record("8", "ordering_vs_competitors", [&] { return Ordering(pool); });
  if (wanted({9, 3, 4})) record("9", "delta_robustness", [&] { return DeltaRobustness(pool); });
  if (wanted({3, 4})) {
    try {
      CollectOtherTasks(pool);
    } catch (const std::exception& e) {
      std::cerr << "[acceptance] collecting traces failed: " << e.what() << std::endl;
    }
    record("3", "information_inequality", [&] { return InformationInequality(pool); });
    record("4", "telescoping_identity", [&] { return TelescopingIdentity(pool, generated); });
  }
  if (wanted({10})) {
    Outcome fixed_vs_ucb;
    record("10a", "growth_gp_mi_log_model", [&] { return Growth(fixed_vs_ucb); });
    record("10b", "growth_fixed_phi_vs_ucb", [&] { return fixed_vs_ucb; });
  }
  if (wanted({11})) record("11", "information_oracle", InformationOracle);
  if (wanted({12})) record("12", "bench_reproducible", Reproducible);
  if (wanted({13})) record("13", "overconfidence_fixture", Overconfidence);

  auto order = [](const std::string& id) { return std::make_pair(std::stoi(id), id); };
  std::sort(results.begin(), results.end(), [&](const auto& a, const auto& b) { return order(a.first) < order(b.first); });
  int unexpected = 0;
  for (const auto& [id, named] : results) {
    const auto& [name, o] = named;
    const bool known = known_failures.count(id) > 0;
    std::string tag = o.passed ? "PASS" : "FAIL";
    if (known) tag += o.passed ? " (unexpected pass of known failure)" : " (known failure)";
    if (!o.passed && !known) ++unexpected;
    std::cout << tag << " " << id << " " << name << ": " << o.detail << "\n";
  }
  std::cout << (unexpected == 0 ? "acceptance: ok" : "acceptance: " + std::to_string(unexpected) + " unexpected failure(s)")
            << std::endl;
  return unexpected == 0 ? 0 : 1;
}
