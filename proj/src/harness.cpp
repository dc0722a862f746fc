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

#include "gpopt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "gpopt/candidate_cache.hpp"
#include "gpopt/csv.hpp"
#include "gpopt/errors.hpp"
#include "gpopt/log.hpp"
#include "gpopt/parallel.hpp"

namespace gpopt {
namespace {

// Neumaier running sum.
class RunningSum {
 public:
  void Add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

bool IsGeneratedGp(const std::string& task) { return task.rfind("generated_gp", 0) == 0; }

}  // namespace

RegretTrace RunPolicyLoop(const Objective& objective, const Kernel& kernel, double noise_variance,
                          const PolicyConfig& policy_config, const std::vector<std::size_t>& init_indices,
                          Rng& noise_rng, const LoopSetup& setup) {
  RegretTrace trace;
  trace.task = objective.name;
  trace.policy = std::string(PolicyName(policy_config.kind));
  trace.reference_index = setup.reference_index.value_or(objective.max_index);
  if (trace.reference_index >= objective.size()) throw InputError("loop: reference index outside the grid");
  const auto ref = static_cast<Eigen::Index>(trace.reference_index);
  const bool regret_feedback = setup.mode == ObservationMode::kRegretFeedback;
  try {
    PosteriorState state = regret_feedback
                               ? PosteriorState(kernel, 0.0, ObservationMode::kRegretFeedback, objective.max_point)
                               : PosteriorState(kernel, noise_variance);
    CandidateCache cache(objective.grid, state);
    Policy policy(policy_config, objective.grid);

    auto observe_value = [&](std::size_t index) {
      return regret_feedback ? objective.Regret(index) : EvaluateNoisy(objective, index, noise_rng);
    };

    for (std::size_t index : init_indices) {
      TraceRow row;
      row.index = index;
      row.x = objective.grid.col(static_cast<Eigen::Index>(index));
      row.sigma2_at_query = cache.variance()[static_cast<Eigen::Index>(index)];
      row.mean_at_query = cache.mean()[static_cast<Eigen::Index>(index)];
      row.sigma2_at_reference = cache.variance()[ref];
      row.mean_at_reference = cache.mean()[ref];
      row.cov_reference_query = cache.Covariance(trace.reference_index, index);
      row.y = observe_value(index);
      row.regret = objective.Regret(index);
      if (!regret_feedback) policy.NoteInitialObservation(row.y);
      state = state.Extend(row.x, row.y);
      cache.Update(state);
      trace.init.push_back(std::move(row));
    }

    RunningSum cumulative;
    for (std::size_t t = 1; t <= setup.horizon; ++t) {
      TraceRow row;
      row.t = t;
      row.sigma2_at_reference = cache.variance()[ref];
      row.mean_at_reference = cache.mean()[ref];
      const std::size_t index = policy.Select(cache.mean(), cache.variance());
      const auto idx = static_cast<Eigen::Index>(index);
      row.index = index;
      row.x = objective.grid.col(idx);
      row.sigma2_at_query = policy.pending_variance();
      row.mean_at_query = cache.mean()[idx];
      row.phi_at_query = policy.pending_exploration();
      row.cov_reference_query = cache.Covariance(trace.reference_index, index);
      // Every exploration bonus is non-decreasing in the variance.
      row.max_phi = policy.Exploration(cache.variance().maxCoeff());
      row.y = observe_value(index);
      policy.Observe(index, row.y);
      state = state.Extend(row.x, row.y);
      cache.Update(state);
      row.regret = objective.Regret(index);
      cumulative.Add(row.regret);
      row.cum_regret = cumulative.value();
      row.avg_regret = row.cum_regret / static_cast<double>(t);
      row.gamma_hat = policy.gamma_hat();
      trace.steps.push_back(std::move(row));
    }
  } catch (const NumericalError& e) {
    trace.failed = true;
    trace.error = e.what();
    Log(LogLevel::kWarning, "trial failed: " + trace.error);
  }
  return trace;
}

std::vector<double> LengthScaleGrid(double diameter) {
  std::vector<double> grid(16);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    grid[k] = diameter * std::pow(10.0, -2.0 + 4.0 * static_cast<double>(k) / 15.0);
  }
  return grid;
}

Kernel EstimateHyperparams(const PointSet& points, const Eigen::VectorXd& values, double noise_variance,
                           std::uint64_t seed) {
  const Eigen::Index n = points.cols();
  if (n != values.size()) throw InputError("estimate_hyperparams: points and values differ in size");
  if (n < 10) throw ConfigError("estimate_hyperparams: at least 10 samples are required");
  const Eigen::VectorXd low = points.rowwise().minCoeff();
  const Eigen::VectorXd high = points.rowwise().maxCoeff();
  const double diameter = (high - low).norm();
  if (!(diameter > 0.0)) throw ConfigError("estimate_hyperparams: all sample locations are identical");
  if (values.maxCoeff() == values.minCoeff()) {
    throw ConfigError("estimate_hyperparams: samples are constant");
  }

  constexpr std::size_t kFolds = 5;
  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(mix_seed(seed, 0xcf));
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> fold(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < order.size(); ++i) fold[order[i]] = i % kFolds;

  double best_error = std::numeric_limits<double>::infinity();
  Kernel best = Kernel::SquaredExponential(LengthScaleGrid(diameter).front());
  for (double length_scale : LengthScaleGrid(diameter)) {
    const Kernel kernel = Kernel::SquaredExponential(length_scale);
    double error = 0.0;
    for (std::size_t f = 0; f < kFolds; ++f) {
      std::vector<Eigen::Index> train;
      std::vector<Eigen::Index> test;
      for (Eigen::Index i = 0; i < n; ++i) (fold[static_cast<std::size_t>(i)] == f ? test : train).push_back(i);
      PointSet train_points(points.rows(), static_cast<Eigen::Index>(train.size()));
      Eigen::VectorXd train_values(static_cast<Eigen::Index>(train.size()));
      for (std::size_t i = 0; i < train.size(); ++i) {
        train_points.col(static_cast<Eigen::Index>(i)) = points.col(train[i]);
        train_values[static_cast<Eigen::Index>(i)] = values[train[i]];
      }
      const PosteriorState fit = PosteriorState::Fit(kernel, train_points, train_values, noise_variance);
      for (Eigen::Index i : test) {
        const double residual = fit.Mean(points.col(i)) - values[i];
        error += residual * residual;
      }
    }
    if (error < best_error) {
      best_error = error;
      best = kernel;
    }
  }
  return best;
}

std::uint64_t TrialSeed(std::uint64_t master_seed, std::size_t trial) {
  return mix_seed(master_seed, static_cast<std::uint64_t>(trial));
}

std::vector<std::size_t> InitIndices(std::uint64_t trial_seed, std::size_t grid_size, std::size_t count) {
  if (count > grid_size) throw ConfigError("more initial observations than grid points");
  Rng rng(mix_seed(trial_seed, 1));
  std::vector<std::size_t> pool(grid_size);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, grid_size - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(count);
  return pool;
}

PreparedExperiment Prepare(const ExperimentConfig& config) {
  config.Validate();
  PreparedExperiment prepared{MakeObjective(config.task, config.task_seed, config.himmelblau_tilt, config.grid),
                              config.kernel,
                              {}};
  prepared.notes = prepared.objective.notes;
  HyperMode mode = config.hyper_mode;
  if (mode == HyperMode::kAuto) mode = IsGeneratedGp(config.task) ? HyperMode::kFixed : HyperMode::kCrossValidated;
  if (mode == HyperMode::kFixed) {
    if (config.hyper_mode == HyperMode::kAuto) {
      prepared.kernel = GeneratedGpKernel(prepared.objective.dim());
      prepared.notes.push_back("kernel: true generating kernel " + prepared.kernel.Describe());
    } else {
      prepared.notes.push_back("kernel: fixed " + prepared.kernel.Describe());
    }
    return prepared;
  }
  const Objective& obj = prepared.objective;
  const std::size_t count = std::min(config.hyper_samples, obj.size());
  Rng rng(mix_seed(config.master_seed, 0x5eed));
  const std::vector<std::size_t> picks = InitIndices(mix_seed(config.master_seed, 0x5eed), obj.size(), count);
  PointSet points(static_cast<Eigen::Index>(obj.dim()), static_cast<Eigen::Index>(count));
  Eigen::VectorXd values(static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) {
    points.col(static_cast<Eigen::Index>(i)) = obj.grid.col(static_cast<Eigen::Index>(picks[i]));
    values[static_cast<Eigen::Index>(i)] = EvaluateNoisy(obj, picks[i], rng);
  }
  prepared.kernel = EstimateHyperparams(points, values, config.noise_variance, config.master_seed);
  std::ostringstream note;
  note << "kernel: cross-validated on a separate " << count << "-point pre-sample -> "
       << prepared.kernel.Describe();
  prepared.notes.push_back(note.str());
  return prepared;
}

RegretTrace RunTrial(const ExperimentConfig& config, const PreparedExperiment& prepared, std::size_t trial) {
  const std::uint64_t seed = TrialSeed(config.master_seed, trial);
  Rng noise_rng(mix_seed(seed, 2));
  LoopSetup setup;
  setup.horizon = config.horizon;
  RegretTrace trace = RunPolicyLoop(prepared.objective, prepared.kernel, config.noise_variance, config.policy,
                                    InitIndices(seed, prepared.objective.size(), config.init_observations),
                                    noise_rng, setup);
  trace.trial = trial;
  trace.seed = seed;
  return trace;
}

RegretTrace RunTrial(const ExperimentConfig& config, std::size_t trial) {
  return RunTrial(config, Prepare(config), trial);
}

std::vector<RegretTrace> RunExperiment(const ExperimentConfig& config, const PreparedExperiment& prepared) {
  std::vector<RegretTrace> traces(config.trials);
  ParallelFor(
      config.trials, [&](std::size_t i) { traces[i] = RunTrial(config, prepared, i); }, config.threads);
  return traces;
}

std::vector<AggregateRow> Aggregate(const std::vector<RegretTrace>& traces) {
  std::vector<const RegretTrace*> ok;
  for (const auto& trace : traces) {
    if (!trace.failed) ok.push_back(&trace);
  }
  if (ok.size() < 2) throw InputError("aggregate: need at least two successful traces");
  const std::size_t horizon = ok.front()->steps.size();
  for (const auto* trace : ok) {
    if (trace->steps.size() != horizon) throw InputError("aggregate: traces have different horizons");
  }
  const auto n = static_cast<double>(ok.size());
  std::vector<AggregateRow> rows;
  rows.reserve(horizon);
  for (std::size_t s = 0; s < horizon; ++s) {
    double sum = 0.0;
    for (const auto* trace : ok) sum += trace->steps[s].avg_regret;
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto* trace : ok) {
      const double d = trace->steps[s].avg_regret - mean;
      ss += d * d;
    }
    const double half = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    rows.push_back({s + 1, mean, mean - half, mean + half, ok.size()});
  }
  return rows;
}

std::vector<std::string> TraceCsvHeader(std::size_t dim) {
  std::vector<std::string> header{"task", "policy", "trial", "t"};
  for (std::size_t i = 1; i <= dim; ++i) header.push_back("x" + std::to_string(i));
  for (const char* name : {"y", "regret", "cum_regret", "avg_regret", "gamma_hat", "phi_at_query",
                           "sigma2_at_query"}) {
    header.emplace_back(name);
  }
  return header;
}

void WriteTracesCsv(const std::vector<RegretTrace>& traces, std::size_t dim, std::ostream& out) {
  WriteCsvRow(out, TraceCsvHeader(dim));
  for (const auto& trace : traces) {
    auto emit = [&](const TraceRow& row) {
      if (static_cast<std::size_t>(row.x.size()) != dim) throw InputError("export_csv: trace dimension mismatch");
      std::vector<std::string> fields{trace.task, trace.policy, std::to_string(trace.trial), std::to_string(row.t)};
      for (Eigen::Index i = 0; i < row.x.size(); ++i) fields.push_back(FormatDouble(row.x[i]));
      for (double v : {row.y, row.regret, row.cum_regret, row.avg_regret, row.gamma_hat, row.phi_at_query,
                       row.sigma2_at_query}) {
        fields.push_back(FormatDouble(v));
      }
      WriteCsvRow(out, fields);
    };
    for (const auto& row : trace.init) emit(row);
    for (const auto& row : trace.steps) emit(row);
  }
}

void WriteTracesCsv(const std::vector<RegretTrace>& traces, std::size_t dim, const std::string& path) {
  std::ofstream out = OpenForWrite(path);
  WriteTracesCsv(traces, dim, out);
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<std::string> AggregateCsvHeader() {
  return {"task", "policy", "t", "mean_avg_regret", "ci_lower", "ci_upper", "trials"};
}

void WriteAggregateCsv(const std::string& task, const std::string& policy, const std::vector<AggregateRow>& rows,
                       std::ostream& out, bool header) {
  if (header) WriteCsvRow(out, AggregateCsvHeader());
  for (const auto& row : rows) {
    WriteCsvRow(out, {task, policy, std::to_string(row.t), FormatDouble(row.mean), FormatDouble(row.lower),
                      FormatDouble(row.upper), std::to_string(row.n)});
  }
}

void WriteAggregateCsv(const std::string& task, const std::string& policy, const std::vector<AggregateRow>& rows,
                       const std::string& path) {
  std::ofstream out = OpenForWrite(path);
  WriteAggregateCsv(task, policy, rows, out, true);
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace gpopt
