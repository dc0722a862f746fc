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

#include "gpopt/policy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "gpopt/errors.hpp"

namespace gpopt {

std::string_view PolicyName(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kGpMi: return "gp_mi";
    case PolicyKind::kGpUcb: return "gp_ucb";
    case PolicyKind::kFixedPhi: return "fixed_phi";
    case PolicyKind::kExpectedImprovement: return "ei";
  }
  return "";
}

PolicyKind ParsePolicyKind(std::string_view name) {
  if (name == "gp_mi") return PolicyKind::kGpMi;
  if (name == "gp_ucb") return PolicyKind::kGpUcb;
  if (name == "fixed_phi") return PolicyKind::kFixedPhi;
  if (name == "ei") return PolicyKind::kExpectedImprovement;
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

double AlphaFromDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("policy: delta must lie in (0, 1)");
  return std::log(2.0 / delta);
}

double PhiGpMi(double variance, double gamma_hat_prev, double alpha) {
  return std::sqrt(alpha) * (std::sqrt(variance + gamma_hat_prev) - std::sqrt(gamma_hat_prev));
}

double UcbBeta(std::size_t t, double delta, std::size_t grid_size) {
  const double td = static_cast<double>(t);
  return 2.0 * std::log(static_cast<double>(grid_size) * td * td * std::numbers::pi *
                        std::numbers::pi / (6.0 * delta));
}

double PhiUcb(double variance, std::size_t t, double delta, std::size_t grid_size) {
  return std::sqrt(UcbBeta(t, delta, grid_size) * variance);
}

double PhiFixed(double variance, double alpha) { return 0.5 * std::sqrt(alpha) * variance; }

double ExpectedImprovement(double mean, double sd, double incumbent) {
  const double gap = mean - incumbent;
  if (sd <= 0.0) return std::max(gap, 0.0);
  const double z = gap / sd;
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return std::max(gap * cdf + sd * pdf, 0.0);
}

Policy::Policy(PolicyConfig config, PointSet candidates)
    : config_(config),
      candidates_(std::move(candidates)),
      incumbent_(-std::numeric_limits<double>::infinity()) {
  if (candidates_.cols() == 0) throw ConfigError("policy: empty candidate set");
  alpha_ = AlphaFromDelta(config_.delta);
}

double Policy::Exploration(double variance) const {
  switch (config_.kind) {
    case PolicyKind::kGpMi: return PhiGpMi(variance, info_.gamma_hat(), alpha_);
    case PolicyKind::kGpUcb:
      return PhiUcb(variance, step_, config_.delta, static_cast<std::size_t>(candidates_.cols()));
    case PolicyKind::kFixedPhi: return PhiFixed(variance, alpha_);
    case PolicyKind::kExpectedImprovement: return 0.0;
  }
  return 0.0;
}

double Policy::Score(double mean, double variance) const {
  if (config_.kind == PolicyKind::kExpectedImprovement) {
    return ExpectedImprovement(mean, std::sqrt(variance), selection_incumbent_);
  }
  return mean + Exploration(variance);
}

double Policy::EffectiveIncumbent(const Eigen::VectorXd& mean) const {
  // Without any observation the best posterior mean stands in.
  if (std::isfinite(incumbent_)) return incumbent_;
  return mean.maxCoeff();
}

std::size_t Policy::Select(const Eigen::VectorXd& mean, const Eigen::VectorXd& variance) {
  const Eigen::Index n = candidates_.cols();
  if (mean.size() != n || variance.size() != n) {
    throw InputError("select_next: posterior vectors do not match the candidate set");
  }
  if (config_.kind == PolicyKind::kExpectedImprovement) selection_incumbent_ = EffectiveIncumbent(mean);
  Eigen::Index best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double score = Score(mean[i], variance[i]);
    if (!std::isfinite(score)) {
      std::ostringstream msg;
      msg << "select_next: non-finite score " << score << " at candidate " << i << " (mean "
          << mean[i] << ", variance " << variance[i] << ")";
      throw NumericalError(msg.str());
    }
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  pending_ = static_cast<std::size_t>(best);
  pending_variance_ = variance[best];
  pending_exploration_ = Exploration(variance[best]);
  return static_cast<std::size_t>(best);
}

Point Policy::SelectNext(const PosteriorState& posterior) {
  const Eigen::Index n = candidates_.cols();
  Eigen::VectorXd mean(n);
  Eigen::VectorXd variance(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    mean[i] = posterior.Mean(candidates_.col(i));
    variance[i] = posterior.Variance(candidates_.col(i));
  }
  return candidates_.col(static_cast<Eigen::Index>(Select(mean, variance)));
}

void Policy::Observe(std::size_t index, double y) {
  if (!pending_ || *pending_ != index) {
    throw UsageError("observe: no matching pending query; call select_next first");
  }
  info_.Accumulate(pending_variance_);
  if (y > incumbent_) incumbent_ = y;
  pending_.reset();
  ++step_;
}

PosteriorState Policy::Observe(PointRef x, double y, const PosteriorState& posterior) {
  if (!pending_) throw UsageError("observe: no pending query; call select_next first");
  const auto index = static_cast<Eigen::Index>(*pending_);
  if (x.size() != candidates_.rows() || x != candidates_.col(index)) {
    throw UsageError("observe: point differs from the one returned by select_next");
  }
  pending_variance_ = posterior.Variance(x);
  Observe(*pending_, y);
  return posterior.Extend(x, y);
}

void Policy::NoteInitialObservation(double y) {
  if (y > incumbent_) incumbent_ = y;
}

}  // namespace gpopt
