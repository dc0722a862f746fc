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

#include "gpopt/posterior.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <utility>

#include "gpopt/errors.hpp"
#include "gpopt/linalg.hpp"
#include "gpopt/log.hpp"

namespace gpopt {
namespace {

std::atomic<std::uint64_t> g_clamp_count{0};
std::atomic<std::uint64_t> g_generation{0};

std::uint64_t NextGeneration() { return ++g_generation; }

}  // namespace

std::uint64_t VarianceClampCount() { return g_clamp_count.load(); }

PosteriorState::PosteriorState(Kernel kernel, double noise_variance, ObservationMode mode,
                               std::optional<Point> x_star)
    : kernel_(std::move(kernel)),
      noise_variance_(noise_variance),
      mode_(mode),
      x_star_(std::move(x_star)),
      generation_(NextGeneration()) {
  kernel_.Validate();
  if (!(noise_variance_ >= 0.0) || !std::isfinite(noise_variance_)) {
    throw ConfigError("posterior: noise variance must be finite and non-negative");
  }
  if (mode_ == ObservationMode::kRegretFeedback && !x_star_) {
    throw ConfigError("posterior: regret feedback requires the optimum location x*");
  }
  if (noise_variance_ == 0.0) jitter_ = kJitterStart * kernel_.output_scale;
  if (x_star_) points_.resize(x_star_->size(), 0);
}

PosteriorState PosteriorState::Fit(const Kernel& kernel, const PointSet& points,
                                   const Eigen::VectorXd& values, double noise_variance) {
  if (points.cols() != values.size()) {
    throw InputError("fit_posterior: number of points and values differ");
  }
  PosteriorState state(kernel, noise_variance);
  state.points_ = points;
  state.values_ = values;
  state.Refactor();
  return state;
}

PosteriorState PosteriorState::FitRegret(const Kernel& kernel, PointRef x_star,
                                         const PointSet& points, const Eigen::VectorXd& regrets) {
  if (points.cols() != regrets.size()) {
    throw InputError("fit_regret_posterior: number of points and regrets differ");
  }
  if (points.cols() > 0 && points.rows() != x_star.size()) {
    throw InputError("fit_regret_posterior: dimension mismatch with x*");
  }
  PosteriorState state(kernel, 0.0, ObservationMode::kRegretFeedback, Point(x_star));
  if (points.cols() > 0) state.points_ = points;
  state.values_ = regrets;
  state.Refactor();
  return state;
}

double PosteriorState::ObservationGram(std::size_t i, std::size_t j) const {
  const auto xi = points_.col(static_cast<Eigen::Index>(i));
  const auto xj = points_.col(static_cast<Eigen::Index>(j));
  if (mode_ == ObservationMode::kNoisyValue) return kernel_(xi, xj);
  const Point& s = *x_star_;
  return kernel_(s, s) - kernel_(s, xj) - kernel_(xi, s) + kernel_(xi, xj);
}

void PosteriorState::Refactor() {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const double value = ObservationGram(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      gram(i, j) = value;
      gram(j, i) = value;
    }
  }
  gram.diagonal().array() += noise_variance_;
  auto chol = CholeskyWithJitter(gram, kernel_.output_scale, noise_variance_ == 0.0);
  factor_ = std::move(chol.lower);
  jitter_ = chol.jitter;
  whitened_ = factor_.triangularView<Eigen::Lower>().solve(values_);
  generation_ = NextGeneration();
}

void PosteriorState::CheckDim(PointRef x) const {
  const Eigen::Index dim = x_star_ ? x_star_->size() : (points_.cols() > 0 ? points_.rows() : -1);
  if (dim >= 0 && x.size() != dim) {
    std::ostringstream msg;
    msg << "posterior: query of dimension " << x.size() << " against data of dimension " << dim;
    throw InputError(msg.str());
  }
}

Eigen::VectorXd PosteriorState::ObservationCovariance(PointRef x) const {
  CheckDim(x);
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::VectorXd c(n);
  if (mode_ == ObservationMode::kNoisyValue) {
    for (Eigen::Index i = 0; i < n; ++i) c[i] = kernel_(points_.col(i), x);
  } else {
    const double star = n > 0 ? kernel_(*x_star_, x) : 0.0;
    for (Eigen::Index i = 0; i < n; ++i) c[i] = star - kernel_(points_.col(i), x);
  }
  return c;
}

Eigen::VectorXd PosteriorState::ObservationCovariance(std::size_t i, const PointSet& points) const {
  const auto xi = points_.col(static_cast<Eigen::Index>(i));
  Eigen::VectorXd c(points.cols());
  if (mode_ == ObservationMode::kNoisyValue) {
    for (Eigen::Index j = 0; j < points.cols(); ++j) c[j] = kernel_(xi, points.col(j));
  } else {
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
      c[j] = kernel_(*x_star_, points.col(j)) - kernel_(xi, points.col(j));
    }
  }
  return c;
}

Eigen::VectorXd PosteriorState::Whiten(PointRef x) const {
  Eigen::VectorXd c = ObservationCovariance(x);
  if (c.size() == 0) return c;
  factor_.triangularView<Eigen::Lower>().solveInPlace(c);
  return c;
}

double PosteriorState::Mean(PointRef x) const {
  if (size() == 0) {
    CheckDim(x);
    return 0.0;
  }
  return Whiten(x).dot(whitened_);
}

double PosteriorState::Variance(PointRef x) const {
  const Eigen::VectorXd v = Whiten(x);
  const double var = kernel_(x, x) - v.squaredNorm();
  if (var < 0.0) {
    ++g_clamp_count;
    if (GetLogLevel() <= LogLevel::kDebug) {
      std::ostringstream msg;
      msg << "posterior: clamped variance " << var << " to 0";
      Log(LogLevel::kDebug, msg.str());
    }
    return 0.0;
  }
  return var;
}

double PosteriorState::Covariance(PointRef a, PointRef b) const {
  if (a.size() == b.size() && a == b) return Variance(a);
  if (a.size() != b.size()) throw InputError("posterior: covariance between points of different dimension");
  const Eigen::VectorXd va = Whiten(a);
  const Eigen::VectorXd vb = Whiten(b);
  return kernel_(a, b) - va.dot(vb);
}

PosteriorState PosteriorState::Extend(PointRef x, double value) const {
  CheckDim(x);
  PosteriorState next = *this;
  const auto n = static_cast<Eigen::Index>(size());
  next.points_.conservativeResize(x.size(), n + 1);
  next.points_.col(n) = x;
  next.values_.conservativeResize(n + 1);
  next.values_[n] = value;

  Eigen::VectorXd cross(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cross[i] = next.ObservationGram(static_cast<std::size_t>(i), static_cast<std::size_t>(n));
  }
  const double diag = next.ObservationGram(static_cast<std::size_t>(n), static_cast<std::size_t>(n)) +
                      noise_variance_ + jitter_;
  if (n > 0) factor_.triangularView<Eigen::Lower>().solveInPlace(cross);
  const double pivot2 = diag - cross.squaredNorm();
  // The exact Schur complement is at least noise + jitter.
  if (!(pivot2 >= 0.5 * (noise_variance_ + jitter_)) || !std::isfinite(pivot2)) {
    std::ostringstream msg;
    msg << "extend_posterior: pivot breakdown (" << pivot2 << ") at size " << n + 1
        << ", refactorizing";
    Log(LogLevel::kInfo, msg.str());
    next.Refactor();
    return next;
  }
  const double pivot = std::sqrt(pivot2);
  next.factor_.conservativeResize(n + 1, n + 1);
  next.factor_.row(n).head(n) = cross.transpose();
  next.factor_.col(n).setZero();
  next.factor_(n, n) = pivot;
  next.whitened_.conservativeResize(n + 1);
  next.whitened_[n] = (value - cross.dot(whitened_)) / pivot;
  return next;
}

}  // namespace gpopt
