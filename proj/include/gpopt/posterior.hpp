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

#ifndef GPOPT_POSTERIOR_HPP_
#define GPOPT_POSTERIOR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "gpopt/kernel.hpp"

namespace gpopt {

enum class ObservationMode {
  // y_t = f(x_t) + noise.
  kNoisyValue,
  // z_t = f(x*) - f(x_t), observed without noise.
  kRegretFeedback,
};

// Exact GP posterior given linear observations of f.
//
// Each observation is either a noisy point value or, in regret-feedback mode,
// the functional f(x*) - f(x_t). The state keeps the lower Cholesky factor L
// of the observation covariance C = K + (noise + jitter) I and the whitened
// observation vector L^{-1} y, so that
//
//   mean(x)     = (L^{-1} c(x))^T (L^{-1} y)
//   cov(x, x')  = k(x, x') - (L^{-1} c(x))^T (L^{-1} c(x'))
//
// where c(x) holds the covariances between the observations and f(x).
//
// Instances are immutable; Extend returns a new state.
class PosteriorState {
 public:
  // Prior with no observations.
  PosteriorState(Kernel kernel, double noise_variance,
                 ObservationMode mode = ObservationMode::kNoisyValue,
                 std::optional<Point> x_star = std::nullopt);

  // Batch fit on noisy values.
  static PosteriorState Fit(const Kernel& kernel, const PointSet& points,
                            const Eigen::VectorXd& values, double noise_variance);

  // Batch fit on noiseless regret observations z_t = f(x*) - f(x_t).
  static PosteriorState FitRegret(const Kernel& kernel, PointRef x_star, const PointSet& points,
                                  const Eigen::VectorXd& regrets);

  // Rank-one extension with one more observation at x. Falls back to a full
  // refactorization when the new pivot breaks down.
  PosteriorState Extend(PointRef x, double value) const;

  double Mean(PointRef x) const;
  // Clamped at zero from below; clamping increments VarianceClampCount().
  double Variance(PointRef x) const;
  double Covariance(PointRef a, PointRef b) const;

  // c(x): covariances between each observation and f(x).
  Eigen::VectorXd ObservationCovariance(PointRef x) const;
  // L^{-1} c(x).
  Eigen::VectorXd Whiten(PointRef x) const;
  // Cov(observation i, f(p)) for every column p of points.
  Eigen::VectorXd ObservationCovariance(std::size_t i, const PointSet& points) const;

  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  const Kernel& kernel() const { return kernel_; }
  double noise_variance() const { return noise_variance_; }
  double jitter() const { return jitter_; }
  ObservationMode mode() const { return mode_; }
  const std::optional<Point>& x_star() const { return x_star_; }
  const PointSet& points() const { return points_; }
  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::MatrixXd& factor() const { return factor_; }
  const Eigen::VectorXd& whitened_values() const { return whitened_; }
  // Incremented every time the factor is rebuilt from scratch; lets caches
  // detect a factor that no longer extends the one they were built from.
  std::uint64_t factor_generation() const { return generation_; }

  // Noise-free covariance between observations i and j.
  double ObservationGram(std::size_t i, std::size_t j) const;

 private:
  void Refactor();
  void CheckDim(PointRef x) const;

  Kernel kernel_;
  double noise_variance_ = 0.0;
  ObservationMode mode_ = ObservationMode::kNoisyValue;
  std::optional<Point> x_star_;
  PointSet points_;
  Eigen::VectorXd values_;
  Eigen::MatrixXd factor_;
  Eigen::VectorXd whitened_;
  double jitter_ = 0.0;
  std::uint64_t generation_ = 0;
};

// Number of negative posterior variances clamped to zero so far, process-wide.
std::uint64_t VarianceClampCount();

}  // namespace gpopt

#endif  // GPOPT_POSTERIOR_HPP_
