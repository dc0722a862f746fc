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

#include "gpopt/info.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Core>

#include "gpopt/errors.hpp"
#include "gpopt/linalg.hpp"

namespace gpopt {
namespace {

void CheckNoise(double noise_variance) {
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) {
    throw ConfigError("info: noise variance must be positive");
  }
}

}  // namespace

double MutualInformation(const Kernel& kernel, const PointSet& points, double noise_variance) {
  CheckNoise(noise_variance);
  kernel.Validate();
  if (points.cols() == 0) return 0.0;
  Eigen::MatrixXd m = Gram(kernel, points) / noise_variance;
  m.diagonal().array() += 1.0;
  // I + K / s^2 has eigenvalues >= 1, so no jitter is ever needed.
  const JitteredCholesky chol = CholeskyWithJitter(m, 1.0, false);
  double half_log_det = 0.0;
  for (Eigen::Index i = 0; i < chol.lower.rows(); ++i) half_log_det += std::log(chol.lower(i, i));
  return std::max(half_log_det, 0.0);
}

double C1(double noise_variance) {
  CheckNoise(noise_variance);
  return 2.0 / std::log1p(1.0 / noise_variance);
}

void InfoAccumulator::Accumulate(double variance_at_query) {
  if (!(variance_at_query >= 0.0) || !std::isfinite(variance_at_query)) {
    std::ostringstream msg;
    msg << "info: negative or non-finite posterior variance " << variance_at_query;
    throw InputError(msg.str());
  }
  history_.push_back(variance_at_query);
  const double t = sum_ + variance_at_query;
  if (std::abs(sum_) >= std::abs(variance_at_query)) {
    compensation_ += (sum_ - t) + variance_at_query;
  } else {
    compensation_ += (variance_at_query - t) + sum_;
  }
  sum_ = t;
}

double CompensatedSum(const std::vector<double>& values) {
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

GreedyGammaResult GreedyGammaBound(const Kernel& kernel, const PointSet& candidates,
                                   std::size_t count, double noise_variance) {
  CheckNoise(noise_variance);
  kernel.Validate();
  const Eigen::Index n = candidates.cols();
  if (count > static_cast<std::size_t>(n)) {
    throw InputError("greedy_gamma_bound: more points requested than candidates");
  }
  GreedyGammaResult result;
  // Posterior variances given the selected set, updated by the same rank-one
  // scheme as the candidate cache.
  Eigen::VectorXd variance(n);
  for (Eigen::Index i = 0; i < n; ++i) variance[i] = kernel(candidates.col(i), candidates.col(i));
  Eigen::MatrixXd whitened(n, static_cast<Eigen::Index>(count));
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  double total = 0.0;
  for (std::size_t step = 0; step < count; ++step) {
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (taken[static_cast<std::size_t>(i)]) continue;
      if (best < 0 || variance[i] > variance[best]) best = i;
    }
    const double pivot2 = variance[best] + noise_variance;
    total += 0.5 * std::log1p(std::max(variance[best], 0.0) / noise_variance);
    taken[static_cast<std::size_t>(best)] = true;
    result.selected.push_back(static_cast<std::size_t>(best));
    const auto t = static_cast<Eigen::Index>(step);
    Eigen::VectorXd column(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      column[i] = kernel(candidates.col(i), candidates.col(best));
    }
    if (t > 0) column.noalias() -= whitened.leftCols(t) * whitened.row(best).head(t).transpose();
    column /= std::sqrt(pivot2);
    whitened.col(t) = column;
    variance -= column.cwiseAbs2();
  }
  result.value = total;
  result.upper_proxy = total / (1.0 - std::exp(-1.0));
  return result;
}

}  // namespace gpopt
