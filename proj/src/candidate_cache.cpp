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

#include "gpopt/candidate_cache.hpp"

#include <algorithm>
#include <utility>

#include "gpopt/errors.hpp"

namespace gpopt {

CandidateCache::CandidateCache(PointSet candidates, const PosteriorState& state)
    : candidates_(std::move(candidates)), kernel_(state.kernel()) {
  if (candidates_.cols() == 0) throw InputError("candidate cache: empty candidate set");
  const Eigen::Index n = candidates_.cols();
  prior_variance_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    prior_variance_[i] = kernel_(candidates_.col(i), candidates_.col(i));
  }
  Rebuild(state);
}

void CandidateCache::Rebuild(const PosteriorState& state) {
  const Eigen::Index n = candidates_.cols();
  const auto t = static_cast<Eigen::Index>(state.size());
  whitened_.resize(n, std::max<Eigen::Index>(2 * t, 16));
  if (t > 0) {
    Eigen::MatrixXd cov(t, n);
    for (Eigen::Index i = 0; i < t; ++i) {
      cov.row(i) = state.ObservationCovariance(static_cast<std::size_t>(i), candidates_).transpose();
    }
    state.factor().triangularView<Eigen::Lower>().solveInPlace(cov);
    whitened_.leftCols(t) = cov.transpose();
    mean_ = whitened_.leftCols(t) * state.whitened_values();
    raw_variance_ = prior_variance_ - whitened_.leftCols(t).rowwise().squaredNorm();
  } else {
    mean_ = Eigen::VectorXd::Zero(n);
    raw_variance_ = prior_variance_;
  }
  variance_ = raw_variance_.cwiseMax(0.0);
  observations_ = static_cast<std::size_t>(t);
  generation_ = state.factor_generation();
}

void CandidateCache::AppendColumn(const PosteriorState& state) {
  const auto t = static_cast<Eigen::Index>(observations_);
  if (t + 1 > whitened_.cols()) whitened_.conservativeResize(Eigen::NoChange, 2 * (t + 1));
  const Eigen::MatrixXd& factor = state.factor();
  const double pivot = factor(t, t);
  Eigen::VectorXd column = state.ObservationCovariance(static_cast<std::size_t>(t), candidates_);
  if (t > 0) column.noalias() -= whitened_.leftCols(t) * factor.row(t).head(t).transpose();
  column /= pivot;
  whitened_.col(t) = column;
  mean_ += column * state.whitened_values()[t];
  raw_variance_ -= column.cwiseAbs2();
  variance_ = raw_variance_.cwiseMax(0.0);
  observations_ = static_cast<std::size_t>(t + 1);
}

void CandidateCache::Update(const PosteriorState& next) {
  if (next.kernel().family != kernel_.family || next.kernel().length_scale != kernel_.length_scale ||
      next.kernel().output_scale != kernel_.output_scale ||
      next.kernel().matern_nu != kernel_.matern_nu) {
    throw InputError("candidate cache: posterior uses a different kernel");
  }
  if (next.factor_generation() == generation_ && next.size() == observations_ + 1) {
    AppendColumn(next);
  } else if (next.factor_generation() == generation_ && next.size() == observations_) {
    return;
  } else {
    Rebuild(next);
  }
}

double CandidateCache::Covariance(std::size_t i, std::size_t j) const {
  const auto t = static_cast<Eigen::Index>(observations_);
  const auto ii = static_cast<Eigen::Index>(i);
  const auto jj = static_cast<Eigen::Index>(j);
  if (i == j) return variance_[ii];
  return kernel_(candidates_.col(ii), candidates_.col(jj)) -
         whitened_.row(ii).head(t).dot(whitened_.row(jj).head(t));
}

}  // namespace gpopt
