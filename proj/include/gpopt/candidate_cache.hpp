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

#ifndef GPOPT_CANDIDATE_CACHE_HPP_
#define GPOPT_CANDIDATE_CACHE_HPP_

#include <cstddef>
#include <cstdint>

#include <Eigen/Core>

#include "gpopt/kernel.hpp"
#include "gpopt/posterior.hpp"

namespace gpopt {

// Posterior mean and variance over a fixed candidate set, kept up to date as
// the posterior grows one observation at a time.
//
// For every candidate x the cache stores v(x) = L^{-1} c(x). When the factor
// gains a row (l^T, d), the new entry is (c_new(x) - l^T v(x)) / d, so an
// update costs O(n t) instead of the O(n t^2) of re-solving.
class CandidateCache {
 public:
  CandidateCache(PointSet candidates, const PosteriorState& state);

  // Moves the cache to `next`. Incremental when next extends the current
  // state by exactly one observation on the same factor, rebuilt otherwise.
  void Update(const PosteriorState& next);

  std::size_t size() const { return static_cast<std::size_t>(candidates_.cols()); }
  std::size_t observations() const { return observations_; }
  const PointSet& candidates() const { return candidates_; }

  const Eigen::VectorXd& mean() const { return mean_; }
  // Clamped at zero.
  const Eigen::VectorXd& variance() const { return variance_; }
  double prior_variance(std::size_t i) const { return prior_variance_[static_cast<Eigen::Index>(i)]; }

  // Posterior covariance between candidates i and j.
  double Covariance(std::size_t i, std::size_t j) const;

 private:
  void Rebuild(const PosteriorState& state);
  void AppendColumn(const PosteriorState& state);

  PointSet candidates_;
  Kernel kernel_;
  Eigen::VectorXd prior_variance_;
  Eigen::MatrixXd whitened_;  // candidates x capacity
  Eigen::VectorXd mean_;
  Eigen::VectorXd raw_variance_;
  Eigen::VectorXd variance_;
  std::size_t observations_ = 0;
  std::uint64_t generation_ = 0;
};

}  // namespace gpopt

#endif  // GPOPT_CANDIDATE_CACHE_HPP_
