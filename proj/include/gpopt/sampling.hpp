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

#ifndef GPOPT_SAMPLING_HPP_
#define GPOPT_SAMPLING_HPP_

#include <cstdint>

#include <Eigen/Core>

#include "gpopt/kernel.hpp"
#include "gpopt/random.hpp"

namespace gpopt {

// Exact zero-mean GP draws restricted to a finite grid: L z with L the
// (jittered) Cholesky factor of the grid Gram matrix and z standard normal.
// Factorizes once; draws are cheap.
class GpSampler {
 public:
  GpSampler(const Kernel& kernel, const PointSet& grid);

  Eigen::VectorXd Draw(Rng& rng) const;
  // Deterministic in seed.
  Eigen::VectorXd Draw(std::uint64_t seed) const;

  const Eigen::MatrixXd& gram() const { return gram_; }
  double jitter() const { return jitter_; }
  Eigen::Index size() const { return factor_.rows(); }

 private:
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd factor_;
  double jitter_ = 0.0;
};

// One draw of the GP on `grid`.
Eigen::VectorXd SampleGp(const Kernel& kernel, const PointSet& grid, std::uint64_t seed);

}  // namespace gpopt

#endif  // GPOPT_SAMPLING_HPP_
