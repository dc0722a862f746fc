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

#ifndef GPOPT_INFO_HPP_
#define GPOPT_INFO_HPP_

#include <cstddef>
#include <vector>

#include "gpopt/kernel.hpp"

namespace gpopt {

// I(X) = 1/2 log det(I + K_X / noise_variance), in nats.
double MutualInformation(const Kernel& kernel, const PointSet& points, double noise_variance);

// 2 / log(1 + 1 / noise_variance).
double C1(double noise_variance);

// Running sum of the posterior variances at the queried points, with
// compensated summation so that the total equals the sum of the history.
class InfoAccumulator {
 public:
  // Throws InputError on a negative or non-finite variance.
  void Accumulate(double variance_at_query);

  double gamma_hat() const { return sum_ + compensation_; }
  const std::vector<double>& history() const { return history_; }
  std::size_t steps() const { return history_.size(); }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
  std::vector<double> history_;
};

// Neumaier-compensated sum.
double CompensatedSum(const std::vector<double>& values);

struct GreedyGammaResult {
  double value = 0.0;                // information of the greedy set
  double upper_proxy = 0.0;          // value / (1 - 1/e)
  std::vector<std::size_t> selected; // candidate indices, in selection order
};

// Greedy forward selection of `count` candidates maximizing the mutual
// information. Monotone submodularity puts the true restricted maximum in
// [value, upper_proxy].
GreedyGammaResult GreedyGammaBound(const Kernel& kernel, const PointSet& candidates,
                                   std::size_t count, double noise_variance);

}  // namespace gpopt

#endif  // GPOPT_INFO_HPP_
