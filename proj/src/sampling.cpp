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

#include "gpopt/sampling.hpp"

#include <utility>

#include "gpopt/linalg.hpp"

namespace gpopt {

GpSampler::GpSampler(const Kernel& kernel, const PointSet& grid) {
  kernel.Validate();
  gram_ = Gram(kernel, grid);
  auto chol = CholeskyWithJitter(gram_, kernel.output_scale, true);
  factor_ = std::move(chol.lower);
  jitter_ = chol.jitter;
}

Eigen::VectorXd GpSampler::Draw(Rng& rng) const {
  Eigen::VectorXd z(factor_.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = standard_normal(rng);
  return factor_.triangularView<Eigen::Lower>() * z;
}

Eigen::VectorXd GpSampler::Draw(std::uint64_t seed) const {
  Rng rng(seed);
  return Draw(rng);
}

Eigen::VectorXd SampleGp(const Kernel& kernel, const PointSet& grid, std::uint64_t seed) {
  return GpSampler(kernel, grid).Draw(seed);
}

}  // namespace gpopt
