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

#include <gtest/gtest.h>

#include "gpopt/grid.hpp"

namespace gpopt {
namespace {

TEST(SamplingTest, SinglePointMoments) {
  PointSet grid(1, 1);
  grid << 0.3;
  const GpSampler sampler(Kernel::SquaredExponential(1.0), grid);
  double sum = 0.0, sq = 0.0;
  const int n = 10000;
  for (int seed = 0; seed < n; ++seed) {
    const double v = sampler.Draw(static_cast<std::uint64_t>(seed))[0];
    sum += v;
    sq += v * v;
  }
  const double mean = sum / n;
  const double var = (sq - n * mean * mean) / (n - 1);
  EXPECT_LT(std::abs(mean), 0.05);
  EXPECT_GT(var, 0.9);
  EXPECT_LT(var, 1.1);
}

TEST(SamplingTest, SameSeedSameDraw) {
  const PointSet grid = LatticeGrid(Box::Uniform(2, 0.0, 1.0), 9);
  const Kernel k = Kernel::Matern(3.0, 0.4);
  EXPECT_EQ(SampleGp(k, grid, 77), SampleGp(k, grid, 77));
  EXPECT_NE(SampleGp(k, grid, 77), SampleGp(k, grid, 78));
}

TEST(SamplingTest, EmpiricalCovarianceMatchesGram) {
  PointSet grid(1, 5);
  grid << 0.0, 0.2, 0.4, 0.7, 1.0;
  const Kernel k = Kernel::SquaredExponential(0.3);
  const GpSampler sampler(k, grid);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(5, 5);
  const int n = 5000;
  Rng rng(9);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd f = sampler.Draw(rng);
    acc += f * f.transpose();
  }
  acc /= n;
  const Eigen::MatrixXd gram = Gram(k, grid);
  EXPECT_LT((acc - gram).cwiseAbs().maxCoeff(), 0.1);
}

TEST(SamplingTest, NearSingularGramGetsJitter) {
  const PointSet grid = LatticeGrid(Box::Uniform(1, 0.0, 1.0), 200);
  const GpSampler sampler(Kernel::SquaredExponential(0.5), grid);
  EXPECT_GT(sampler.jitter(), 0.0);
  EXPECT_LE(sampler.jitter(), 1e-6);
  EXPECT_TRUE(sampler.Draw(std::uint64_t{1}).allFinite());
}

}  // namespace
}  // namespace gpopt
