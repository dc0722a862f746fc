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

#include "gpopt/objectives.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "gpopt/errors.hpp"
#include "gpopt/grid.hpp"

namespace gpopt {
namespace {

// Values of local maxima (8-neighbourhood, ties allowed) on a lattice with
// the first axis fastest.
std::vector<double> LatticeLocalMaxima(const Eigen::VectorXd& v, int per_axis) {
  std::vector<double> maxima;
  auto at = [&](int i, int j) { return v[i + per_axis * j]; };
  for (int j = 0; j < per_axis; ++j) {
    for (int i = 0; i < per_axis; ++i) {
      bool is_max = true;
      for (int dj = -1; dj <= 1 && is_max; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          const int a = i + di, b = j + dj;
          if ((di || dj) && a >= 0 && b >= 0 && a < per_axis && b < per_axis && at(a, b) > at(i, j)) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) maxima.push_back(at(i, j));
    }
  }
  return maxima;
}

Eigen::VectorXd OnLattice(const Box& box, int per_axis, const std::function<double(PointRef)>& f) {
  const PointSet grid = LatticeGrid(box, per_axis);
  Eigen::VectorXd v(grid.cols());
  for (Eigen::Index i = 0; i < grid.cols(); ++i) v[i] = f(grid.col(i));
  return v;
}

double BraninOracle(double x, double y) {
  const double pi = std::numbers::pi;
  const double b = 5.1 / (4.0 * pi * pi), c = 5.0 / pi, t = 1.0 / (8.0 * pi);
  return std::pow(y - b * x * x + c * x - 6.0, 2) + 10.0 * (1.0 - t) * std::cos(x) + 10.0;
}

TEST(ObjectivesTest, BraninMatchesIndependentFormula) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ux(-5.0, 10.0), uy(0.0, 15.0);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector2d p(ux(rng), uy(rng));
    EXPECT_NEAR(Branin(p), -BraninOracle(p[0], p[1]), 1e-12);
  }
}

TEST(ObjectivesTest, BraninHasThreeEqualMaxima) {
  const double pi = std::numbers::pi;
  const double a = Branin(Eigen::Vector2d(-pi, 12.275));
  const double b = Branin(Eigen::Vector2d(pi, 2.275));
  const double c = Branin(Eigen::Vector2d(9.42478, 2.475));
  EXPECT_NEAR(a, b, 1e-4);
  EXPECT_NEAR(a, c, 1e-4);
  EXPECT_NEAR(a, -0.397887, 1e-5);
  const Eigen::VectorXd fine = OnLattice(BraninBox(), 601, [](PointRef x) { return Branin(x); });
  const double top = fine.maxCoeff();
  int near_top = 0;
  for (double m : LatticeLocalMaxima(fine, 601)) near_top += (top - m < 1e-3);
  EXPECT_EQ(near_top, 3);
}

TEST(ObjectivesTest, BraninObjectiveMetadata) {
  const Objective obj = MakeBranin();
  EXPECT_EQ(obj.noise_std, 0.0);
  EXPECT_EQ(obj.max_value - obj.values[static_cast<Eigen::Index>(obj.max_index)], 0.0);
  EXPECT_EQ(obj.Eval(obj.max_point), obj.max_value);
  for (Eigen::Index i = 0; i < obj.values.size(); ++i) EXPECT_LE(obj.values[i], obj.max_value);
  EXPECT_THROW(obj.Eval(Eigen::Vector2d(11.0, 1.0)), InputError);
  EXPECT_NEAR(obj.values.mean(), 0.0, 1e-12);
}

TEST(ObjectivesTest, GoldsteinPrice) {
  EXPECT_NEAR(GoldsteinPriceRaw(Eigen::Vector2d(0.0, -1.0)), 3.0, 1e-12);
  EXPECT_NEAR(GoldsteinPrice(Eigen::Vector2d(0.0, -1.0)), -std::log(3.0), 1e-12);
  const Objective obj = MakeGoldsteinPrice();
  const double cell = 4.0 / 100.0;
  EXPECT_LE(std::abs(obj.max_point[0] - 0.0), cell);
  EXPECT_LE(std::abs(obj.max_point[1] + 1.0), cell);
  int at_top = 0;
  for (double m : LatticeLocalMaxima(obj.values, 101)) at_top += (obj.max_value - m < 1e-6);
  EXPECT_EQ(at_top, 1);
  EXPECT_THROW(obj.Eval(Eigen::Vector2d(2.5, 0.0)), InputError);
}

TEST(ObjectivesTest, HimmelblauRootsAndCensus) {
  EXPECT_EQ(HimmelblauTilted(Eigen::Vector2d(3.0, 2.0), 0.0), 0.0);
  for (const Eigen::Vector2d& root : {Eigen::Vector2d(-2.805118, 3.131312), Eigen::Vector2d(-3.779310, -3.283186),
                                      Eigen::Vector2d(3.584428, -1.848126)}) {
    EXPECT_NEAR(HimmelblauTilted(root, 0.0), 0.0, 1e-6);
  }
  const Objective tilted = MakeHimmelblau(0.5);
  const std::vector<double> maxima = LatticeLocalMaxima(tilted.values, 101);
  EXPECT_EQ(maxima.size(), 4u);
  int global = 0;
  for (double m : maxima) global += (tilted.max_value - m < 1e-6);
  EXPECT_EQ(global, 1);
  EXPECT_EQ(LatticeLocalMaxima(MakeHimmelblau(0.0).values, 101).size(), 4u);
}

TEST(ObjectivesTest, GaussianMixtureUnimodalCase) {
  MixtureSpec spec;
  spec.bumps = {{0.37, 0.61, 1.0, 0.2}};
  spec.perturbation_amplitude = 0.0;
  const Objective obj = MakeGaussianMixture(3, spec);
  EXPECT_LE(std::abs(obj.max_point[0] - 0.37), 0.01);
  EXPECT_LE(std::abs(obj.max_point[1] - 0.61), 0.01);
}

TEST(ObjectivesTest, GaussianMixtureDeterministicAndThin) {
  const Objective a = MakeGaussianMixture(5);
  const Objective b = MakeGaussianMixture(5);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, MakeGaussianMixture(6).values);
  const double tol = 0.01 * std::abs(a.max_value);
  const auto close = (a.values.array() >= a.max_value - tol).count();
  EXPECT_LT(static_cast<double>(close), 0.01 * static_cast<double>(a.size()));
  EXPECT_DOUBLE_EQ(a.noise_std, 0.01);
}

TEST(ObjectivesTest, GeneratedGpDraws) {
  std::set<std::size_t> argmaxes;
  int in_band = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Objective obj = MakeGeneratedGp(2, seed);
    argmaxes.insert(obj.max_index);
    EXPECT_DOUBLE_EQ(obj.noise_std, 0.01);  // standardized units: 1% of the draw's std
    // The raw draw mean sits well inside a few standard errors; about ten
    // length scales per axis leave on the order of 100 effective samples.
    in_band += std::abs(obj.shift) <= 3.0 * obj.scale / std::sqrt(10.0);
  }
  EXPECT_GE(argmaxes.size(), 19u);
  EXPECT_GE(in_band, 19);
  EXPECT_THROW(MakeGeneratedGp(3, 0), ConfigError);
}

TEST(ObjectivesTest, EvaluateNoisy) {
  const Objective clean = MakeBranin();
  Rng rng(1);
  const Eigen::Vector2d p(1.0, 2.0);
  EXPECT_EQ(EvaluateNoisy(clean, p, rng), clean.Eval(p));

  Objective noisy = MakeHimmelblau();
  noisy.noise_std = 0.3;
  const Eigen::Vector2d q(0.5, -0.5);
  const double f = noisy.Eval(q);
  double sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double e = EvaluateNoisy(noisy, q, rng) - f;
    sq += e * e;
  }
  EXPECT_NEAR(std::sqrt(sq / n), 0.3, 0.02 * 0.3);

  Rng r1(mix_seed(9, 1)), r2(mix_seed(9, 2));
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double a = EvaluateNoisy(noisy, q, r1) - f, b = EvaluateNoisy(noisy, q, r2) - f;
    sxy += a * b;
    sxx += a * a;
    syy += b * b;
  }
  EXPECT_LT(std::abs(sxy / std::sqrt(sxx * syy)), 0.02);
  EXPECT_THROW(EvaluateNoisy(noisy, Eigen::Vector2d(6.0, 0.0), rng), InputError);
}

TEST(ObjectivesTest, GridBackedObjectiveOnlyAnswersOnGrid) {
  const Objective obj = MakeGeneratedGp(2, 1);
  EXPECT_EQ(obj.Eval(obj.grid.col(17)), obj.values[17]);
  EXPECT_THROW(obj.Eval(Eigen::Vector2d(0.0531, 0.0117)), InputError);
}

TEST(ObjectivesTest, RegretIsNonNegativeOnGrid) {
  for (const char* name : {"branin", "himmelblau", "gaussian_mixture"}) {
    const Objective obj = MakeObjective(name, 0);
    for (std::size_t i = 0; i < obj.size(); ++i) EXPECT_GE(obj.Regret(i), 0.0);
  }
  EXPECT_THROW(MakeObjective("tsunami", 0), ConfigError);
}

TEST(GridTest, LatticeAndHalton) {
  const PointSet lattice = LatticeGrid(Box::Uniform(2, -1.0, 1.0), 3);
  ASSERT_EQ(lattice.cols(), 9);
  EXPECT_EQ(lattice.col(0), Eigen::Vector2d(-1.0, -1.0));
  EXPECT_EQ(lattice.col(1), Eigen::Vector2d(0.0, -1.0));
  EXPECT_EQ(lattice.col(8), Eigen::Vector2d(1.0, 1.0));
  const Box box = Box::Uniform(6, 0.0, 1.0);
  const PointSet h = ScrambledHalton(box, 512, 3);
  EXPECT_EQ(h, ScrambledHalton(box, 512, 3));
  for (Eigen::Index i = 0; i < h.cols(); ++i) EXPECT_TRUE(box.Contains(h.col(i)));
  // Low discrepancy: every axis is close to uniform in its mean.
  for (Eigen::Index d = 0; d < 6; ++d) EXPECT_NEAR(h.row(d).mean(), 0.5, 0.01);
  EXPECT_EQ(GridSpec::Default(2).kind, GridKind::kLattice);
  EXPECT_EQ(GridSpec::Default(4).kind, GridKind::kHalton);
}

}  // namespace
}  // namespace gpopt
