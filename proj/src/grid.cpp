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

#include "gpopt/grid.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>
#include <vector>

#include "gpopt/errors.hpp"
#include "gpopt/random.hpp"

namespace gpopt {
namespace {

constexpr std::array<int, 16> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

Box Box::Uniform(std::size_t dim, double low, double high) {
  const auto d = static_cast<Eigen::Index>(dim);
  return Box{Eigen::VectorXd::Constant(d, low), Eigen::VectorXd::Constant(d, high)};
}

bool Box::Contains(PointRef x, double tolerance) const {
  if (x.size() != low.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double slack = tolerance * std::max(1.0, high[i] - low[i]);
    if (!(x[i] >= low[i] - slack && x[i] <= high[i] + slack)) return false;
  }
  return true;
}

GridSpec GridSpec::Default(std::size_t dim) {
  GridSpec spec;
  if (dim > 2) spec.kind = GridKind::kHalton;
  return spec;
}

std::string GridSpec::Describe() const {
  std::ostringstream out;
  if (kind == GridKind::kLattice) {
    out << "lattice(" << per_axis << "/axis)";
  } else {
    out << "scrambled_halton(" << count << ", seed=" << seed << ")";
  }
  return out.str();
}

PointSet LatticeGrid(const Box& box, std::size_t per_axis) {
  if (per_axis == 0) throw ConfigError("grid: lattice needs at least one point per axis");
  const Eigen::Index d = box.dim();
  Eigen::Index total = 1;
  for (Eigen::Index i = 0; i < d; ++i) total *= static_cast<Eigen::Index>(per_axis);
  PointSet grid(d, total);
  std::vector<std::size_t> digits(static_cast<std::size_t>(d), 0);
  for (Eigen::Index p = 0; p < total; ++p) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double frac = per_axis == 1 ? 0.5
                                        : static_cast<double>(digits[static_cast<std::size_t>(i)]) /
                                              static_cast<double>(per_axis - 1);
      grid(i, p) = box.low[i] + frac * (box.high[i] - box.low[i]);
    }
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < per_axis) break;
      digits[i] = 0;
    }
  }
  return grid;
}

PointSet ScrambledHalton(const Box& box, std::size_t count, std::uint64_t seed) {
  const Eigen::Index d = box.dim();
  if (d > static_cast<Eigen::Index>(kPrimes.size())) {
    throw ConfigError("grid: scrambled Halton supports at most 16 dimensions");
  }
  Rng rng(mix_seed(seed, 0x4a17));
  PointSet grid(d, static_cast<Eigen::Index>(count));
  for (Eigen::Index i = 0; i < d; ++i) {
    const int base = kPrimes[static_cast<std::size_t>(i)];
    std::vector<int> perm(static_cast<std::size_t>(base));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    // Enough digits that the permuted tail is below double resolution.
    int depth = 0;
    for (double w = 1.0; w > 1e-17; w /= base) ++depth;
    for (std::size_t p = 0; p < count; ++p) {
      std::size_t index = p + 1;
      double value = 0.0;
      double weight = 1.0 / base;
      for (int k = 0; k < depth; ++k) {
        value += perm[index % static_cast<std::size_t>(base)] * weight;
        index /= static_cast<std::size_t>(base);
        weight /= base;
      }
      value = std::min(value, 1.0);
      grid(i, static_cast<Eigen::Index>(p)) = box.low[i] + value * (box.high[i] - box.low[i]);
    }
  }
  return grid;
}

PointSet MakeGrid(const Box& box, const GridSpec& spec) {
  if (spec.kind == GridKind::kLattice) return LatticeGrid(box, spec.per_axis);
  return ScrambledHalton(box, spec.count, spec.seed);
}

}  // namespace gpopt
