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

#ifndef GPOPT_GRID_HPP_
#define GPOPT_GRID_HPP_

#include <cstddef>
#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "gpopt/kernel.hpp"

namespace gpopt {

// Axis-aligned box [low, high].
struct Box {
  Eigen::VectorXd low;
  Eigen::VectorXd high;

  static Box Uniform(std::size_t dim, double low, double high);
  Eigen::Index dim() const { return low.size(); }
  bool Contains(PointRef x, double tolerance = 1e-12) const;
  double Diameter() const { return (high - low).norm(); }
};

enum class GridKind { kLattice, kHalton };

struct GridSpec {
  GridKind kind = GridKind::kLattice;
  std::size_t per_axis = 101;  // lattice
  std::size_t count = 4096;    // scrambled Halton
  std::uint64_t seed = 0;      // Halton scrambling

  // 101 points per axis up to d = 2, 4096 scrambled Halton points above.
  static GridSpec Default(std::size_t dim);
  std::string Describe() const;
};

// Full tensor lattice including both endpoints of every axis. The first axis
// varies fastest.
PointSet LatticeGrid(const Box& box, std::size_t per_axis);

// Halton sequence with a seeded random digit permutation per dimension,
// mapped into the box.
PointSet ScrambledHalton(const Box& box, std::size_t count, std::uint64_t seed);

PointSet MakeGrid(const Box& box, const GridSpec& spec);

}  // namespace gpopt

#endif  // GPOPT_GRID_HPP_
