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

#ifndef GPOPT_OBJECTIVES_HPP_
#define GPOPT_OBJECTIVES_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gpopt/grid.hpp"
#include "gpopt/kernel.hpp"
#include "gpopt/random.hpp"

namespace gpopt {

// Black-box benchmark over a box, discretized on a candidate grid.
//
// Values are standardized to zero mean and unit variance over the grid
// (unless built with standardize = false); regret is measured in those units.
// max_value is the largest grid value, so on-grid regret is never negative.
struct Objective {
  std::string name;
  Box box;
  PointSet grid;
  Eigen::VectorXd values;  // f on the grid, standardized
  double noise_std = 0.0;  // in the same units as values
  double max_value = 0.0;
  std::size_t max_index = 0;
  Point max_point;
  // Raw function, when f is defined off the grid. Grid-backed objectives
  // (sampled GPs) leave this empty and only answer at grid points.
  std::function<double(PointRef)> raw;
  double shift = 0.0;  // standardized = (raw - shift) / scale
  double scale = 1.0;
  // Free-form reconstruction notes carried into run manifests.
  std::vector<std::string> notes;

  std::size_t dim() const { return static_cast<std::size_t>(box.dim()); }
  std::size_t size() const { return static_cast<std::size_t>(grid.cols()); }
  // Standardized f(x). Throws InputError outside the box, or off-grid for
  // grid-backed objectives.
  double Eval(PointRef x) const;
  double Regret(std::size_t index) const { return max_value - values[static_cast<Eigen::Index>(index)]; }
  // Raw value range on the grid, in standardized units.
  double ValueRange() const { return max_value - values.minCoeff(); }
};

// Builds an Objective from raw grid values.
Objective ObjectiveFromGrid(std::string name, Box box, PointSet grid, const Eigen::VectorXd& raw_values,
                            double noise_fraction, bool standardize);

// f(x) + noise_std * N(0, 1).
double EvaluateNoisy(const Objective& objective, PointRef x, Rng& rng);
double EvaluateNoisy(const Objective& objective, std::size_t index, Rng& rng);

// --- raw benchmark functions (maximization convention) ---

// Negated Branin-Hoo on [-5, 10] x [0, 15].
double Branin(PointRef x);
// Goldstein-Price as usually written (minimum 3 at (0, -1)), on [-2, 2]^2.
double GoldsteinPriceRaw(PointRef x);
// -log(Goldstein-Price).
double GoldsteinPrice(PointRef x);
// -[(x^2 + y - 11)^2 + (x + y^2 - 7)^2 + tilt (x + y)] on [-5, 5]^2.
double HimmelblauTilted(PointRef x, double tilt = 0.5);

Box BraninBox();
Box GoldsteinPriceBox();
Box HimmelblauBox();

Objective MakeBranin(const GridSpec& grid = GridSpec::Default(2));
Objective MakeGoldsteinPrice(const GridSpec& grid = GridSpec::Default(2));
Objective MakeHimmelblau(double tilt = 0.5, const GridSpec& grid = GridSpec::Default(2));

struct GaussianBump {
  double cx = 0.0;
  double cy = 0.0;
  double amplitude = 1.0;
  double width = 0.1;
};

// Three Gaussian bumps on [0, 1]^2 plus a smooth GP perturbation. The
// perturbation is drawn exactly on a coarse lattice and bilinearly
// interpolated, so f is defined everywhere in the box.
struct MixtureSpec {
  std::vector<GaussianBump> bumps;
  double perturbation_amplitude = 0.05;
  double perturbation_length_scale = 0.15;
  double perturbation_nu = 2.5;
  std::size_t perturbation_per_axis = 41;
  double noise_fraction = 0.01;
  GridSpec grid = GridSpec::Default(2);

  // Thin highest peak, one broad and one medium distractor.
  static MixtureSpec Default();
};

Objective MakeGaussianMixture(std::uint64_t seed, const MixtureSpec& spec = MixtureSpec::Default());

// One Matern(nu = 3) GP draw: d = 2 on a 64x64 lattice over [0, 10]^2 with
// length scale 1; d = 4 on an 8-per-axis lattice over [0, 40]^4 with length
// scale 16. Noise is 1% of the draw's grid standard deviation.
Objective MakeGeneratedGp(std::size_t dim, std::uint64_t seed);
Kernel GeneratedGpKernel(std::size_t dim);

// Mackey-Glass task on [0, 1]^6 discretized by a scrambled Halton set.
Objective MakeMackeyGlass(const GridSpec& grid = GridSpec::Default(6));

// Known task names: branin, goldstein_price, himmelblau, gaussian_mixture,
// generated_gp2, generated_gp4, mackey_glass. The grid override is ignored
// by the generated-GP tasks, whose lattices are part of their definition.
Objective MakeObjective(const std::string& name, std::uint64_t seed, double himmelblau_tilt = 0.5,
                        const std::optional<GridSpec>& grid = std::nullopt);
const std::vector<std::string>& PaperTaskNames();

}  // namespace gpopt

#endif  // GPOPT_OBJECTIVES_HPP_
