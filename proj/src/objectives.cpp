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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <utility>

#include "gpopt/errors.hpp"
#include "gpopt/mackey_glass.hpp"
#include "gpopt/sampling.hpp"

namespace gpopt {
namespace {

void RequireInBox(const Box& box, PointRef x, const std::string& name) {
  if (!box.Contains(x)) {
    std::ostringstream msg;
    msg << name << ": point (" << x.transpose() << ") outside the domain";
    throw InputError(msg.str());
  }
}

Eigen::VectorXd EvaluateOnGrid(const PointSet& grid, const std::function<double(PointRef)>& f) {
  Eigen::VectorXd values(grid.cols());
  for (Eigen::Index i = 0; i < grid.cols(); ++i) values[i] = f(grid.col(i));
  return values;
}

Objective FromFunction(std::string name, Box box, const GridSpec& spec,
                       std::function<double(PointRef)> raw, double noise_fraction) {
  PointSet grid = MakeGrid(box, spec);
  const Eigen::VectorXd raw_values = EvaluateOnGrid(grid, raw);
  Objective obj = ObjectiveFromGrid(std::move(name), std::move(box), std::move(grid), raw_values,
                                    noise_fraction, true);
  obj.raw = std::move(raw);
  obj.notes.push_back("grid=" + spec.Describe());
  return obj;
}

// Generated-GP samplers are expensive to factorize and immutable, so they are
// shared across calls.
const GpSampler& GeneratedGpSampler(std::size_t dim, const PointSet& grid) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GpSampler>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[dim];
  if (!slot) slot = std::make_unique<GpSampler>(GeneratedGpKernel(dim), grid);
  return *slot;
}

double Bilinear(const Eigen::MatrixXd& table, double u, double v) {
  const Eigen::Index n = table.rows();
  const double fu = std::clamp(u, 0.0, 1.0) * static_cast<double>(n - 1);
  const double fv = std::clamp(v, 0.0, 1.0) * static_cast<double>(n - 1);
  const Eigen::Index i = std::min<Eigen::Index>(static_cast<Eigen::Index>(fu), n - 2);
  const Eigen::Index j = std::min<Eigen::Index>(static_cast<Eigen::Index>(fv), n - 2);
  const double wu = fu - static_cast<double>(i);
  const double wv = fv - static_cast<double>(j);
  return (1 - wu) * (1 - wv) * table(i, j) + wu * (1 - wv) * table(i + 1, j) +
         (1 - wu) * wv * table(i, j + 1) + wu * wv * table(i + 1, j + 1);
}

}  // namespace

double Objective::Eval(PointRef x) const {
  RequireInBox(box, x, name);
  if (raw) return (raw(x) - shift) / scale;
  Eigen::Index best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < grid.cols(); ++i) {
    const double dist = (grid.col(i) - x).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  if (best_dist > 1e-18 * std::max(1.0, box.Diameter() * box.Diameter())) {
    throw InputError(name + ": grid-backed objective queried off its grid");
  }
  return values[best];
}

Objective ObjectiveFromGrid(std::string name, Box box, PointSet grid, const Eigen::VectorXd& raw_values,
                            double noise_fraction, bool standardize) {
  if (grid.cols() == 0 || grid.cols() != raw_values.size()) {
    throw InputError("objective: grid and values disagree in size");
  }
  Objective obj;
  obj.name = std::move(name);
  obj.box = std::move(box);
  obj.grid = std::move(grid);
  const double mean = raw_values.mean();
  const double sd = std::sqrt((raw_values.array() - mean).square().mean());
  if (standardize) {
    if (!(sd > 0.0)) throw ConfigError(obj.name + ": constant objective cannot be standardized");
    obj.shift = mean;
    obj.scale = sd;
  }
  obj.values = (raw_values.array() - obj.shift) / obj.scale;
  obj.noise_std = noise_fraction * (standardize ? 1.0 : sd);
  Eigen::Index arg = 0;
  obj.max_value = obj.values.maxCoeff(&arg);
  obj.max_index = static_cast<std::size_t>(arg);
  obj.max_point = obj.grid.col(arg);
  return obj;
}

double EvaluateNoisy(const Objective& objective, PointRef x, Rng& rng) {
  const double f = objective.Eval(x);
  if (objective.noise_std == 0.0) return f;
  return f + objective.noise_std * standard_normal(rng);
}

double EvaluateNoisy(const Objective& objective, std::size_t index, Rng& rng) {
  const double f = objective.values[static_cast<Eigen::Index>(index)];
  if (objective.noise_std == 0.0) return f;
  return f + objective.noise_std * standard_normal(rng);
}

Box BraninBox() { return Box{Eigen::Vector2d(-5.0, 0.0), Eigen::Vector2d(10.0, 15.0)}; }
Box GoldsteinPriceBox() { return Box::Uniform(2, -2.0, 2.0); }
Box HimmelblauBox() { return Box::Uniform(2, -5.0, 5.0); }

double Branin(PointRef x) {
  RequireInBox(BraninBox(), x, "branin");
  constexpr double pi = std::numbers::pi;
  const double b = 5.1 / (4.0 * pi * pi);
  const double c = 5.0 / pi;
  const double t = 1.0 / (8.0 * pi);
  const double u = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
  return -(u * u + 10.0 * (1.0 - t) * std::cos(x[0]) + 10.0);
}

double GoldsteinPriceRaw(PointRef x) {
  RequireInBox(GoldsteinPriceBox(), x, "goldstein_price");
  const double a = x[0];
  const double b = x[1];
  const double s = a + b + 1.0;
  const double left = 1.0 + s * s * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
  const double d = 2.0 * a - 3.0 * b;
  const double right =
      30.0 + d * d * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
  return left * right;
}

double GoldsteinPrice(PointRef x) { return -std::log(GoldsteinPriceRaw(x)); }

double HimmelblauTilted(PointRef x, double tilt) {
  RequireInBox(HimmelblauBox(), x, "himmelblau");
  const double u = x[0] * x[0] + x[1] - 11.0;
  const double v = x[0] + x[1] * x[1] - 7.0;
  return -(u * u + v * v + tilt * (x[0] + x[1]));
}

Objective MakeBranin(const GridSpec& grid) {
  return FromFunction("branin", BraninBox(), grid, [](PointRef x) { return Branin(x); }, 0.0);
}

Objective MakeGoldsteinPrice(const GridSpec& grid) {
  Objective obj = FromFunction("goldstein_price", GoldsteinPriceBox(), grid,
                               [](PointRef x) { return GoldsteinPrice(x); }, 0.0);
  obj.notes.push_back("goldstein_price: optimized as -log(value)");
  return obj;
}

Objective MakeHimmelblau(double tilt, const GridSpec& grid) {
  Objective obj = FromFunction("himmelblau", HimmelblauBox(), grid,
                               [tilt](PointRef x) { return HimmelblauTilted(x, tilt); }, 0.0);
  std::ostringstream note;
  note.precision(17);
  note << "himmelblau: tilt " << tilt << " * (x + y) on [-5, 5]^2 (reconstructed)";
  obj.notes.push_back(note.str());
  return obj;
}

MixtureSpec MixtureSpec::Default() {
  MixtureSpec spec;
  spec.bumps = {
      {0.80, 0.25, 1.00, 0.05},  // thin, highest
      {0.30, 0.65, 0.80, 0.18},  // broad
      {0.75, 0.80, 0.60, 0.10},
  };
  return spec;
}

Objective MakeGaussianMixture(std::uint64_t seed, const MixtureSpec& spec) {
  const Box box = Box::Uniform(2, 0.0, 1.0);
  auto table = std::make_shared<Eigen::MatrixXd>(
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(spec.perturbation_per_axis),
                            static_cast<Eigen::Index>(spec.perturbation_per_axis)));
  if (spec.perturbation_amplitude != 0.0) {
    if (spec.perturbation_per_axis < 2) throw ConfigError("gaussian_mixture: perturbation lattice too small");
    const PointSet coarse = LatticeGrid(box, spec.perturbation_per_axis);
    const Kernel kernel = Kernel::Matern(spec.perturbation_nu, spec.perturbation_length_scale);
    const Eigen::VectorXd draw = SampleGp(kernel, coarse, mix_seed(seed, 0x6d6978));
    // The lattice orders the first axis fastest.
    for (Eigen::Index k = 0; k < draw.size(); ++k) {
      (*table)(k % table->rows(), k / table->rows()) = spec.perturbation_amplitude * draw[k];
    }
  }
  const std::vector<GaussianBump> bumps = spec.bumps;
  auto raw = [bumps, table, box](PointRef x) {
    RequireInBox(box, x, "gaussian_mixture");
    double value = Bilinear(*table, x[0], x[1]);
    for (const auto& bump : bumps) {
      const double dx = x[0] - bump.cx;
      const double dy = x[1] - bump.cy;
      value += bump.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * bump.width * bump.width));
    }
    return value;
  };
  Objective obj = FromFunction("gaussian_mixture", box, spec.grid, raw, spec.noise_fraction);
  std::ostringstream note;
  note << "gaussian_mixture: seed " << seed << ", " << bumps.size()
       << " bumps, GP perturbation on a " << spec.perturbation_per_axis
       << "-per-axis lattice, bilinear (reconstructed)";
  obj.notes.push_back(note.str());
  return obj;
}

Kernel GeneratedGpKernel(std::size_t dim) {
  if (dim == 2) return Kernel::Matern(3.0, 1.0);
  if (dim == 4) return Kernel::Matern(3.0, 16.0);
  throw ConfigError("generated_gp: dimension must be 2 or 4");
}

Objective MakeGeneratedGp(std::size_t dim, std::uint64_t seed) {
  const Kernel kernel = GeneratedGpKernel(dim);
  const Box box = dim == 2 ? Box::Uniform(2, 0.0, 10.0) : Box::Uniform(4, 0.0, 40.0);
  PointSet grid = LatticeGrid(box, dim == 2 ? 64 : 8);
  const GpSampler& sampler = GeneratedGpSampler(dim, grid);
  const Eigen::VectorXd draw = sampler.Draw(mix_seed(seed, 0x677067));
  Objective obj = ObjectiveFromGrid(dim == 2 ? "generated_gp2" : "generated_gp4", box, std::move(grid),
                                    draw, 0.01, true);
  std::ostringstream note;
  note << "generated_gp: seed " << seed << ", kernel " << kernel.Describe() << ", lattice "
       << (dim == 2 ? "64^2 over [0,10]^2" : "8^4 over [0,40]^4");
  obj.notes.push_back(note.str());
  return obj;
}

Objective MakeMackeyGlass(const GridSpec& grid) {
  Objective obj = FromFunction("mackey_glass", Box::Uniform(6, 0.0, 1.0), grid,
                               [](PointRef x) { return MackeyGlass(x); }, 0.0);
  obj.notes.push_back(
      "mackey_glass: a[0.1,0.4] b[0.05,0.2] tau[5,35] n[7,14] x0[0.5,1.5] horizon[50,300], RK4 step 0.1, cubic Hermite delay interpolation "
      "(reconstructed)");
  return obj;
}

Objective MakeObjective(const std::string& name, std::uint64_t seed, double himmelblau_tilt,
                        const std::optional<GridSpec>& grid) {
  const GridSpec grid2 = grid.value_or(GridSpec::Default(2));
  if (name == "branin") return MakeBranin(grid2);
  if (name == "goldstein_price") return MakeGoldsteinPrice(grid2);
  if (name == "himmelblau") return MakeHimmelblau(himmelblau_tilt, grid2);
  if (name == "gaussian_mixture") {
    MixtureSpec spec = MixtureSpec::Default();
    spec.grid = grid2;
    return MakeGaussianMixture(seed, spec);
  }
  if (name == "generated_gp2") return MakeGeneratedGp(2, seed);
  if (name == "generated_gp4") return MakeGeneratedGp(4, seed);
  if (name == "mackey_glass") return MakeMackeyGlass(grid.value_or(GridSpec::Default(6)));
  throw ConfigError("unknown task '" + name + "'");
}

const std::vector<std::string>& PaperTaskNames() {
  static const std::vector<std::string> names = {"generated_gp2", "generated_gp4", "gaussian_mixture",
                                                 "himmelblau",    "branin",        "goldstein_price",
                                                 "mackey_glass"};
  return names;
}

}  // namespace gpopt
