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

#include "gpopt/mackey_glass.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "gpopt/errors.hpp"
#include "gpopt/log.hpp"

namespace gpopt {

MackeyGlassParams MapMackeyGlassParams(PointRef unit) {
  if (unit.size() != 6) throw InputError("mackey_glass: expects 6 parameters");
  for (Eigen::Index i = 0; i < 6; ++i) {
    if (!(unit[i] >= 0.0 && unit[i] <= 1.0)) throw InputError("mackey_glass: parameter outside [0, 1]");
  }
  auto lerp = [](double lo, double hi, double u) { return lo + u * (hi - lo); };
  MackeyGlassParams p;
  p.a = lerp(0.1, 0.4, unit[0]);
  p.b = lerp(0.05, 0.2, unit[1]);
  p.tau = lerp(5.0, 35.0, unit[2]);
  p.n = lerp(7.0, 14.0, unit[3]);
  p.x0 = lerp(0.5, 1.5, unit[4]);
  p.horizon = lerp(50.0, 300.0, unit[5]);
  return p;
}

MackeyGlassResult IntegrateMackeyGlass(const MackeyGlassParams& p, double step) {
  if (!(step > 0.0)) throw ConfigError("mackey_glass: step must be positive");
  if (p.tau != 0.0 && p.tau < step) {
    throw ConfigError("mackey_glass: delay must be zero or at least one integration step");
  }
  // Trajectory and slope at every grid node k * step; the delayed value is
  // read back by cubic Hermite interpolation.
  std::vector<double> history{p.x0};
  std::vector<double> slope;

  auto delayed = [&](double t, double current) {
    if (p.tau == 0.0) return current;
    const double s = t - p.tau;
    if (s <= 0.0) return p.x0;
    const double pos = s / step;
    auto k = static_cast<std::size_t>(pos);
    if (k + 1 >= history.size() || k + 1 >= slope.size()) {
      // Only reachable within the final partial step.
      return history.back();
    }
    const double w = pos - static_cast<double>(k);
    const double w2 = w * w;
    const double w3 = w2 * w;
    return (2.0 * w3 - 3.0 * w2 + 1.0) * history[k] + (w3 - 2.0 * w2 + w) * step * slope[k] +
           (-2.0 * w3 + 3.0 * w2) * history[k + 1] + (w3 - w2) * step * slope[k + 1];
  };
  auto rhs = [&](double t, double x) {
    const double d = delayed(t, x);
    return p.a * d / (1.0 + std::pow(d, p.n)) - p.b * x;
  };
  auto rk4 = [&](double t, double x, double h) {
    const double k1 = rhs(t, x);
    const double k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
    const double k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
    const double k4 = rhs(t + h, x + h * k3);
    return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  const auto full_steps = static_cast<std::size_t>(std::floor(p.horizon / step + 1e-9));
  history.reserve(full_steps + 1);
  slope.reserve(full_steps + 1);
  slope.push_back(rhs(0.0, p.x0));
  double x = p.x0;
  // The constant history makes the second derivative jump at t = tau and
  // the third at 2 tau; steps straddling those times are split there so RK4
  // keeps its order.
  auto advance = [&](double t, double x_now, double h) {
    for (double kink : {p.tau, 2.0 * p.tau}) {
      if (p.tau > 0.0 && kink > t + 1e-12 && kink < t + h - 1e-12) {
        const double first = kink - t;
        x_now = rk4(t, x_now, first);
        return rk4(kink, x_now, h - first);
      }
    }
    return rk4(t, x_now, h);
  };
  for (std::size_t k = 0; k < full_steps; ++k) {
    x = advance(static_cast<double>(k) * step, x, step);
    history.push_back(x);
    slope.push_back(rhs(static_cast<double>(k + 1) * step, x));
  }
  const double rest = p.horizon - static_cast<double>(full_steps) * step;
  if (rest > 1e-12) x = advance(static_cast<double>(full_steps) * step, x, rest);
  return {x, std::isfinite(x)};
}

double MackeyGlass(PointRef unit) {
  const MackeyGlassResult result = IntegrateMackeyGlass(MapMackeyGlassParams(unit));
  if (!result.finite) {
    std::ostringstream msg;
    msg << "mackey_glass: non-finite trajectory at parameters " << unit.transpose();
    Log(LogLevel::kWarning, msg.str());
    return kMackeyGlassFailureValue;
  }
  return result.value;
}

}  // namespace gpopt
