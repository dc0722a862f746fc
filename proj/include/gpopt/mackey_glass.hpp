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

#ifndef GPOPT_MACKEY_GLASS_HPP_
#define GPOPT_MACKEY_GLASS_HPP_

#include <Eigen/Core>

#include "gpopt/kernel.hpp"

namespace gpopt {

// dx/dt = a x(t - tau) / (1 + x(t - tau)^n) - b x(t), with x(t) = x0 for t <= 0.
struct MackeyGlassParams {
  double a = 0.2;
  double b = 0.1;
  double tau = 17.0;
  double n = 10.0;
  double x0 = 1.0;
  double horizon = 100.0;
};

inline constexpr double kMackeyGlassStep = 0.1;
// Score reported for a trajectory that blew up.
inline constexpr double kMackeyGlassFailureValue = -1e3;

// Affine map from [0, 1]^6 to a in [0.1, 0.4], b in [0.05, 0.2],
// tau in [5, 35], n in [7, 14], x0 in [0.5, 1.5], horizon in [50, 300].
MackeyGlassParams MapMackeyGlassParams(PointRef unit);

struct MackeyGlassResult {
  double value = 0.0;
  bool finite = true;
};

// Classic RK4 with a fixed step; delayed values are linearly interpolated on
// the stored trajectory. tau must be 0 or at least one step.
MackeyGlassResult IntegrateMackeyGlass(const MackeyGlassParams& params, double step = kMackeyGlassStep);

// x(horizon) for unit-box parameters; non-finite trajectories score
// kMackeyGlassFailureValue and are logged.
double MackeyGlass(PointRef unit);

}  // namespace gpopt

#endif  // GPOPT_MACKEY_GLASS_HPP_
