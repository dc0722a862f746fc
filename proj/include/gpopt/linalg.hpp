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

#ifndef GPOPT_LINALG_HPP_
#define GPOPT_LINALG_HPP_

#include <Eigen/Core>

namespace gpopt {

// Diagonal jitter schedule, in units of the kernel output scale: start at
// kJitterStart, multiply by 10 on each failed factorization, give up past
// kJitterMax.
inline constexpr double kJitterStart = 1e-10;
inline constexpr double kJitterMax = 1e-6;

struct JitteredCholesky {
  Eigen::MatrixXd lower;  // L with L L^T = matrix + jitter I
  double jitter = 0.0;    // diagonal actually added
};

// Cholesky factor of a symmetric matrix, escalating diagonal jitter on
// failure. When start_with_jitter is false the first attempt adds nothing.
// Throws NumericalError (with a condition estimate) once the schedule is
// exhausted.
JitteredCholesky CholeskyWithJitter(const Eigen::MatrixXd& matrix, double scale,
                                    bool start_with_jitter);

// Ratio of extreme eigenvalues of a symmetric matrix; infinity when the
// smallest is not positive.
double ConditionEstimate(const Eigen::MatrixXd& symmetric);

}  // namespace gpopt

#endif  // GPOPT_LINALG_HPP_
