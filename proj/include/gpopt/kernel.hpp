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

#ifndef GPOPT_KERNEL_HPP_
#define GPOPT_KERNEL_HPP_

#include <string>

#include <Eigen/Core>

namespace gpopt {

// A point of the input space.
using Point = Eigen::VectorXd;
// A set of points stored column-wise: d rows, one column per point.
using PointSet = Eigen::MatrixXd;
using PointRef = Eigen::Ref<const Eigen::VectorXd>;

enum class KernelFamily { kSquaredExponential, kMatern, kLinear };

// Covariance function of the GP prior.
//
// Stationary families are normalized so that k(x, x) = output_scale. The
// linear family is k(x, x') = output_scale * <x, x'> / length_scale^2 and only
// respects k(x, x) <= output_scale inside the ball of radius length_scale.
struct Kernel {
  KernelFamily family = KernelFamily::kSquaredExponential;
  double length_scale = 1.0;
  // Smoothness; only read for kMatern. 0.5, 1.5 and 2.5 use closed forms,
  // anything else goes through the modified Bessel function.
  double matern_nu = 2.5;
  double output_scale = 1.0;

  static Kernel SquaredExponential(double length_scale, double output_scale = 1.0);
  static Kernel Matern(double nu, double length_scale, double output_scale = 1.0);
  static Kernel Linear(double length_scale, double output_scale = 1.0);

  // Throws ConfigError on non-positive hyperparameters.
  void Validate() const;

  bool IsStationary() const { return family != KernelFamily::kLinear; }

  // k(a, b). Throws InputError on dimension mismatch.
  double operator()(PointRef a, PointRef b) const;

  // Stationary profile k(r) as a function of the squared distance r^2.
  double FromSquaredDistance(double squared_distance) const;

  std::string Describe() const;
};

// Free-function form of Kernel::operator(); validates the hyperparameters.
double KernelEval(const Kernel& kernel, PointRef a, PointRef b);

// Cross-covariance matrix [k(a_i, b_j)].
Eigen::MatrixXd Gram(const Kernel& kernel, const PointSet& a, const PointSet& b);

// Symmetric Gram matrix [k(a_i, a_j)]; the two triangles are bitwise equal.
Eigen::MatrixXd Gram(const Kernel& kernel, const PointSet& a);

// Vector [k(p_i, x)] over the columns of points.
Eigen::VectorXd CovarianceVector(const Kernel& kernel, const PointSet& points, PointRef x);

}  // namespace gpopt

#endif  // GPOPT_KERNEL_HPP_
