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

#include "gpopt/kernel.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>

#include "gpopt/errors.hpp"

namespace gpopt {
namespace {

double SquaredDistance(PointRef a, PointRef b) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

void CheckDims(PointRef a, PointRef b) {
  if (a.size() != b.size()) {
    std::ostringstream msg;
    msg << "kernel: dimension mismatch (" << a.size() << " vs " << b.size() << ")";
    throw InputError(msg.str());
  }
}

bool IsClosedFormNu(double nu) { return nu == 0.5 || nu == 1.5 || nu == 2.5; }

// 2^(1-nu)/Gamma(nu) * z^nu * K_nu(z) with z = sqrt(2 nu) r / l.
double MaternBessel(double nu, double scaled) {
  if (scaled < 1e-8) return 1.0;
  if (scaled > 700.0) return 0.0;
  const double log_coeff = (1.0 - nu) * std::log(2.0) - std::lgamma(nu);
  return std::exp(log_coeff + nu * std::log(scaled)) * std::cyl_bessel_k(nu, scaled);
}

}  // namespace

Kernel Kernel::SquaredExponential(double length_scale, double output_scale) {
  Kernel k;
  k.family = KernelFamily::kSquaredExponential;
  k.length_scale = length_scale;
  k.output_scale = output_scale;
  return k;
}

Kernel Kernel::Matern(double nu, double length_scale, double output_scale) {
  Kernel k;
  k.family = KernelFamily::kMatern;
  k.matern_nu = nu;
  k.length_scale = length_scale;
  k.output_scale = output_scale;
  return k;
}

Kernel Kernel::Linear(double length_scale, double output_scale) {
  Kernel k;
  k.family = KernelFamily::kLinear;
  k.length_scale = length_scale;
  k.output_scale = output_scale;
  return k;
}

void Kernel::Validate() const {
  if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
    throw ConfigError("kernel: length scale must be positive and finite");
  }
  if (!(output_scale > 0.0) || !std::isfinite(output_scale)) {
    throw ConfigError("kernel: output scale must be positive and finite");
  }
  if (family == KernelFamily::kMatern && (!(matern_nu > 0.0) || !std::isfinite(matern_nu))) {
    throw ConfigError("kernel: Matern smoothness must be positive and finite");
  }
}

double Kernel::FromSquaredDistance(double squared_distance) const {
  const double r = std::sqrt(squared_distance);
  switch (family) {
    case KernelFamily::kSquaredExponential:
      return output_scale * std::exp(-squared_distance / (2.0 * length_scale * length_scale));
    case KernelFamily::kMatern: {
      if (matern_nu == 0.5) return output_scale * std::exp(-r / length_scale);
      if (matern_nu == 1.5) {
        const double s = std::sqrt(3.0) * r / length_scale;
        return output_scale * (1.0 + s) * std::exp(-s);
      }
      if (matern_nu == 2.5) {
        const double s = std::sqrt(5.0) * r / length_scale;
        return output_scale * (1.0 + s + s * s / 3.0) * std::exp(-s);
      }
      return output_scale * MaternBessel(matern_nu, std::sqrt(2.0 * matern_nu) * r / length_scale);
    }
    case KernelFamily::kLinear:
      break;
  }
  throw UsageError("kernel: linear kernel has no stationary profile");
}

double Kernel::operator()(PointRef a, PointRef b) const {
  CheckDims(a, b);
  if (family == KernelFamily::kLinear) {
    return output_scale * a.dot(b) / (length_scale * length_scale);
  }
  return FromSquaredDistance(SquaredDistance(a, b));
}

std::string Kernel::Describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (family) {
    case KernelFamily::kSquaredExponential: out << "rbf"; break;
    case KernelFamily::kMatern: out << "matern(nu=" << matern_nu << ")"; break;
    case KernelFamily::kLinear: out << "linear"; break;
  }
  out << " l=" << length_scale << " s=" << output_scale;
  return out.str();
}

double KernelEval(const Kernel& kernel, PointRef a, PointRef b) {
  kernel.Validate();
  return kernel(a, b);
}

Eigen::MatrixXd Gram(const Kernel& kernel, const PointSet& a, const PointSet& b) {
  if (a.cols() > 0 && b.cols() > 0 && a.rows() != b.rows()) {
    throw InputError("gram: dimension mismatch between point sets");
  }
  Eigen::MatrixXd out(a.cols(), b.cols());
  const bool cached = kernel.family == KernelFamily::kMatern && !IsClosedFormNu(kernel.matern_nu);
  std::unordered_map<double, double> memo;
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
      if (!cached) {
        out(i, j) = kernel(a.col(i), b.col(j));
        continue;
      }
      const double r2 = SquaredDistance(a.col(i), b.col(j));
      auto [it, inserted] = memo.try_emplace(r2, 0.0);
      if (inserted) it->second = kernel.FromSquaredDistance(r2);
      out(i, j) = it->second;
    }
  }
  return out;
}

Eigen::MatrixXd Gram(const Kernel& kernel, const PointSet& a) {
  const Eigen::Index n = a.cols();
  Eigen::MatrixXd out(n, n);
  const bool cached = kernel.family == KernelFamily::kMatern && !IsClosedFormNu(kernel.matern_nu);
  std::unordered_map<double, double> memo;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      double value;
      if (cached) {
        const double r2 = SquaredDistance(a.col(i), a.col(j));
        auto [it, inserted] = memo.try_emplace(r2, 0.0);
        if (inserted) it->second = kernel.FromSquaredDistance(r2);
        value = it->second;
      } else {
        value = kernel(a.col(i), a.col(j));
      }
      out(i, j) = value;
      out(j, i) = value;
    }
  }
  return out;
}

Eigen::VectorXd CovarianceVector(const Kernel& kernel, const PointSet& points, PointRef x) {
  Eigen::VectorXd out(points.cols());
  for (Eigen::Index i = 0; i < points.cols(); ++i) out[i] = kernel(points.col(i), x);
  return out;
}

}  // namespace gpopt
