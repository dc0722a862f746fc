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

#include "gpopt/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "gpopt/errors.hpp"
#include "gpopt/log.hpp"

namespace gpopt {

double ConditionEstimate(const Eigen::MatrixXd& symmetric) {
  if (symmetric.rows() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  if (!(ev[0] > 0.0)) return std::numeric_limits<double>::infinity();
  return ev[ev.size() - 1] / ev[0];
}

JitteredCholesky CholeskyWithJitter(const Eigen::MatrixXd& matrix, double scale,
                                    bool start_with_jitter) {
  const Eigen::Index n = matrix.rows();
  double jitter = start_with_jitter ? kJitterStart * scale : 0.0;
  for (;;) {
    Eigen::MatrixXd shifted = matrix;
    shifted.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success && llt.matrixLLT().diagonal().allFinite() &&
        (n == 0 || llt.matrixLLT().diagonal().minCoeff() > 0.0)) {
      if (jitter > (start_with_jitter ? kJitterStart * scale : 0.0)) {
        std::ostringstream msg;
        msg << "cholesky: escalated jitter to " << jitter << " for a " << n << "x" << n << " matrix";
        Log(LogLevel::kInfo, msg.str());
      }
      return {llt.matrixL(), jitter};
    }
    jitter = jitter == 0.0 ? kJitterStart * scale : jitter * 10.0;
    if (jitter > kJitterMax * scale * (1.0 + 1e-9)) {
      std::ostringstream msg;
      msg << "cholesky: factorization failed for a " << n << "x" << n
          << " matrix after jitter escalation to " << kJitterMax * scale
          << "; condition estimate " << ConditionEstimate(matrix);
      throw NumericalError(msg.str());
    }
  }
}

}  // namespace gpopt
