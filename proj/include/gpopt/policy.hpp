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

#ifndef GPOPT_POLICY_HPP_
#define GPOPT_POLICY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "gpopt/info.hpp"
#include "gpopt/kernel.hpp"
#include "gpopt/posterior.hpp"

namespace gpopt {

enum class PolicyKind { kGpMi, kGpUcb, kFixedPhi, kExpectedImprovement };

std::string_view PolicyName(PolicyKind kind);
// Accepts gp_mi, gp_ucb, fixed_phi, ei. Throws ConfigError otherwise.
PolicyKind ParsePolicyKind(std::string_view name);

// alpha = log(2 / delta), delta in (0, 1).
double AlphaFromDelta(double delta);

// GP-MI exploration bonus sqrt(alpha) (sqrt(var + gamma_prev) - sqrt(gamma_prev)).
double PhiGpMi(double variance, double gamma_hat_prev, double alpha);

// beta_t = 2 log(grid_size t^2 pi^2 / (6 delta)).
double UcbBeta(std::size_t t, double delta, std::size_t grid_size);
// sqrt(beta_t var).
double PhiUcb(double variance, std::size_t t, double delta, std::size_t grid_size);

// sqrt(alpha) / 2 * var; constant exploration weight.
double PhiFixed(double variance, double alpha);

// E[max(N(mean, sd^2) - incumbent, 0)].
double ExpectedImprovement(double mean, double sd, double incumbent);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::kGpMi;
  double delta = 1e-6;
};

// One acquisition strategy of the generic scheme x_t = argmax mu_t + phi_t over
// a finite candidate set (EI scores by expected improvement instead).
//
// A policy is stateful and owned by a single optimization loop: Select and
// Observe must alternate.
class Policy {
 public:
  Policy(PolicyConfig config, PointSet candidates);

  // Argmax of the score given the posterior over the candidates; ties go to
  // the lowest index. Throws NumericalError on a non-finite score.
  std::size_t Select(const Eigen::VectorXd& mean, const Eigen::VectorXd& variance);
  // Same, evaluating the posterior at every candidate.
  Point SelectNext(const PosteriorState& posterior);

  // Records y at the pending query. gamma_hat grows by the variance at the
  // query taken before the update. Throws UsageError without a pending query.
  void Observe(std::size_t index, double y);
  // Checks x against the pending query and returns the extended posterior.
  PosteriorState Observe(PointRef x, double y, const PosteriorState& posterior);

  // Initialization data only move the EI incumbent.
  void NoteInitialObservation(double y);

  // phi_t at the current step for a candidate with posterior variance var.
  double Exploration(double variance) const;
  // Selection score of a candidate.
  double Score(double mean, double variance) const;

  PolicyKind kind() const { return config_.kind; }
  double delta() const { return config_.delta; }
  double alpha() const { return alpha_; }
  // Index t of the next selection, starting at 1.
  std::size_t step() const { return step_; }
  double gamma_hat() const { return info_.gamma_hat(); }
  const InfoAccumulator& info() const { return info_; }
  double incumbent() const { return incumbent_; }
  const PointSet& candidates() const { return candidates_; }
  std::optional<std::size_t> pending() const { return pending_; }
  // Variance and bonus at the pending query, as seen at selection time.
  double pending_variance() const { return pending_variance_; }
  double pending_exploration() const { return pending_exploration_; }

 private:
  double EffectiveIncumbent(const Eigen::VectorXd& mean) const;

  PolicyConfig config_;
  PointSet candidates_;
  double alpha_ = 0.0;
  std::size_t step_ = 1;
  InfoAccumulator info_;
  double incumbent_;
  std::optional<std::size_t> pending_;
  double pending_variance_ = 0.0;
  double pending_exploration_ = 0.0;
  double selection_incumbent_ = 0.0;
};

}  // namespace gpopt

#endif  // GPOPT_POLICY_HPP_
