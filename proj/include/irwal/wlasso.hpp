// Copyright 2026 The irwal Authors.
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

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "irwal/design.hpp"

namespace irwal {

// Penalty of the weighted adaptive lasso. `weights` holds the per-column
// penalty weights v: 0 for the intercept, 1 when tau == 0, and
// |beta_init[j]|^-tau otherwise (+inf when beta_init[j] == 0, which freezes
// the column at zero).
struct PenaltySpec {
  double lambda = 0.0;
  double tau = 0.0;
  std::optional<Eigen::VectorXd> beta_init;
  Eigen::VectorXd weights;

  static PenaltySpec make(const Design& design, double lambda, double tau = 0.0,
                          std::optional<Eigen::VectorXd> beta_init = std::nullopt);

  PenaltySpec with_lambda(double value) const;
  bool is_frozen(Index j) const;
  bool is_penalized(Index j) const;
};

struct SolverOptions {
  double tol = 1e-7;       // max absolute coefficient change over a full sweep
  int max_sweeps = 10000;  // full and active-set sweeps combined
  bool record_objective = false;
};

struct WeightedLassoFit {
  Eigen::VectorXd beta;  // standardized scale
  std::vector<Index> active_set;
  double lambda = 0.0;
  double objective = 0.0;
  int n_iters = 0;
  bool converged = false;
  double kkt_max_violation = 0.0;
  std::vector<double> objective_trace;  // one entry per sweep when requested
};

// sum_t w_t^2 (y_t - X_t beta)^2 + lambda * sum_j v_j |beta_j|
double weighted_lasso_objective(const Design& design, const Eigen::VectorXd& w,
                                const PenaltySpec& pen, const Eigen::VectorXd& beta);

// Cyclic coordinate descent with active-set cycling. Running out of sweeps
// is not an error: the fit comes back with converged == false.
WeightedLassoFit solve_weighted_lasso(const Design& design, const Eigen::VectorXd& w,
                                      const PenaltySpec& pen,
                                      const Eigen::VectorXd* warm_start = nullptr,
                                      const SolverOptions& options = {});

// Largest deviation from the first-order conditions
//   X_j' W^2 (y - X beta) = (lambda/2) v_j sign(beta_j)   if beta_j != 0
//   |X_j' W^2 (y - X beta)| <= (lambda/2) v_j               if beta_j == 0
double check_kkt(const Design& design, const Eigen::VectorXd& w, const PenaltySpec& pen,
                 const Eigen::VectorXd& beta);

// Smallest lambda at which every penalized coefficient is zero.
double critical_lambda(const Design& design, const Eigen::VectorXd& w, const PenaltySpec& pen);

// One fit per lambda (strictly descending), each warm-started from the last.
std::vector<WeightedLassoFit> lasso_path(const Design& design, const Eigen::VectorXd& w,
                                         const PenaltySpec& pen_base,
                                         const std::vector<double>& lambdas,
                                         const SolverOptions& options = {},
                                         const Eigen::VectorXd* warm_start = nullptr);

// 2^g for g equidistant from `from_exp` to `to_exp` (inclusive), in the
// order given; the default is the descending 100-point grid 2^-4 .. 2^-18.
std::vector<double> exponential_lambda_grid(double from_exp = -4.0, double to_exp = -18.0,
                                            int length = 100);

}  // namespace irwal
