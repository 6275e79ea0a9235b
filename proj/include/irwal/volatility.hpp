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
#include "irwal/nnls.hpp"

namespace irwal {

// Power-ARCH scale model
//   sigma_t^delta = a0 + sum_j sum_{k in J(target,j)} a_jk |e_{j,t-k}|^delta
//                 [+ sum_j sum_k a-_jk 1{e_{j,t-k} < 0} |e_{j,t-k}|^delta]
// where the bracketed terms are the zero-threshold (TARCH) extension.
struct VolatilitySpec {
  double delta = 1.0;
  LagIndexSets lag_sets;
  bool threshold = false;
  std::optional<double> sigma_floor;  // unset: 1e-4 * rms of the target residuals

  // All (target, source) pairs use lags {1, ..., horizon}.
  static VolatilitySpec with_horizon(Index num_series, int horizon, double delta = 1.0,
                                     bool threshold = false);
  void validate() const;
};

struct VolTerm {
  enum class Kind { Intercept, Absolute, Negative };
  Kind kind = Kind::Intercept;
  int series = -1;
  int lag = 0;
};

// Regression form of the recursion on the residual sample. Row r corresponds
// to time max_lag + r; column order is intercept, all absolute terms by
// (series, lag), then all sign-gated terms when the threshold flag is set.
struct ArchDesign {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<VolTerm> terms;
  int max_lag = 0;
};

ArchDesign build_arch_design(const std::vector<Eigen::VectorXd>& residuals,
                             const VolatilitySpec& spec, Index target);

struct VolatilityFit {
  NnlsSolution alpha_tilde;     // intercept first, order of ArchDesign::terms
  Eigen::VectorXd fitted_sigma;  // normalized: mean((e_t / sigma_t)^2) == 1
  double gamma_hat = 0.0;       // mean |e_t / sigma_t|^delta on the aligned rows
  VolatilitySpec spec;
  std::vector<VolTerm> terms;
  Index target = 0;
  int max_lag = 0;
  double scale = 1.0;        // normalization constant applied to the recursion
  double sigma_floor = 0.0;  // resolved floor
};

VolatilityFit fit_volatility(const std::vector<Eigen::VectorXd>& residuals,
                             const VolatilitySpec& spec, Index target);

// Recursion output A_{t+1} alpha_tilde for the step after the given residual
// history (most recent value last), before flooring or normalization.
double recursion_value(const VolatilityFit& fit, const std::vector<Eigen::VectorXd>& recent_residuals);

// One-step-ahead scale with the fit's floor and normalization constant.
double forecast_sigma(const VolatilityFit& fit, const std::vector<Eigen::VectorXd>& recent_residuals);

}  // namespace irwal
