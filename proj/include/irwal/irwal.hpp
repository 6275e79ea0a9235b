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
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "irwal/design.hpp"
#include "irwal/selection.hpp"
#include "irwal/volatility.hpp"
#include "irwal/wlasso.hpp"

namespace irwal {

struct FixedLambda {
  double value = 0.0;
};

struct GridSelection {
  std::vector<double> grid = exponential_lambda_grid();  // strictly descending
  Criterion criterion = Criterion::Bic;
};

using LambdaPolicy = std::variant<FixedLambda, GridSelection>;

// PerUnitWeight: the objective receives 2 * lambda * sum_t w_t^2, so lambda
// is a per-observation penalty that does not move when all weights are
// rescaled. Objective: lambda enters the objective as given.
enum class LambdaUnits { PerUnitWeight, Objective };

enum class BetaInitSource { None, Ols, Lasso };
enum class StopNorm { MaxAbs, Euclidean };
enum class StopReason { EpsilonMet, KMax };

std::string_view to_string(StopReason r) noexcept;

struct IrwalConfig {
  LambdaPolicy lambda_policy = GridSelection{};
  LambdaUnits lambda_units = LambdaUnits::PerUnitWeight;
  double tau = 0.0;
  BetaInitSource beta_init_source = BetaInitSource::None;
  std::optional<double> beta_init_lambda;  // Lasso init at this lambda; unset: BIC over the grid
  VolatilitySpec vol_spec;
  int k_max = 3;
  std::optional<double> stop_epsilon;  // unset: 1e-3 * initial residual scale
  StopNorm stop_norm = StopNorm::MaxAbs;
  IcResiduals ic_residuals = IcResiduals::Weighted;
  SolverOptions solver;

  void validate() const;
};

struct IterationRecord {
  int k = 0;
  Eigen::VectorXd weights;  // w^[k-1], the weights used by this iteration's solve
  double lambda = 0.0;      // in the configured units
  double lambda_objective = 0.0;
  WeightedLassoFit fit;
  Eigen::VectorXd beta_original;
  VolatilityFit volatility;
  Eigen::VectorXd sigma_hat;
  Index active_count = 0;  // penalized nonzeros
  double sigma_change = 0.0;
  std::optional<SelectionReport> selection;
};

struct IrwalResult {
  std::vector<IterationRecord> iterations;
  int stopped_at = 0;
  StopReason stop_reason = StopReason::KMax;
  double initial_scale = 0.0;  // the constant sigma_hat^[0]
  double stop_epsilon = 0.0;   // resolved
  PenaltySpec penalty;         // penalty weights shared by all iterations

  const IterationRecord& final() const { return iterations.back(); }
  const Eigen::VectorXd& final_beta() const { return iterations.back().fit.beta; }
  const Eigen::VectorXd& final_beta_original() const { return iterations.back().beta_original; }
  const Eigen::VectorXd& final_sigma() const { return iterations.back().sigma_hat; }
};

// Maps the current coefficients to the residual panel fed to the volatility
// model; the target's residuals sit at index `target` of the returned list.
using ResidualPanelBuilder = std::function<std::vector<Eigen::VectorXd>(const Eigen::VectorXd& beta)>;

// Per-iteration warm starts (entry k-1 seeds iteration k).
using IrwalWarmStart = std::vector<Eigen::VectorXd>;

double objective_lambda(double lambda, LambdaUnits units, const Eigen::VectorXd& w);

// Initial estimate for the adaptive penalty weights (tau > 0).
Eigen::VectorXd initial_estimate(const Design& design, const IrwalConfig& cfg);

// One IRWAL run, driven step by step so several targets can share a barrier
// between the mean fit and the volatility fit of each iteration.
class IrwalStepper {
 public:
  IrwalStepper(const Design& design, IrwalConfig cfg, const IrwalWarmStart* warm = nullptr);

  // Step 2 for the next iteration. Returns y - X beta^[k].
  Eigen::VectorXd solve_mean();
  // Steps 3-5 on a residual panel; the target's residuals are at `target`.
  void update_volatility(const std::vector<Eigen::VectorXd>& residual_panel, Index target);

  bool done() const { return done_; }
  const Eigen::VectorXd& current_beta() const { return result_.iterations.back().fit.beta; }
  int iteration() const { return k_; }
  const Design& design() const { return design_; }
  IrwalResult take_result();

 private:
  const Design& design_;
  IrwalConfig cfg_;
  const IrwalWarmStart* warm_;
  PenaltySpec penalty_;
  Eigen::VectorXd weights_;
  std::optional<Eigen::VectorXd> prev_sigma_;
  IrwalResult result_;
  int k_ = 0;
  bool done_ = false;
  bool mean_pending_ = false;
};

IrwalResult irwal_fit(const Design& design, const IrwalConfig& cfg,
                      const ResidualPanelBuilder& residual_panel_builder = {}, Index target = 0,
                      const IrwalWarmStart* warm = nullptr);

struct SeriesOutcome {
  std::optional<IrwalResult> result;
  std::string error;  // set when this series failed
  Design design;
};

// One IRWAL problem per target series over all series' lags. Within each
// iteration every series' mean fit completes before any volatility fit, so
// cross-series volatility terms see residuals of the same iteration. All
// designs share the panel-wide maximum lag so residuals align in time.
std::vector<SeriesOutcome> multivariate_fit(const SeriesPanel& panel, const LagIndexSets& mean_lags,
                                            const std::vector<IrwalConfig>& cfgs,
                                            bool include_intercept = true, int threads = 1);

}  // namespace irwal
