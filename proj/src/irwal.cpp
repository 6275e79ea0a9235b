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

#include "irwal/irwal.hpp"

#include <cmath>
#include <string>

#include "irwal/error.hpp"
#include "irwal/parallel.hpp"

namespace irwal {
namespace {

std::string at_iteration(int k, const std::string& what) {
  return "iteration " + std::to_string(k) + ": " + what;
}

const std::vector<double>& policy_grid(const IrwalConfig& cfg) {
  static const std::vector<double> kDefault = exponential_lambda_grid();
  if (const auto* g = std::get_if<GridSelection>(&cfg.lambda_policy)) return g->grid;
  return kDefault;
}

std::vector<double> to_objective_units(const std::vector<double>& grid, LambdaUnits units,
                                       const Eigen::VectorXd& w) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double lam : grid) out.push_back(objective_lambda(lam, units, w));
  return out;
}

}  // namespace

std::string_view to_string(StopReason r) noexcept {
  return r == StopReason::EpsilonMet ? "epsilon-met" : "k_max";
}

void IrwalConfig::validate() const {
  if (k_max < 1) throw Error(ErrorKind::Config, "k_max must be at least 1");
  if (stop_epsilon && !(*stop_epsilon > 0.0)) throw Error(ErrorKind::Config, "stop_epsilon must be positive");
  if (!(tau >= 0.0)) throw Error(ErrorKind::Config, "tau must be nonnegative");
  if (const auto* f = std::get_if<FixedLambda>(&lambda_policy)) {
    if (!(f->value >= 0.0)) throw Error(ErrorKind::Config, "lambda must be nonnegative");
  } else {
    const auto& g = std::get<GridSelection>(lambda_policy);
    if (g.grid.empty()) throw Error(ErrorKind::Config, "lambda grid is empty");
    for (std::size_t i = 1; i < g.grid.size(); ++i) {
      if (!(g.grid[i] < g.grid[i - 1])) throw Error(ErrorKind::Config, "lambda grid must be strictly descending");
    }
  }
  vol_spec.validate();
}

double objective_lambda(double lambda, LambdaUnits units, const Eigen::VectorXd& w) {
  if (units == LambdaUnits::Objective) return lambda;
  return 2.0 * lambda * w.squaredNorm();
}

Eigen::VectorXd initial_estimate(const Design& design, const IrwalConfig& cfg) {
  const BetaInitSource source =
      cfg.beta_init_source == BetaInitSource::None ? BetaInitSource::Lasso : cfg.beta_init_source;
  if (source == BetaInitSource::Ols) {
    if (design.cols() >= design.rows()) {
      throw Error(ErrorKind::InvalidInput, "least squares initial estimate needs p < n");
    }
    return design.X.colPivHouseholderQr().solve(design.y);
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(design.rows());
  const PenaltySpec pen = PenaltySpec::make(design, 0.0);
  if (cfg.beta_init_lambda) {
    return solve_weighted_lasso(design, ones,
                                pen.with_lambda(objective_lambda(*cfg.beta_init_lambda, cfg.lambda_units, ones)),
                                nullptr, cfg.solver)
        .beta;
  }
  const auto grid = to_objective_units(policy_grid(cfg), cfg.lambda_units, ones);
  const auto path = lasso_path(design, ones, pen, grid, cfg.solver);
  const double kappa = criterion_kappa(Criterion::Bic, design.rows());
  return path[select_lambda(path, design, ones, kappa)].beta;
}

IrwalStepper::IrwalStepper(const Design& design, IrwalConfig cfg, const IrwalWarmStart* warm)
    : design_(design), cfg_(std::move(cfg)), warm_(warm) {
  cfg_.validate();
  std::optional<Eigen::VectorXd> init;
  if (cfg_.tau > 0.0) init = initial_estimate(design_, cfg_);
  penalty_ = PenaltySpec::make(design_, 0.0, cfg_.tau, std::move(init));
  weights_ = Eigen::VectorXd::Ones(design_.rows());
  result_.penalty = penalty_;
}

Eigen::VectorXd IrwalStepper::solve_mean() {
  if (done_) throw Error(ErrorKind::InvalidInput, "IRWAL run already finished");
  if (mean_pending_) throw Error(ErrorKind::InvalidInput, "volatility update pending");
  ++k_;
  const Eigen::VectorXd* warm = nullptr;
  if (warm_ != nullptr && static_cast<int>(warm_->size()) >= k_) {
    warm = &(*warm_)[static_cast<std::size_t>(k_ - 1)];
  } else if (!result_.iterations.empty()) {
    warm = &result_.iterations.back().fit.beta;
  }

  IterationRecord rec;
  rec.k = k_;
  rec.weights = weights_;
  if (const auto* fixed = std::get_if<FixedLambda>(&cfg_.lambda_policy)) {
    rec.lambda = fixed->value;
    rec.lambda_objective = objective_lambda(fixed->value, cfg_.lambda_units, weights_);
    rec.fit = solve_weighted_lasso(design_, weights_, penalty_.with_lambda(rec.lambda_objective), warm,
                                   cfg_.solver);
  } else {
    const auto& policy = std::get<GridSelection>(cfg_.lambda_policy);
    const auto grid = to_objective_units(policy.grid, cfg_.lambda_units, weights_);
    const Eigen::VectorXd* path_warm = warm_ != nullptr ? warm : nullptr;
    auto path = lasso_path(design_, weights_, penalty_, grid, cfg_.solver, path_warm);
    SelectionReport report = selection_report(path, design_, weights_, cfg_.ic_residuals);
    const std::size_t chosen = report.chosen_for(policy.criterion);
    rec.lambda = policy.grid[chosen];
    rec.lambda_objective = grid[chosen];
    rec.fit = std::move(path[chosen]);
    rec.selection = std::move(report);
  }
  if (!rec.fit.beta.allFinite()) {
    throw Error(ErrorKind::NumericFailure, at_iteration(k_, "non-finite coefficients"));
  }
  rec.beta_original = destandardize_coefficients(rec.fit.beta, design_);
  rec.active_count = count_penalized_nonzero(rec.fit, design_);
  Eigen::VectorXd resid = design_.y - design_.X * rec.fit.beta;
  result_.iterations.push_back(std::move(rec));
  mean_pending_ = true;
  return resid;
}

void IrwalStepper::update_volatility(const std::vector<Eigen::VectorXd>& residual_panel, Index target) {
  if (!mean_pending_) throw Error(ErrorKind::InvalidInput, "no mean fit to update from");
  if (target < 0 || target >= static_cast<Index>(residual_panel.size())) {
    throw Error(ErrorKind::InvalidInput, "residual panel target out of range");
  }
  IterationRecord& rec = result_.iterations.back();
  const Eigen::VectorXd& own = residual_panel[static_cast<std::size_t>(target)];
  if (own.size() != design_.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "target residuals do not match design rows");
  }
  if (!own.allFinite()) throw Error(ErrorKind::NumericFailure, at_iteration(k_, "non-finite residuals"));

  rec.volatility = fit_volatility(residual_panel, cfg_.vol_spec, target);
  rec.sigma_hat = rec.volatility.fitted_sigma;
  if (!rec.sigma_hat.allFinite() || !(rec.sigma_hat.minCoeff() > 0.0)) {
    throw Error(ErrorKind::NumericFailure, at_iteration(k_, "invalid fitted volatility"));
  }

  if (!prev_sigma_) {
    result_.initial_scale = std::sqrt(own.squaredNorm() / static_cast<double>(own.size()));
    result_.stop_epsilon = cfg_.stop_epsilon.value_or(1e-3 * result_.initial_scale);
    prev_sigma_ = Eigen::VectorXd::Constant(own.size(), result_.initial_scale);
  }
  const Eigen::VectorXd diff = rec.sigma_hat - *prev_sigma_;
  rec.sigma_change = cfg_.stop_norm == StopNorm::MaxAbs ? diff.cwiseAbs().maxCoeff() : diff.norm();

  weights_ = rec.sigma_hat.cwiseInverse();
  prev_sigma_ = rec.sigma_hat;
  mean_pending_ = false;
  result_.stopped_at = k_;
  if (rec.sigma_change < result_.stop_epsilon) {
    done_ = true;
    result_.stop_reason = StopReason::EpsilonMet;
  } else if (k_ >= cfg_.k_max) {
    done_ = true;
    result_.stop_reason = StopReason::KMax;
  }
}

IrwalResult IrwalStepper::take_result() {
  if (result_.iterations.empty()) throw Error(ErrorKind::InvalidInput, "IRWAL run has no iterations");
  return std::move(result_);
}

IrwalResult irwal_fit(const Design& design, const IrwalConfig& cfg,
                      const ResidualPanelBuilder& residual_panel_builder, Index target,
                      const IrwalWarmStart* warm) {
  IrwalStepper stepper(design, cfg, warm);
  while (!stepper.done()) {
    Eigen::VectorXd resid = stepper.solve_mean();
    if (residual_panel_builder) {
      stepper.update_volatility(residual_panel_builder(stepper.current_beta()), target);
    } else {
      stepper.update_volatility({std::move(resid)}, 0);
    }
  }
  return stepper.take_result();
}

std::vector<SeriesOutcome> multivariate_fit(const SeriesPanel& panel, const LagIndexSets& mean_lags,
                                            const std::vector<IrwalConfig>& cfgs,
                                            bool include_intercept, int threads) {
  const Index d = panel.num_series();
  if (static_cast<Index>(cfgs.size()) != d) {
    throw Error(ErrorKind::ShapeMismatch, "need one IRWAL configuration per series");
  }
  const int history = mean_lags.max_lag();
  std::vector<SeriesOutcome> out(static_cast<std::size_t>(d));
  std::vector<std::optional<IrwalStepper>> steppers(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) {
    auto& o = out[static_cast<std::size_t>(i)];
    try {
      if (cfgs[static_cast<std::size_t>(i)].vol_spec.lag_sets.num_series() != d) {
        throw Error(ErrorKind::ShapeMismatch, "volatility lag sets must cover every series");
      }
      o.design = build_ar_design(panel, i, mean_lags, include_intercept, history);
    } catch (const std::exception& e) {
      o.error = e.what();
    }
  }
  for (Index i = 0; i < d; ++i) {
    auto& o = out[static_cast<std::size_t>(i)];
    if (!o.error.empty()) continue;
    try {
      steppers[static_cast<std::size_t>(i)].emplace(o.design, cfgs[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
      o.error = e.what();
    }
  }

  // Residual panel on the shared time axis. A series without a successful
  // mean fit contributes its demeaned response.
  const Index n = panel.length() - history;
  std::vector<Eigen::VectorXd> residuals(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) {
    const Eigen::VectorXd y = panel.values().row(i).tail(n).transpose();
    residuals[static_cast<std::size_t>(i)] = y.array() - y.mean();
  }

  auto running = [&](std::size_t i) {
    return out[i].error.empty() && steppers[i].has_value() && !steppers[i]->done();
  };
  while (true) {
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < steppers.size(); ++i) {
      if (running(i)) live.push_back(i);
    }
    if (live.empty()) break;
    parallel_for(live.size(), threads, [&](std::size_t a) {
      const std::size_t i = live[a];
      try {
        residuals[i] = steppers[i]->solve_mean();
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    });
    parallel_for(live.size(), threads, [&](std::size_t a) {
      const std::size_t i = live[a];
      if (!out[i].error.empty()) return;
      try {
        steppers[i]->update_volatility(residuals, static_cast<Index>(i));
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    });
  }
  for (std::size_t i = 0; i < steppers.size(); ++i) {
    if (out[i].error.empty() && steppers[i]) out[i].result = steppers[i]->take_result();
  }
  return out;
}

}  // namespace irwal
