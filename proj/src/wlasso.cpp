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

#include "irwal/wlasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "irwal/error.hpp"
#include "irwal/kernels.hpp"

namespace irwal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::span<const double> col_span(const Eigen::MatrixXd& X, Index j) {
  return {X.col(j).data(), static_cast<std::size_t>(X.rows())};
}

std::span<const double> vec_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

std::span<double> vec_span(Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

void check_shapes(const Design& design, const Eigen::VectorXd& w, const PenaltySpec& pen) {
  if (w.size() != design.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "weight vector length does not match design rows");
  }
  if (pen.weights.size() != design.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "penalty weights do not match design columns");
  }
}

void check_weights(const Eigen::VectorXd& w) {
  for (Index t = 0; t < w.size(); ++t) {
    if (!(w(t) > 0.0) || !std::isfinite(w(t))) {
      throw Error(ErrorKind::InvalidWeights,
                  "observation weight at row " + std::to_string(t) + " is not a positive finite number");
    }
  }
}

double penalty_term(const PenaltySpec& pen, const Eigen::VectorXd& beta) {
  double s = 0.0;
  for (Index j = 0; j < beta.size(); ++j) {
    if (beta(j) != 0.0) s += pen.weights(j) * std::abs(beta(j));
  }
  return pen.lambda * s;
}

}  // namespace

PenaltySpec PenaltySpec::make(const Design& design, double lambda, double tau,
                              std::optional<Eigen::VectorXd> beta_init) {
  if (!(lambda >= 0.0)) throw Error(ErrorKind::InvalidInput, "lambda must be nonnegative");
  if (!(tau >= 0.0)) throw Error(ErrorKind::InvalidInput, "tau must be nonnegative");
  const Index p = design.cols();
  PenaltySpec pen;
  pen.lambda = lambda;
  pen.tau = tau;
  pen.weights = Eigen::VectorXd::Ones(p);
  if (tau > 0.0) {
    if (!beta_init) throw Error(ErrorKind::InvalidInput, "tau > 0 requires an initial estimate");
    if (beta_init->size() != p) {
      throw Error(ErrorKind::ShapeMismatch, "initial estimate length does not match design columns");
    }
    for (Index j = 0; j < p; ++j) {
      const double b = std::abs((*beta_init)(j));
      pen.weights(j) = b == 0.0 ? kInf : std::pow(b, -tau);
    }
  }
  for (Index j = 0; j < p; ++j) {
    if (design.is_intercept(j)) pen.weights(j) = 0.0;
  }
  pen.beta_init = std::move(beta_init);
  return pen;
}

PenaltySpec PenaltySpec::with_lambda(double value) const {
  if (!(value >= 0.0)) throw Error(ErrorKind::InvalidInput, "lambda must be nonnegative");
  PenaltySpec out = *this;
  out.lambda = value;
  return out;
}

bool PenaltySpec::is_frozen(Index j) const { return std::isinf(weights(j)); }
bool PenaltySpec::is_penalized(Index j) const { return weights(j) > 0.0; }

double weighted_lasso_objective(const Design& design, const Eigen::VectorXd& w,
                                const PenaltySpec& pen, const Eigen::VectorXd& beta) {
  check_shapes(design, w, pen);
  const Eigen::VectorXd r = design.y - design.X * beta;
  return (w.array() * r.array()).square().sum() + penalty_term(pen, beta);
}

WeightedLassoFit solve_weighted_lasso(const Design& design, const Eigen::VectorXd& w,
                                      const PenaltySpec& pen, const Eigen::VectorXd* warm_start,
                                      const SolverOptions& options) {
  check_shapes(design, w, pen);
  check_weights(w);
  if (!(options.tol > 0.0)) throw Error(ErrorKind::InvalidInput, "solver tolerance must be positive");
  const Index n = design.rows();
  const Index p = design.cols();
  const Eigen::MatrixXd& X = design.X;

  Eigen::VectorXd w2(n);
  kernels::mul(vec_span(w), vec_span(w), vec_span(w2));

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  if (warm_start != nullptr) {
    if (warm_start->size() != p) {
      throw Error(ErrorKind::ShapeMismatch, "warm start length does not match design columns");
    }
    beta = *warm_start;
  }
  std::vector<Index> free_cols;
  for (Index j = 0; j < p; ++j) {
    if (pen.is_frozen(j)) {
      beta(j) = 0.0;
    } else {
      free_cols.push_back(j);
    }
  }

  Eigen::VectorXd r = design.y - X * beta;
  Eigen::VectorXd s(p);
  Eigen::VectorXd half_thresh(p);
  for (Index j : free_cols) {
    s(j) = kernels::dot3(vec_span(w2), col_span(X, j), col_span(X, j));
    half_thresh(j) = 0.5 * pen.lambda * pen.weights(j);
  }

  auto update = [&](Index j) {
    const double old = beta(j);
    if (s(j) <= 0.0) return 0.0;
    const double rho = kernels::dot3(vec_span(w2), col_span(X, j), vec_span(r)) + s(j) * old;
    const double next = soft_threshold(rho, half_thresh(j)) / s(j);
    if (next == old) return 0.0;
    kernels::axpy(old - next, col_span(X, j), vec_span(r));
    beta(j) = next;
    return std::abs(next - old);
  };

  WeightedLassoFit fit;
  fit.lambda = pen.lambda;
  auto record = [&] {
    if (options.record_objective) {
      fit.objective_trace.push_back((w.array() * r.array()).square().sum() + penalty_term(pen, beta));
    }
  };

  int sweeps = 0;
  std::vector<Index> active;
  while (sweeps < options.max_sweeps) {
    double max_change = 0.0;
    for (Index j : free_cols) max_change = std::max(max_change, update(j));
    ++sweeps;
    record();
    if (max_change < options.tol) {
      fit.converged = true;
      break;
    }
    active.clear();
    for (Index j : free_cols) {
      if (beta(j) != 0.0) active.push_back(j);
    }
    while (sweeps < options.max_sweeps) {
      double inner_change = 0.0;
      for (Index j : active) inner_change = std::max(inner_change, update(j));
      ++sweeps;
      record();
      if (inner_change < options.tol) break;
    }
  }

  fit.beta = std::move(beta);
  fit.n_iters = sweeps;
  for (Index j = 0; j < p; ++j) {
    if (fit.beta(j) != 0.0) fit.active_set.push_back(j);
  }
  fit.objective = weighted_lasso_objective(design, w, pen, fit.beta);
  if (!std::isfinite(fit.objective)) {
    throw Error(ErrorKind::NumericFailure, "weighted lasso objective is not finite");
  }
  fit.kkt_max_violation = check_kkt(design, w, pen, fit.beta);
  return fit;
}

double check_kkt(const Design& design, const Eigen::VectorXd& w, const PenaltySpec& pen,
                 const Eigen::VectorXd& beta) {
  check_shapes(design, w, pen);
  if (beta.size() != design.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "coefficient length does not match design columns");
  }
  const Eigen::VectorXd wr = w.array().square() * (design.y - design.X * beta).array();
  const Eigen::VectorXd grad = design.X.transpose() * wr;
  double worst = 0.0;
  for (Index j = 0; j < beta.size(); ++j) {
    const double v = pen.weights(j);
    double viol;
    if (beta(j) != 0.0) {
      if (std::isinf(v)) {
        viol = kInf;
      } else {
        const double sign = beta(j) > 0.0 ? 1.0 : -1.0;
        viol = std::abs(grad(j) - 0.5 * pen.lambda * v * sign);
      }
    } else if (std::isinf(v)) {
      viol = 0.0;
    } else {
      viol = std::max(0.0, std::abs(grad(j)) - 0.5 * pen.lambda * v);
    }
    worst = std::max(worst, viol);
  }
  return worst;
}

double critical_lambda(const Design& design, const Eigen::VectorXd& w, const PenaltySpec& pen) {
  check_shapes(design, w, pen);
  // Fit the unpenalized columns alone, then read off the largest scaled gradient.
  PenaltySpec frozen = pen;
  bool any_penalized = false;
  for (Index j = 0; j < design.cols(); ++j) {
    if (pen.is_penalized(j)) {
      frozen.weights(j) = kInf;
      any_penalized = true;
    }
  }
  if (!any_penalized) return 0.0;
  SolverOptions opts;
  opts.tol = 1e-12;
  const WeightedLassoFit base = solve_weighted_lasso(design, w, frozen, nullptr, opts);
  const Eigen::VectorXd wr = w.array().square() * (design.y - design.X * base.beta).array();
  const Eigen::VectorXd grad = design.X.transpose() * wr;
  double lam = 0.0;
  for (Index j = 0; j < design.cols(); ++j) {
    if (pen.is_penalized(j) && !pen.is_frozen(j)) {
      lam = std::max(lam, 2.0 * std::abs(grad(j)) / pen.weights(j));
    }
  }
  return lam;
}

std::vector<WeightedLassoFit> lasso_path(const Design& design, const Eigen::VectorXd& w,
                                         const PenaltySpec& pen_base,
                                         const std::vector<double>& lambdas,
                                         const SolverOptions& options,
                                         const Eigen::VectorXd* warm_start) {
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (!(lambdas[i] < lambdas[i - 1])) {
      throw Error(ErrorKind::InvalidInput, "lambda path must be strictly descending");
    }
  }
  std::vector<WeightedLassoFit> out;
  out.reserve(lambdas.size());
  const Eigen::VectorXd* prev = warm_start;
  for (double lam : lambdas) {
    out.push_back(solve_weighted_lasso(design, w, pen_base.with_lambda(lam), prev, options));
    prev = &out.back().beta;
  }
  return out;
}

std::vector<double> exponential_lambda_grid(double from_exp, double to_exp, int length) {
  if (length < 1) throw Error(ErrorKind::InvalidInput, "grid length must be positive");
  std::vector<double> grid(static_cast<std::size_t>(length));
  if (length == 1) {
    grid[0] = std::exp2(from_exp);
    return grid;
  }
  const double step = (to_exp - from_exp) / static_cast<double>(length - 1);
  for (int i = 0; i < length; ++i) {
    grid[static_cast<std::size_t>(i)] = std::exp2(from_exp + step * static_cast<double>(i));
  }
  return grid;
}

}  // namespace irwal
