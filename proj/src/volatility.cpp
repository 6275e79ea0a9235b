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

#include "irwal/volatility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irwal/error.hpp"

namespace irwal {
namespace {

double power_abs(double e, double delta) {
  const double a = std::abs(e);
  return delta == 1.0 ? a : (delta == 2.0 ? a * a : std::pow(a, delta));
}

double root(double v, double delta) {
  return delta == 1.0 ? v : (delta == 2.0 ? std::sqrt(v) : std::pow(v, 1.0 / delta));
}

std::vector<VolTerm> make_terms(const VolatilitySpec& spec, Index target) {
  std::vector<VolTerm> terms{VolTerm{}};
  const Index d = spec.lag_sets.num_series();
  for (Index j = 0; j < d; ++j) {
    for (int k : spec.lag_sets.lags(target, j)) {
      terms.push_back({VolTerm::Kind::Absolute, static_cast<int>(j), k});
    }
  }
  if (spec.threshold) {
    for (Index j = 0; j < d; ++j) {
      for (int k : spec.lag_sets.lags(target, j)) {
        terms.push_back({VolTerm::Kind::Negative, static_cast<int>(j), k});
      }
    }
  }
  return terms;
}

// Value of one regressor given the residual of series `term.series` at lag `term.lag`.
double term_value(const VolTerm& term, double e, double delta) {
  switch (term.kind) {
    case VolTerm::Kind::Intercept: return 1.0;
    case VolTerm::Kind::Absolute: return power_abs(e, delta);
    case VolTerm::Kind::Negative: return e < 0.0 ? power_abs(e, delta) : 0.0;
  }
  return 0.0;
}

Index common_length(const std::vector<Eigen::VectorXd>& residuals, Index num_series) {
  if (static_cast<Index>(residuals.size()) != num_series) {
    throw Error(ErrorKind::ShapeMismatch, "residual panel does not match the lag sets' series count");
  }
  const Index n = residuals.front().size();
  for (const auto& r : residuals) {
    if (r.size() != n) throw Error(ErrorKind::ShapeMismatch, "residual series differ in length");
    if (!r.allFinite()) throw Error(ErrorKind::NumericFailure, "residuals contain non-finite values");
  }
  return n;
}

// mean_t e_t^2 / max(c u_t, floor)^2
double standardized_second_moment(const Eigen::VectorXd& e2, const Eigen::VectorXd& u, double c,
                                  double floor) {
  double s = 0.0;
  for (Index t = 0; t < u.size(); ++t) {
    const double sig = std::max(c * u(t), floor);
    s += e2(t) / (sig * sig);
  }
  return s / static_cast<double>(u.size());
}

// Smallest-effort solve of standardized_second_moment(c) == 1; the function
// is nonincreasing in c, and strictly so wherever the floor is not binding.
double normalization_constant(const Eigen::VectorXd& e2, const Eigen::VectorXd& u, double floor) {
  const double c0 = std::sqrt((e2.array() / u.array().square()).mean());
  if ((c0 * u.array() >= floor).all()) return c0;
  double hi = c0;
  double lo = c0;
  while (standardized_second_moment(e2, u, lo, floor) <= 1.0) {
    lo *= 0.5;
    if (lo < 1e-300) throw Error(ErrorKind::DegenerateScale, "cannot normalize fitted scales");
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (standardized_second_moment(e2, u, mid, floor) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

VolatilitySpec VolatilitySpec::with_horizon(Index num_series, int horizon, double delta,
                                            bool threshold) {
  VolatilitySpec spec;
  spec.delta = delta;
  spec.lag_sets = LagIndexSets::contiguous(num_series, horizon);
  spec.threshold = threshold;
  return spec;
}

void VolatilitySpec::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorKind::InvalidInput, "volatility power delta must be positive");
  }
  if (sigma_floor && !(*sigma_floor > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "sigma floor must be positive");
  }
  if (lag_sets.num_series() < 1) throw Error(ErrorKind::InvalidInput, "volatility lag sets are empty");
}

ArchDesign build_arch_design(const std::vector<Eigen::VectorXd>& residuals,
                             const VolatilitySpec& spec, Index target) {
  spec.validate();
  const Index d = spec.lag_sets.num_series();
  if (target < 0 || target >= d) throw Error(ErrorKind::InvalidInput, "volatility target out of range");
  const Index n = common_length(residuals, d);
  const int L = spec.lag_sets.max_lag(target);
  if (n - L < 1) {
    throw Error(ErrorKind::InsufficientData, "residual sample of length " + std::to_string(n) +
                                                 " is too short for volatility lag " +
                                                 std::to_string(L));
  }
  ArchDesign out;
  out.terms = make_terms(spec, target);
  out.max_lag = L;
  const Index rows = n - L;
  const Index m = static_cast<Index>(out.terms.size());
  out.A.resize(rows, m);
  out.b.resize(rows);
  for (Index r = 0; r < rows; ++r) out.b(r) = power_abs(residuals[static_cast<std::size_t>(target)](L + r), spec.delta);
  for (Index c = 0; c < m; ++c) {
    const VolTerm& term = out.terms[static_cast<std::size_t>(c)];
    if (term.kind == VolTerm::Kind::Intercept) {
      out.A.col(c).setOnes();
      continue;
    }
    const Eigen::VectorXd& e = residuals[static_cast<std::size_t>(term.series)];
    for (Index r = 0; r < rows; ++r) out.A(r, c) = term_value(term, e(L + r - term.lag), spec.delta);
  }
  return out;
}

VolatilityFit fit_volatility(const std::vector<Eigen::VectorXd>& residuals,
                             const VolatilitySpec& spec, Index target) {
  const ArchDesign design = build_arch_design(residuals, spec, target);
  const Eigen::VectorXd& e = residuals[static_cast<std::size_t>(target)];
  const Index n = e.size();
  const Eigen::VectorXd e2 = e.array().square();
  const double rms = std::sqrt(e2.mean());
  if (!(rms > 0.0)) throw Error(ErrorKind::DegenerateScale, "target residuals are all zero");

  VolatilityFit fit;
  fit.spec = spec;
  fit.terms = design.terms;
  fit.target = target;
  fit.max_lag = design.max_lag;
  fit.sigma_floor = spec.sigma_floor.value_or(1e-4 * rms);
  if (fit.sigma_floor >= rms) {
    throw Error(ErrorKind::InvalidInput, "sigma floor is not below the residual scale");
  }
  fit.alpha_tilde = solve_nnls(design.A, design.b);

  const double raw_floor = std::pow(fit.sigma_floor, spec.delta);
  const Eigen::VectorXd raw = (design.A * fit.alpha_tilde.alpha).cwiseMax(raw_floor);
  Eigen::VectorXd u(n);
  const int L = design.max_lag;
  for (Index r = 0; r < raw.size(); ++r) u(L + r) = root(raw(r), spec.delta);
  if (L > 0) u.head(L).setConstant(std::sqrt(u.tail(n - L).array().square().mean()));
  if (!u.allFinite()) throw Error(ErrorKind::NumericFailure, "fitted scales are not finite");

  fit.scale = normalization_constant(e2, u, fit.sigma_floor);
  fit.fitted_sigma = (fit.scale * u).cwiseMax(fit.sigma_floor);

  double g = 0.0;
  for (Index t = L; t < n; ++t) g += power_abs(e(t) / fit.fitted_sigma(t), spec.delta);
  fit.gamma_hat = g / static_cast<double>(n - L);
  return fit;
}

double recursion_value(const VolatilityFit& fit, const std::vector<Eigen::VectorXd>& recent_residuals) {
  const Index d = fit.spec.lag_sets.num_series();
  if (static_cast<Index>(recent_residuals.size()) != d) {
    throw Error(ErrorKind::ShapeMismatch, "residual history does not match the series count");
  }
  double v = 0.0;
  for (std::size_t c = 0; c < fit.terms.size(); ++c) {
    const VolTerm& term = fit.terms[c];
    const double a = fit.alpha_tilde.alpha(static_cast<Index>(c));
    if (term.kind == VolTerm::Kind::Intercept) {
      v += a;
      continue;
    }
    const Eigen::VectorXd& e = recent_residuals[static_cast<std::size_t>(term.series)];
    if (e.size() < term.lag) {
      throw Error(ErrorKind::InsufficientData, "residual history shorter than volatility lag " +
                                                   std::to_string(term.lag));
    }
    v += a * term_value(term, e(e.size() - term.lag), fit.spec.delta);
  }
  return v;
}

double forecast_sigma(const VolatilityFit& fit, const std::vector<Eigen::VectorXd>& recent_residuals) {
  const double raw = std::max(recursion_value(fit, recent_residuals),
                              std::pow(fit.sigma_floor, fit.spec.delta));
  return std::max(fit.scale * root(raw, fit.spec.delta), fit.sigma_floor);
}

}  // namespace irwal
