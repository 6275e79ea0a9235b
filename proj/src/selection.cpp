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

#include "irwal/selection.hpp"

#include <cmath>
#include <string>

#include "irwal/error.hpp"

namespace irwal {
namespace {

double residual_variance(const WeightedLassoFit& fit, const Design& design, const Eigen::VectorXd& w,
                         IcResiduals mode) {
  if (fit.beta.size() != design.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "fit does not match design columns");
  }
  const Eigen::ArrayXd r = (design.y - design.X * fit.beta).array();
  if (mode == IcResiduals::Unweighted) return r.square().mean();
  if (w.size() != design.rows()) throw Error(ErrorKind::ShapeMismatch, "weight length mismatch");
  return (w.array() * r).square().mean();
}

double gic_from(double sigma2, Index K, double kappa, Index n) {
  if (!(sigma2 > 0.0)) {
    throw Error(ErrorKind::NumericFailure, "zero residual variance in information criterion");
  }
  return std::log(sigma2) + kappa * static_cast<double>(K) / static_cast<double>(n);
}

}  // namespace

std::string_view to_string(Criterion c) noexcept {
  switch (c) {
    case Criterion::Aic: return "aic";
    case Criterion::Hqc: return "hqc";
    case Criterion::Bic: return "bic";
  }
  return "bic";
}

Criterion parse_criterion(std::string_view name) {
  if (name == "aic") return Criterion::Aic;
  if (name == "hqc") return Criterion::Hqc;
  if (name == "bic") return Criterion::Bic;
  throw Error(ErrorKind::Config, "unknown criterion '" + std::string(name) + "'");
}

double criterion_kappa(Criterion c, Index n) {
  const double dn = static_cast<double>(n);
  switch (c) {
    case Criterion::Aic: return 2.0;
    case Criterion::Hqc: return 2.0 * std::log(std::log(dn));
    case Criterion::Bic: return std::log(dn);
  }
  return std::log(dn);
}

Index count_penalized_nonzero(const WeightedLassoFit& fit, const Design& design) {
  Index K = 0;
  for (Index j : fit.active_set) {
    if (!design.is_intercept(j)) ++K;
  }
  return K;
}

double evaluate_gic(const WeightedLassoFit& fit, const Design& design, const Eigen::VectorXd& w,
                    double kappa, IcResiduals mode) {
  return gic_from(residual_variance(fit, design, w, mode), count_penalized_nonzero(fit, design), kappa,
                  design.rows());
}

std::size_t select_lambda(const std::vector<WeightedLassoFit>& path, const Design& design,
                          const Eigen::VectorXd& w, double kappa, IcResiduals mode) {
  if (path.empty()) throw Error(ErrorKind::InvalidInput, "cannot select from an empty path");
  std::size_t best = 0;
  double best_value = evaluate_gic(path[0], design, w, kappa, mode);
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double v = evaluate_gic(path[i], design, w, kappa, mode);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  return best;
}

SelectionReport selection_report(const std::vector<WeightedLassoFit>& path, const Design& design,
                                 const Eigen::VectorXd& w, IcResiduals mode) {
  if (path.empty()) throw Error(ErrorKind::InvalidInput, "cannot select from an empty path");
  SelectionReport report;
  const Index n = design.rows();
  report.records.reserve(path.size());
  for (const auto& fit : path) {
    SelectionRecord rec;
    rec.lambda = fit.lambda;
    rec.K = count_penalized_nonzero(fit, design);
    rec.sigma2_hat = residual_variance(fit, design, w, mode);
    for (std::size_t c = 0; c < kAllCriteria.size(); ++c) {
      rec.gic[c] = gic_from(rec.sigma2_hat, rec.K, criterion_kappa(kAllCriteria[c], n), n);
    }
    report.records.push_back(rec);
  }
  for (std::size_t c = 0; c < kAllCriteria.size(); ++c) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < report.records.size(); ++i) {
      if (report.records[i].gic[c] < report.records[best].gic[c]) best = i;
    }
    report.chosen[c] = best;
  }
  return report;
}

}  // namespace irwal
