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
#include <array>
#include <string_view>
#include <vector>

#include "irwal/design.hpp"
#include "irwal/wlasso.hpp"

namespace irwal {

enum class Criterion { Aic, Hqc, Bic };

// How sigma2_hat is formed inside the criterion.
enum class IcResiduals { Weighted, Unweighted };

inline constexpr std::array<Criterion, 3> kAllCriteria{Criterion::Aic, Criterion::Hqc, Criterion::Bic};

std::string_view to_string(Criterion c) noexcept;
Criterion parse_criterion(std::string_view name);

// kappa_n: 2 (AIC), 2 log log n (HQC), log n (BIC).
double criterion_kappa(Criterion c, Index n);

// Nonzero penalized coefficients; the intercept is not counted.
Index count_penalized_nonzero(const WeightedLassoFit& fit, const Design& design);

// log(sigma2_hat) + kappa K / n, sigma2_hat = (1/n) sum_t w_t^2 (y_t - X_t beta)^2
// (w ignored in the unweighted mode).
double evaluate_gic(const WeightedLassoFit& fit, const Design& design, const Eigen::VectorXd& w,
                    double kappa, IcResiduals mode = IcResiduals::Weighted);

// Index of the GIC minimizer; ties go to the earlier (larger lambda) fit.
std::size_t select_lambda(const std::vector<WeightedLassoFit>& path, const Design& design,
                          const Eigen::VectorXd& w, double kappa,
                          IcResiduals mode = IcResiduals::Weighted);

struct SelectionRecord {
  double lambda = 0.0;
  Index K = 0;
  double sigma2_hat = 0.0;
  std::array<double, 3> gic{};  // indexed like kAllCriteria
};

struct SelectionReport {
  std::vector<SelectionRecord> records;
  std::array<std::size_t, 3> chosen{};  // indexed like kAllCriteria

  std::size_t chosen_for(Criterion c) const { return chosen[static_cast<std::size_t>(c)]; }
};

SelectionReport selection_report(const std::vector<WeightedLassoFit>& path, const Design& design,
                                 const Eigen::VectorXd& w, IcResiduals mode = IcResiduals::Weighted);

}  // namespace irwal
