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

#include "irwal/design.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irwal/error.hpp"

namespace irwal {

SeriesPanel::SeriesPanel(Eigen::MatrixXd values, std::vector<std::string> names)
    : values_(std::move(values)), names_(std::move(names)) {
  if (values_.rows() < 1) throw Error(ErrorKind::InvalidInput, "panel needs at least one series");
  if (values_.cols() < 2) {
    throw Error(ErrorKind::InsufficientData, "panel needs at least two time points");
  }
  if (names_.empty()) {
    for (Index i = 0; i < values_.rows(); ++i) names_.push_back("y" + std::to_string(i + 1));
  }
  if (static_cast<Index>(names_.size()) != values_.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "series name count does not match panel rows");
  }
  if (!values_.allFinite()) throw Error(ErrorKind::InvalidInput, "panel contains non-finite values");
}

SeriesPanel SeriesPanel::head(Index length) const {
  if (length < 2 || length > this->length()) {
    throw Error(ErrorKind::InvalidInput, "head length out of range");
  }
  return SeriesPanel(values_.leftCols(length), names_);
}

LagIndexSets::LagIndexSets(Index num_series)
    : sets_(static_cast<std::size_t>(num_series),
            std::vector<std::vector<int>>(static_cast<std::size_t>(num_series))) {}

LagIndexSets LagIndexSets::contiguous(Index num_series, int horizon) {
  LagIndexSets out(num_series);
  std::vector<int> lags(static_cast<std::size_t>(std::max(horizon, 0)));
  for (int k = 0; k < horizon; ++k) lags[static_cast<std::size_t>(k)] = k + 1;
  for (Index i = 0; i < num_series; ++i) {
    for (Index j = 0; j < num_series; ++j) out.set(i, j, lags);
  }
  return out;
}

LagIndexSets LagIndexSets::own_series(Index num_series, int horizon) {
  LagIndexSets out(num_series);
  std::vector<int> lags(static_cast<std::size_t>(std::max(horizon, 0)));
  for (int k = 0; k < horizon; ++k) lags[static_cast<std::size_t>(k)] = k + 1;
  for (Index i = 0; i < num_series; ++i) out.set(i, i, lags);
  return out;
}

void LagIndexSets::set(Index target, Index source, std::vector<int> lags) {
  if (target < 0 || target >= num_series() || source < 0 || source >= num_series()) {
    throw Error(ErrorKind::InvalidInput, "lag set index out of range");
  }
  std::sort(lags.begin(), lags.end());
  if (!lags.empty() && lags.front() < 1) throw Error(ErrorKind::InvalidInput, "lags must be >= 1");
  if (std::adjacent_find(lags.begin(), lags.end()) != lags.end()) {
    throw Error(ErrorKind::InvalidInput, "duplicate lag in lag set");
  }
  sets_[static_cast<std::size_t>(target)][static_cast<std::size_t>(source)] = std::move(lags);
}

const std::vector<int>& LagIndexSets::lags(Index target, Index source) const {
  return sets_.at(static_cast<std::size_t>(target)).at(static_cast<std::size_t>(source));
}

int LagIndexSets::max_lag(Index target) const {
  int m = 0;
  for (const auto& l : sets_.at(static_cast<std::size_t>(target))) {
    if (!l.empty()) m = std::max(m, l.back());
  }
  return m;
}

int LagIndexSets::max_lag() const {
  int m = 0;
  for (Index i = 0; i < num_series(); ++i) m = std::max(m, max_lag(i));
  return m;
}

Index LagIndexSets::count(Index target) const {
  Index c = 0;
  for (const auto& l : sets_.at(static_cast<std::size_t>(target))) c += static_cast<Index>(l.size());
  return c;
}

bool Design::has_intercept() const {
  return std::any_of(columns.begin(), columns.end(), [](const Column& c) { return c.is_intercept(); });
}

std::string Design::column_label(Index j, const std::vector<std::string>& names) const {
  const Column& c = columns.at(static_cast<std::size_t>(j));
  if (c.is_intercept()) return "(intercept)";
  const std::string series = static_cast<std::size_t>(c.series) < names.size()
                                 ? names[static_cast<std::size_t>(c.series)]
                                 : "series " + std::to_string(c.series);
  return series + " lag " + std::to_string(c.lag);
}

Design build_ar_design(const SeriesPanel& panel, Index target, const LagIndexSets& lags,
                       bool include_intercept, int history) {
  const Index d = panel.num_series();
  const Index T = panel.length();
  if (target < 0 || target >= d) throw Error(ErrorKind::InvalidInput, "target series out of range");
  if (lags.num_series() != d) {
    throw Error(ErrorKind::ShapeMismatch, "lag sets do not match the panel's series count");
  }
  const int max_lag = std::max(lags.max_lag(target), history);
  if (max_lag >= T) {
    throw Error(ErrorKind::InsufficientData, "max lag " + std::to_string(max_lag) +
                                                 " needs more than " + std::to_string(T) +
                                                 " time points");
  }
  const Index p = lags.count(target) + (include_intercept ? 1 : 0);
  if (p == 0) throw Error(ErrorKind::EmptyDesign, "no lag columns and no intercept");

  const Index n = T - max_lag;
  Design out;
  out.target = static_cast<int>(target);
  out.max_lag = max_lag;
  out.n_effective = static_cast<int>(n);
  out.y = panel.values().row(target).segment(max_lag, n).transpose();
  out.X.resize(n, p);
  out.col_scale = Eigen::VectorXd::Ones(p);
  out.columns.reserve(static_cast<std::size_t>(p));

  Index j = 0;
  if (include_intercept) {
    out.columns.push_back(Column{});
    out.X.col(j++).setOnes();
  }
  for (Index s = 0; s < d; ++s) {
    for (int k : lags.lags(target, s)) {
      auto col = out.X.col(j);
      col = panel.values().row(s).segment(max_lag - k, n).transpose();
      const double lo = col.minCoeff();
      const double hi = col.maxCoeff();
      Column c{static_cast<int>(s), k};
      out.columns.push_back(c);
      if (lo == hi) {
        throw Error(ErrorKind::DegenerateColumn,
                    "constant column " + out.column_label(j, panel.names()));
      }
      const double rms = std::sqrt(col.squaredNorm() / static_cast<double>(n));
      out.col_scale(j) = rms;
      col /= rms;
      ++j;
    }
  }
  return out;
}

Eigen::RowVectorXd design_row(const SeriesPanel& panel, const Design& design, Index t) {
  const Index p = design.cols();
  if (t < design.max_lag || t > panel.length()) {
    throw Error(ErrorKind::InsufficientData, "time index outside the available history");
  }
  Eigen::RowVectorXd row(p);
  for (Index j = 0; j < p; ++j) {
    const Column& c = design.columns[static_cast<std::size_t>(j)];
    row(j) = c.is_intercept() ? 1.0 : panel(c.series, t - c.lag) / design.col_scale(j);
  }
  return row;
}

Eigen::VectorXd destandardize_coefficients(const Eigen::VectorXd& beta_std, const Design& design) {
  if (beta_std.size() != design.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "coefficient length does not match design columns");
  }
  return beta_std.cwiseQuotient(design.col_scale);
}

Design select_columns(const Design& design, const std::vector<Index>& keep) {
  if (keep.empty()) throw Error(ErrorKind::EmptyDesign, "column selection is empty");
  Design out;
  out.y = design.y;
  out.target = design.target;
  out.max_lag = design.max_lag;
  out.n_effective = design.n_effective;
  out.X.resize(design.rows(), static_cast<Index>(keep.size()));
  out.col_scale.resize(static_cast<Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const Index j = keep[i];
    if (j < 0 || j >= design.cols()) throw Error(ErrorKind::InvalidInput, "column index out of range");
    out.X.col(static_cast<Index>(i)) = design.X.col(j);
    out.col_scale(static_cast<Index>(i)) = design.col_scale(j);
    out.columns.push_back(design.columns[static_cast<std::size_t>(j)]);
  }
  return out;
}

}  // namespace irwal
