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
#include <string>
#include <vector>

namespace irwal {

using Index = Eigen::Index;

// d observed series over T time points, stored series-major (d x T).
class SeriesPanel {
 public:
  SeriesPanel() = default;
  SeriesPanel(Eigen::MatrixXd values, std::vector<std::string> names);

  Index num_series() const { return values_.rows(); }
  Index length() const { return values_.cols(); }
  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<std::string>& names() const { return names_; }
  double operator()(Index series, Index t) const { return values_(series, t); }

  // First `length` time points (used to hold out a forecast target).
  SeriesPanel head(Index length) const;

 private:
  Eigen::MatrixXd values_;
  std::vector<std::string> names_;
};

// Candidate lags per (target series, source series). Lists are kept sorted
// ascending without duplicates regardless of the order they are given in.
class LagIndexSets {
 public:
  LagIndexSets() = default;
  explicit LagIndexSets(Index num_series);

  // Every (target, source) pair gets {1, ..., horizon}.
  static LagIndexSets contiguous(Index num_series, int horizon);
  // Only own-series lags {1, ..., horizon}; cross-series sets are empty.
  static LagIndexSets own_series(Index num_series, int horizon);

  void set(Index target, Index source, std::vector<int> lags);
  const std::vector<int>& lags(Index target, Index source) const;

  Index num_series() const { return static_cast<Index>(sets_.size()); }
  int max_lag(Index target) const;
  int max_lag() const;
  Index count(Index target) const;

 private:
  std::vector<std::vector<std::vector<int>>> sets_;
};

struct Column {
  int series = -1;  // -1 marks the intercept
  int lag = 0;

  bool is_intercept() const { return series < 0; }
  friend bool operator==(const Column&, const Column&) = default;
};

// Lagged regression design for one target series. Non-intercept columns are
// divided by their root mean square, so (1/n) sum_t X(t,j)^2 = 1.
struct Design {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;  // column-major, n x p
  std::vector<Column> columns;
  Eigen::VectorXd col_scale;
  int target = 0;
  int max_lag = 0;
  int n_effective = 0;

  Index rows() const { return X.rows(); }
  Index cols() const { return X.cols(); }
  bool is_intercept(Index j) const { return columns[static_cast<std::size_t>(j)].is_intercept(); }
  bool has_intercept() const;
  std::string column_label(Index j, const std::vector<std::string>& names = {}) const;
};

// Rows are t = max_lag .. T-1 (0-based). `history` raises the number of
// dropped leading rows above the target's own max lag, so several targets
// can share a time axis.
Design build_ar_design(const SeriesPanel& panel, Index target, const LagIndexSets& lags,
                       bool include_intercept, int history = 0);

// Standardized regressor row for time index t of `panel` (t may equal
// panel.length(), the one-step-ahead point), using the design's scaling.
Eigen::RowVectorXd design_row(const SeriesPanel& panel, const Design& design, Index t);

// beta_orig[j] = beta_std[j] / col_scale[j]; the intercept is unchanged.
Eigen::VectorXd destandardize_coefficients(const Eigen::VectorXd& beta_std, const Design& design);

// Restriction of a design to a subset of its columns (kept in the given order).
Design select_columns(const Design& design, const std::vector<Index>& keep);

}  // namespace irwal
