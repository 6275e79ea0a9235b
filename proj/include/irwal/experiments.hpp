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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irwal/selection.hpp"
#include "irwal/simulate.hpp"
#include "irwal/wlasso.hpp"

namespace irwal {

// Shared knobs of the Monte Carlo studies. The DGP's seed is the base seed;
// replication r at sample size n draws from stream_seed(stream_seed(seed, n), r),
// so aggregates do not depend on scheduling.
struct StudyOptions {
  int replications = 200;
  std::vector<int> k_list{1, 2};
  std::vector<double> grid = exponential_lambda_grid();
  std::vector<Criterion> criteria{kAllCriteria.begin(), kAllCriteria.end()};
  int threads = 1;
  bool include_intercept = false;
  double delta = 1.0;
  int vol_horizon = 2;
  SolverOptions solver;

  void validate() const;
  int k_max() const;
};

// floor(5 sqrt(n)): the candidate lag horizon used for a sample of n rows.
int candidate_horizon(long n);

inline constexpr double kNoLambda = std::numeric_limits<double>::quiet_NaN();

struct McRow {
  double lambda = kNoLambda;  // NaN for rows that are not tied to one grid value
  int k = 0;
  long n = 0;
  std::string metric;
  double value = 0.0;
  int n_reps = 0;
};

struct McReport {
  std::string study;
  std::vector<McRow> rows;
  int requested_replications = 0;
  std::vector<long> n_values;
  std::vector<int> completed;  // per n_values entry
  std::vector<int> failed;     // per n_values entry
  std::vector<std::string> failure_messages;
  long ic_nesting_checks = 0;
  long ic_nesting_violations = 0;

  // Value of a metric; lambda unset looks up rows without a grid value.
  std::optional<double> value(std::string_view metric, long n, int k,
                              std::optional<double> lambda = std::nullopt) const;
  // Values of a per-lambda metric in grid order.
  std::vector<double> series(std::string_view metric, long n, int k, const std::vector<double>& grid) const;
};

// Inclusion proportions of relevant (square) and irrelevant lags along the
// grid for each k, plus the same proportions under IC-selected lambda.
McReport run_inclusion_study(const DgpSpec& dgp, const std::vector<long>& n_values,
                             const StudyOptions& opts);

// One-step-ahead mean absolute forecast error along the grid for each k; with
// `oracle` the same pipeline also runs on the true-support design.
McReport run_mae_study(const DgpSpec& dgp, long n, const StudyOptions& opts, bool oracle);

// Fraction of replications whose coefficients on the first three true lags
// carry the true signs (for a DGP with no AR terms: whose active set is
// empty), at iteration k with IC-selected lambda.
struct TrendTable {
  std::vector<long> n_values;
  std::vector<double> recovery;
  std::vector<int> completed;
  int inversions = 0;
  double max_inversion = 0.0;
  McReport report;
};

TrendTable run_consistency_trend(const DgpSpec& dgp, const std::vector<long>& n_values,
                                 Criterion criterion, int k, const StudyOptions& opts);

void write_report_csv(std::ostream& out, const McReport& report);
void write_report_csv(const std::filesystem::path& path, const McReport& report);

}  // namespace irwal
