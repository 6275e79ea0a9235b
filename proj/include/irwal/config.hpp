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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irwal {

inline constexpr std::string_view kVersion = "0.1.0";

// Every key of the flat config format. Optional keys left unset take the
// command's default (see docs/example.conf).
struct RunConfig {
  std::string command = "fit";  // fit | simulate | bench-inclusion | bench-mae | bench-trend
  std::string input;
  std::string out = "out";
  std::uint64_t seed = 1;
  int threads = 0;  // 0: machine parallelism

  // mean model
  std::optional<bool> intercept;  // unset: true for fit, false for the studies
  int mean_lags = 24;
  std::string lambda_units = "per_unit_weight";
  std::optional<double> lambda;   // fixed lambda; unset: select over the grid
  double lambda_grid_from = -4.0;  // log2
  double lambda_grid_to = -18.0;
  int lambda_grid_length = 100;
  std::string criterion = "bic";
  std::string ic_residuals = "weighted";
  double tau = 0.0;
  std::string beta_init = "none";
  double solver_tol = 1e-7;
  int max_sweeps = 10000;

  // iteration
  int k_max = 3;
  std::optional<double> stop_epsilon;
  std::string stop_norm = "maxabs";

  // volatility model
  double delta = 1.0;
  int vol_lags = 2;
  bool threshold = false;
  std::optional<double> sigma_floor;

  // simulation
  long n = 600;
  int burn_in = 5000;
  std::string vol_kind = "arch";
  double phi = 0.85;
  double mass = 0.95;
  std::optional<double> alpha0;  // unset: defaults of vol_kind
  std::optional<double> alpha1;
  std::optional<double> alpha2;
  std::optional<double> alpha1_minus;
  std::optional<double> alpha2_minus;
  int generation_horizon = 2500;

  // studies
  std::optional<int> reps;  // unset: 200, or 1000 with full_scale
  bool full_scale = false;
  std::vector<long> n_values;  // empty: per-study default
  std::vector<int> k_list{1, 2};
  int trend_k = 2;
  bool oracle = true;

  bool operator==(const RunConfig&) const = default;

  void validate() const;
  int resolved_threads() const;
  int resolved_reps() const;
};

// All recognised keys, in serialization order.
const std::vector<std::string>& config_keys();

// Sets one key from its text value; unknown keys and malformed values throw.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);
std::string get_config_value(const RunConfig& cfg, std::string_view key);  // "" when unset

// `key = value` lines; '#' starts a comment. A key may appear once.
RunConfig parse_config(std::istream& in, RunConfig base = {}, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
// Writes every set key; parse_config of the output reproduces `cfg`.
std::string serialize_config(const RunConfig& cfg);

}  // namespace irwal
