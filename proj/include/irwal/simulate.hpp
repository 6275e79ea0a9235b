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
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace irwal {

enum class VolKind { Arch, Tarch };

std::string_view to_string(VolKind k) noexcept;
VolKind parse_vol_kind(std::string_view name);

struct ArTerm {
  int lag = 0;
  double coef = 0.0;
};

// Sparse AR model with power-one ARCH / zero-threshold TARCH innovations:
//   Y_t = sum_k phi_k Y_{t-k} + e_t,   e_t = sigma_t Z_t,  Z_t iid N(0,1)
//   sigma_t = a0 + sum_i a_i |e_{t-i}| + sum_i a-_i 1{e_{t-i} < 0} |e_{t-i}|
// By default phi_k = mass (1/phi - 1) phi^sqrt(k) on the square lags.
struct DgpSpec {
  long n = 600;
  int burn_in = 5000;
  double phi_decay = 0.85;
  double mass = 0.95;
  std::optional<std::vector<ArTerm>> explicit_support;
  VolKind vol_kind = VolKind::Arch;
  double alpha0 = 0.01;
  std::vector<double> alpha{0.49, 0.49};
  std::vector<double> alpha_minus{0.0, 0.0};
  std::uint64_t seed = 1;
  int generation_horizon = 2500;  // AR terms beyond this lag are dropped

  static DgpSpec arch(long n, std::uint64_t seed);
  // alpha = 0.245, alpha- = 0.49 on lags 1 and 2.
  static DgpSpec tarch(long n, std::uint64_t seed);

  void validate() const;
};

std::vector<ArTerm> ar_coefficients(const DgpSpec& spec, int max_lag);

struct SimulatedPath {
  Eigen::VectorXd y;
  Eigen::VectorXd sigma;
  Eigen::VectorXd eps;
};

// Last n values after burn-in; identical seeds give bitwise-identical paths.
SimulatedPath simulate_path(const DgpSpec& spec);

// Seed of an independent stream (e.g. one Monte Carlo replication) derived
// from a base seed by SplitMix64 mixing.
std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace irwal
