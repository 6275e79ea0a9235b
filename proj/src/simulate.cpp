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

#include "irwal/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "irwal/error.hpp"

namespace irwal {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(VolKind k) noexcept { return k == VolKind::Arch ? "arch" : "tarch"; }

VolKind parse_vol_kind(std::string_view name) {
  if (name == "arch") return VolKind::Arch;
  if (name == "tarch") return VolKind::Tarch;
  throw Error(ErrorKind::Config, "unknown volatility kind '" + std::string(name) + "'");
}

DgpSpec DgpSpec::arch(long n, std::uint64_t seed) {
  DgpSpec s;
  s.n = n;
  s.seed = seed;
  return s;
}

DgpSpec DgpSpec::tarch(long n, std::uint64_t seed) {
  DgpSpec s;
  s.n = n;
  s.seed = seed;
  s.vol_kind = VolKind::Tarch;
  s.alpha = {0.245, 0.245};
  s.alpha_minus = {0.49, 0.49};
  return s;
}

void DgpSpec::validate() const {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "sample size must be positive");
  if (!(phi_decay > 0.0 && phi_decay < 1.0)) throw Error(ErrorKind::InvalidInput, "phi must lie in (0, 1)");
  if (!(alpha0 > 0.0)) throw Error(ErrorKind::InvalidInput, "alpha0 must be positive");
  for (double a : alpha) {
    if (!(a >= 0.0)) throw Error(ErrorKind::InvalidInput, "ARCH coefficients must be nonnegative");
  }
  for (double a : alpha_minus) {
    if (!(a >= 0.0)) throw Error(ErrorKind::InvalidInput, "TARCH coefficients must be nonnegative");
  }
  if (vol_kind == VolKind::Arch &&
      std::any_of(alpha_minus.begin(), alpha_minus.end(), [](double a) { return a != 0.0; })) {
    throw Error(ErrorKind::InvalidInput, "ARCH innovations take no sign-gated terms");
  }
  if (generation_horizon < 1) throw Error(ErrorKind::InvalidInput, "generation horizon must be positive");
}

std::vector<ArTerm> ar_coefficients(const DgpSpec& spec, int max_lag) {
  if (max_lag < 1) throw Error(ErrorKind::InvalidInput, "max_lag must be at least 1");
  std::vector<ArTerm> out;
  if (spec.explicit_support) {
    for (const ArTerm& t : *spec.explicit_support) {
      if (t.lag >= 1 && t.lag <= max_lag && t.coef != 0.0) out.push_back(t);
    }
    std::sort(out.begin(), out.end(), [](const ArTerm& a, const ArTerm& b) { return a.lag < b.lag; });
    return out;
  }
  if (spec.mass == 0.0) return out;
  const double scale = spec.mass * (1.0 / spec.phi_decay - 1.0);
  for (long m = 1; m * m <= max_lag; ++m) {
    out.push_back({static_cast<int>(m * m), scale * std::pow(spec.phi_decay, static_cast<double>(m))});
  }
  return out;
}

SimulatedPath simulate_path(const DgpSpec& spec) {
  spec.validate();
  const std::vector<ArTerm> ar = ar_coefficients(spec, spec.generation_horizon);
  const int largest = ar.empty() ? 0 : ar.back().lag;
  if (spec.burn_in < 2 * largest) {
    throw Error(ErrorKind::InvalidInput, "burn-in " + std::to_string(spec.burn_in) +
                                             " is shorter than twice the largest AR lag " +
                                             std::to_string(largest));
  }
  const long total = spec.burn_in + spec.n;
  std::vector<double> y(static_cast<std::size_t>(total), 0.0);
  std::vector<double> e(static_cast<std::size_t>(total), 0.0);
  std::vector<double> sig(static_cast<std::size_t>(total), 0.0);

  std::mt19937_64 rng(splitmix64(spec.seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t q = std::max(spec.alpha.size(), spec.alpha_minus.size());

  for (long t = 0; t < total; ++t) {
    double s = spec.alpha0;
    for (std::size_t i = 1; i <= q && static_cast<long>(i) <= t; ++i) {
      const double past = e[static_cast<std::size_t>(t) - i];
      if (i <= spec.alpha.size()) s += spec.alpha[i - 1] * std::abs(past);
      if (i <= spec.alpha_minus.size() && past < 0.0) s += spec.alpha_minus[i - 1] * (-past);
    }
    const double eps = s * normal(rng);
    double v = eps;
    for (const ArTerm& term : ar) {
      if (term.lag > t) break;
      v += term.coef * y[static_cast<std::size_t>(t - term.lag)];
    }
    if (!std::isfinite(v) || std::abs(v) > 1e100) {
      throw Error(ErrorKind::ExplosivePath, "path diverged at generation step " + std::to_string(t));
    }
    sig[static_cast<std::size_t>(t)] = s;
    e[static_cast<std::size_t>(t)] = eps;
    y[static_cast<std::size_t>(t)] = v;
  }

  SimulatedPath out;
  const auto tail = [&](const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data() + spec.burn_in, spec.n);
  };
  out.y = tail(y);
  out.sigma = tail(sig);
  out.eps = tail(e);
  return out;
}

std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(splitmix64(base) ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
}

}  // namespace irwal
