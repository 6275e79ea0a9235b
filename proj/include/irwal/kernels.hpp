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

// Dense double-precision inner loops used by the coordinate-descent solver
// and the volatility fitter. Each kernel has a portable scalar reference
// version and, where the target supports it, a vectorized variant. The
// variant is picked once at first use from the running CPU's capabilities;
// the IRWAL_KERNELS environment variable ("scalar", "avx2", "neon") forces a
// particular table when it is available.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace irwal::kernels {

struct KernelTable {
  std::string_view name;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i a[i] * b[i] * c[i]
  double (*dot3)(const double* a, const double* b, const double* c, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
// nullptr when the variant was not compiled for this target.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

bool cpu_supports_avx2_fma() noexcept;

// Every table that is both compiled in and runnable on this CPU, scalar first.
std::vector<const KernelTable*> available_tables();

const KernelTable& active() noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double dot3(std::span<const double> a, std::span<const double> b,
                   std::span<const double> c) {
  return active().dot3(a.data(), b.data(), c.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void mul(std::span<const double> a, std::span<const double> b,
                std::span<double> out) {
  active().mul(a.data(), b.data(), out.data(), a.size());
}

}  // namespace irwal::kernels
