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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "irwal/kernels.hpp"

using namespace irwal::kernels;

namespace {

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> z;
  std::vector<double> v(n);
  for (double& x : v) x = z(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar table is always available and listed first") {
  const auto tables = available_tables();
  REQUIRE(!tables.empty());
  CHECK(tables.front() == &scalar_table());
  CHECK(scalar_table().name == "scalar");
}

TEST_CASE("scalar reference kernels") {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6}, c{2, 0.5, -1};
  const KernelTable& s = scalar_table();
  CHECK(s.dot(a.data(), b.data(), 3) == 32.0);
  CHECK(s.dot3(a.data(), b.data(), c.data(), 3) == doctest::Approx(8 + 5 - 18));
  std::vector<double> y{1, 1, 1};
  s.axpy(2.0, a.data(), y.data(), 3);
  CHECK(y == std::vector<double>{3, 5, 7});
  std::vector<double> out(3);
  s.mul(a.data(), b.data(), out.data(), 3);
  CHECK(out == std::vector<double>{4, 10, 18});
  CHECK(s.dot(a.data(), b.data(), 0) == 0.0);
}

TEST_CASE("vectorized kernels agree with the scalar reference") {
  std::mt19937_64 rng(7);
  const KernelTable& ref = scalar_table();
  for (const KernelTable* t : available_tables()) {
    CAPTURE(t->name);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 33u, 64u, 127u, 1000u, 4099u}) {
      CAPTURE(n);
      const auto a = random_values(rng, n), b = random_values(rng, n), c = random_values(rng, n);
      double scale = 0.0;
      for (std::size_t i = 0; i < n; ++i) scale += std::abs(a[i] * b[i]);
      CHECK(std::abs(t->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <= 1e-13 * (1.0 + scale));
      double scale3 = 0.0;
      for (std::size_t i = 0; i < n; ++i) scale3 += std::abs(a[i] * b[i] * c[i]);
      CHECK(std::abs(t->dot3(a.data(), b.data(), c.data(), n) - ref.dot3(a.data(), b.data(), c.data(), n)) <=
            1e-13 * (1.0 + scale3));

      auto y1 = b, y2 = b;
      ref.axpy(0.37, a.data(), y1.data(), n);
      t->axpy(0.37, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));

      std::vector<double> m1(n), m2(n);
      ref.mul(a.data(), b.data(), m1.data(), n);
      t->mul(a.data(), b.data(), m2.data(), n);
      CHECK(m1 == m2);
    }
  }
}

TEST_CASE("unaligned pointers are handled") {
  std::mt19937_64 rng(11);
  const auto a = random_values(rng, 101), b = random_values(rng, 101);
  for (const KernelTable* t : available_tables()) {
    for (std::size_t off = 0; off < 4; ++off) {
      const double got = t->dot(a.data() + off, b.data() + off, 97);
      const double want = scalar_table().dot(a.data() + off, b.data() + off, 97);
      CHECK(got == doctest::Approx(want).epsilon(1e-13));
    }
  }
}

TEST_CASE("active table is one of the available tables") {
  const auto tables = available_tables();
  const KernelTable* act = &active();
  CHECK(std::find(tables.begin(), tables.end(), act) != tables.end());
#if defined(IRWAL_TEST_EXPECT_AVX2)
  CHECK(act->name == "avx2");
#endif
  if (cpu_supports_avx2_fma() && avx2_table() != nullptr) {
    CHECK(tables.size() >= 2);
  }
}
