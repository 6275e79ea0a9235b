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

#include <cstdlib>
#include <string_view>

#include "irwal/kernels.hpp"

namespace irwal::kernels {

#if !defined(IRWAL_HAVE_AVX2)
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif
#if !defined(IRWAL_HAVE_NEON)
const KernelTable* neon_table() noexcept { return nullptr; }
#endif

bool cpu_supports_avx2_fma() noexcept {
#if defined(IRWAL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&scalar_table()};
  if (avx2_table() != nullptr && cpu_supports_avx2_fma()) out.push_back(avx2_table());
  // NEON is mandatory on aarch64, so a compiled-in table is always runnable.
  if (neon_table() != nullptr) out.push_back(neon_table());
  return out;
}

namespace {

const KernelTable& select_table() {
  const auto tables = available_tables();
  if (const char* forced = std::getenv("IRWAL_KERNELS")) {
    for (const KernelTable* t : tables) {
      if (t->name == std::string_view(forced)) return *t;
    }
  }
  return *tables.back();
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable& table = select_table();
  return table;
}

}  // namespace irwal::kernels
