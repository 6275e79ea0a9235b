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

#include "irwal/error.hpp"

namespace irwal {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::InsufficientData: return "insufficient data";
    case ErrorKind::EmptyDesign: return "empty design";
    case ErrorKind::DegenerateColumn: return "degenerate column";
    case ErrorKind::InvalidWeights: return "invalid weights";
    case ErrorKind::ShapeMismatch: return "shape mismatch";
    case ErrorKind::MaxPivots: return "max pivots exceeded";
    case ErrorKind::DegenerateScale: return "degenerate scale";
    case ErrorKind::NumericFailure: return "numeric failure";
    case ErrorKind::ExplosivePath: return "explosive path";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Io: return "i/o error";
    case ErrorKind::Config: return "config error";
  }
  return "error";
}

}  // namespace irwal
