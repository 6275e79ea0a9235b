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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "irwal/design.hpp"

namespace irwal {

// Decimal text with 17 significant digits (round-trips doubles exactly).
std::string format_double(double v);

// Header row of series names, then one row per time point. Every cell must
// parse completely as a number; failures name the row and column.
SeriesPanel parse_panel_csv(std::istream& in, const std::string& source = "<input>");
SeriesPanel read_panel_csv(const std::filesystem::path& path);

void write_panel_csv(std::ostream& out, const SeriesPanel& panel);
void write_panel_csv(const std::filesystem::path& path, const SeriesPanel& panel);

}  // namespace irwal
