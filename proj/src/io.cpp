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

#include "irwal/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "irwal/error.hpp"

namespace irwal {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SeriesPanel parse_panel_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> names;
  while (names.empty() && std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    for (auto cell : split(line)) {
      if (cell.empty()) {
        throw Error(ErrorKind::Parse, source + ": empty series name in header (row " +
                                          std::to_string(line_no) + ")");
      }
      names.emplace_back(cell);
    }
  }
  if (names.empty()) throw Error(ErrorKind::Parse, source + ": no header row");

  const std::size_t d = names.size();
  std::vector<double> values;
  std::size_t T = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != d) {
      throw Error(ErrorKind::Parse, source + ": row " + std::to_string(line_no) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(d));
    }
    for (std::size_t c = 0; c < d; ++c) {
      double v = 0.0;
      const auto cell = cells[c];
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw Error(ErrorKind::Parse, source + ": row " + std::to_string(line_no) + ", column " +
                                          std::to_string(c + 1) + " (" + names[c] +
                                          "): not a number '" + std::string(cell) + "'");
      }
      values.push_back(v);
    }
    ++T;
  }
  if (T == 0) throw Error(ErrorKind::Parse, source + ": no data rows");
  Eigen::MatrixXd panel(static_cast<Index>(d), static_cast<Index>(T));
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t c = 0; c < d; ++c) panel(static_cast<Index>(c), static_cast<Index>(t)) = values[t * d + c];
  }
  return SeriesPanel(std::move(panel), std::move(names));
}

SeriesPanel read_panel_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return parse_panel_csv(in, path.string());
}

void write_panel_csv(std::ostream& out, const SeriesPanel& panel) {
  for (Index i = 0; i < panel.num_series(); ++i) {
    out << (i ? "," : "") << panel.names()[static_cast<std::size_t>(i)];
  }
  out << '\n';
  for (Index t = 0; t < panel.length(); ++t) {
    for (Index i = 0; i < panel.num_series(); ++i) out << (i ? "," : "") << format_double(panel(i, t));
    out << '\n';
  }
}

void write_panel_csv(const std::filesystem::path& path, const SeriesPanel& panel) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  write_panel_csv(out, panel);
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

}  // namespace irwal
