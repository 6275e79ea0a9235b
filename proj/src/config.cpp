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

#include "irwal/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <sstream>

#include "irwal/error.hpp"
#include "irwal/io.hpp"
#include "irwal/parallel.hpp"

namespace irwal {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
  throw Error(ErrorKind::Config,
              "key '" + std::string(key) + "': cannot read '" + std::string(value) + "' as " + std::string(what));
}

template <class T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    bad_value(key, v, std::is_floating_point_v<T> ? "a number" : "an integer");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(out)) bad_value(key, v, "a finite number");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v, "a boolean");
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view v) {
  std::vector<T> out;
  if (v.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = v.find(',', start);
    out.push_back(parse_number<T>(key, trim(v.substr(start, comma - start))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string choice(std::string_view key, std::string_view v, std::initializer_list<std::string_view> allowed) {
  for (auto a : allowed) {
    if (v == a) return std::string(v);
  }
  std::string list;
  for (auto a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
  bad_value(key, v, list);
}

std::string fmt(double v) { return format_double(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }
template <class T>
std::string fmt_opt(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, double>) {
    return fmt(*v);
  } else {
    return std::to_string(*v);
  }
}
template <class T>
std::string fmt_list(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

struct KeyDef {
  std::string name;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define IRWAL_STR(field)                                                                      \
  KeyDef {                                                                                    \
    #field, [](RunConfig& c, std::string_view v) { c.field = std::string(v); },               \
        [](const RunConfig& c) { return c.field; }                                             \
  }
#define IRWAL_CHOICE(field, ...)                                                              \
  KeyDef {                                                                                    \
    #field, [](RunConfig& c, std::string_view v) { c.field = choice(#field, v, {__VA_ARGS__}); }, \
        [](const RunConfig& c) { return c.field; }                                             \
  }
#define IRWAL_NUM(field, T)                                                                   \
  KeyDef {                                                                                    \
    #field, [](RunConfig& c, std::string_view v) { c.field = parse_number<T>(#field, v); },   \
        [](const RunConfig& c) {                                                               \
          if constexpr (std::is_floating_point_v<T>) return fmt(static_cast<double>(c.field)); \
          else return std::to_string(c.field);                                                 \
        }                                                                                      \
  }
#define IRWAL_OPT(field, T)                                                                   \
  KeyDef {                                                                                    \
    #field,                                                                                   \
        [](RunConfig& c, std::string_view v) {                                                 \
          if (v.empty()) c.field.reset();                                                      \
          else c.field = parse_number<T>(#field, v);                                           \
        },                                                                                     \
        [](const RunConfig& c) { return fmt_opt(c.field); }                                    \
  }
#define IRWAL_BOOL(field)                                                                     \
  KeyDef {                                                                                    \
    #field, [](RunConfig& c, std::string_view v) { c.field = parse_bool(#field, v); },        \
        [](const RunConfig& c) { return fmt(c.field); }                                        \
  }
#define IRWAL_LIST(field, T)                                                                  \
  KeyDef {                                                                                    \
    #field, [](RunConfig& c, std::string_view v) { c.field = parse_list<T>(#field, v); },     \
        [](const RunConfig& c) { return fmt_list(c.field); }                                   \
  }

const std::vector<KeyDef>& registry() {
  static const std::vector<KeyDef> defs{
      IRWAL_CHOICE(command, "fit", "simulate", "bench-inclusion", "bench-mae", "bench-trend"),
      IRWAL_STR(input),
      IRWAL_STR(out),
      IRWAL_NUM(seed, std::uint64_t),
      IRWAL_NUM(threads, int),
      KeyDef{"intercept",
             [](RunConfig& c, std::string_view v) {
               if (v.empty()) c.intercept.reset();
               else c.intercept = parse_bool("intercept", v);
             },
             [](const RunConfig& c) { return fmt_opt(c.intercept); }},
      IRWAL_NUM(mean_lags, int),
      IRWAL_CHOICE(lambda_units, "per_unit_weight", "objective"),
      IRWAL_OPT(lambda, double),
      IRWAL_NUM(lambda_grid_from, double),
      IRWAL_NUM(lambda_grid_to, double),
      IRWAL_NUM(lambda_grid_length, int),
      IRWAL_CHOICE(criterion, "aic", "hqc", "bic"),
      IRWAL_CHOICE(ic_residuals, "weighted", "unweighted"),
      IRWAL_NUM(tau, double),
      IRWAL_CHOICE(beta_init, "none", "ols", "lasso"),
      IRWAL_NUM(solver_tol, double),
      IRWAL_NUM(max_sweeps, int),
      IRWAL_NUM(k_max, int),
      IRWAL_OPT(stop_epsilon, double),
      IRWAL_CHOICE(stop_norm, "maxabs", "euclidean"),
      IRWAL_NUM(delta, double),
      IRWAL_NUM(vol_lags, int),
      IRWAL_BOOL(threshold),
      IRWAL_OPT(sigma_floor, double),
      IRWAL_NUM(n, long),
      IRWAL_NUM(burn_in, int),
      IRWAL_CHOICE(vol_kind, "arch", "tarch"),
      IRWAL_NUM(phi, double),
      IRWAL_NUM(mass, double),
      IRWAL_OPT(alpha0, double),
      IRWAL_OPT(alpha1, double),
      IRWAL_OPT(alpha2, double),
      IRWAL_OPT(alpha1_minus, double),
      IRWAL_OPT(alpha2_minus, double),
      IRWAL_NUM(generation_horizon, int),
      IRWAL_OPT(reps, int),
      IRWAL_BOOL(full_scale),
      IRWAL_LIST(n_values, long),
      IRWAL_LIST(k_list, int),
      IRWAL_NUM(trend_k, int),
      IRWAL_BOOL(oracle),
  };
  return defs;
}

#undef IRWAL_STR
#undef IRWAL_CHOICE
#undef IRWAL_NUM
#undef IRWAL_OPT
#undef IRWAL_BOOL
#undef IRWAL_LIST

const KeyDef& find_key(std::string_view key) {
  for (const KeyDef& d : registry()) {
    if (d.name == key) return d;
  }
  throw Error(ErrorKind::Config, "unknown config key '" + std::string(key) + "'");
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::Config, msg);
}

}  // namespace

void RunConfig::validate() const {
  require(!out.empty(), "out must not be empty");
  require(threads >= 0, "threads must be >= 0");
  require(mean_lags >= 1, "mean_lags must be >= 1");
  require(vol_lags >= 1, "vol_lags must be >= 1");
  require(lambda_grid_length >= 1, "lambda_grid_length must be >= 1");
  require(lambda_grid_length == 1 || lambda_grid_from > lambda_grid_to,
          "lambda_grid_from must exceed lambda_grid_to");
  require(!lambda || *lambda >= 0.0, "lambda must be >= 0");
  require(tau >= 0.0, "tau must be >= 0");
  require(solver_tol > 0.0, "solver_tol must be positive");
  require(max_sweeps >= 1, "max_sweeps must be >= 1");
  require(k_max >= 1, "k_max must be >= 1");
  require(!stop_epsilon || *stop_epsilon > 0.0, "stop_epsilon must be positive");
  require(delta > 0.0, "delta must be positive");
  require(!sigma_floor || *sigma_floor > 0.0, "sigma_floor must be positive");
  require(n >= 2, "n must be >= 2");
  require(burn_in >= 0, "burn_in must be >= 0");
  require(phi > 0.0 && phi < 1.0, "phi must lie in (0, 1)");
  require(mass >= 0.0 && mass < 1.0, "mass must lie in [0, 1)");
  require(!reps || *reps >= 1, "reps must be >= 1");
  for (long v : n_values) require(v >= 2, "n_values entries must be >= 2");
  require(!k_list.empty(), "k_list must not be empty");
  for (int k : k_list) require(k >= 1, "k_list entries must be >= 1");
  require(trend_k >= 1, "trend_k must be >= 1");
  require(generation_horizon >= 1, "generation_horizon must be >= 1");
}

int RunConfig::resolved_threads() const { return threads > 0 ? threads : default_thread_count(); }

int RunConfig::resolved_reps() const { return reps ? *reps : (full_scale ? 1000 : 200); }

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const KeyDef& d : registry()) k.push_back(d.name);
    return k;
  }();
  return keys;
}

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  find_key(trim(key)).set(cfg, trim(value));
}

std::string get_config_value(const RunConfig& cfg, std::string_view key) { return find_key(key).get(cfg); }

RunConfig parse_config(std::istream& in, RunConfig base, const std::string& source) {
  std::set<std::string, std::less<>> seen;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto where = source + ":" + std::to_string(line_no) + ": ";
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::Config, where + "expected 'key = value'");
    const std::string key(trim(s.substr(0, eq)));
    if (!seen.insert(key).second) throw Error(ErrorKind::Config, where + "duplicate key '" + key + "'");
    try {
      set_config_value(base, key, s.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.kind(), where + e.message());
    }
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
  return parse_config(in, std::move(base), path.string());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  for (const KeyDef& d : registry()) {
    const std::string v = d.get(cfg);
    if (v.empty()) continue;
    out << d.name << " = " << v << '\n';
  }
  return out.str();
}

}  // namespace irwal
