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

// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <string>
#include <thread>

#include "irwal/cli.hpp"
#include "irwal/experiments.hpp"
#include "irwal/nnls.hpp"
#include "irwal/simulate.hpp"
#include "irwal/volatility.hpp"
#include "irwal/wlasso.hpp"
#include "test_support.hpp"

using namespace irwal;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& fn) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  failures += !o.pass;
  std::printf("%s %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int hardware_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

StudyOptions desk_options(std::vector<int> k_list) {
  StudyOptions o;
  o.replications = 200;
  o.k_list = std::move(k_list);
  o.threads = hardware_threads();
  return o;
}

Outcome solver_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  SolverOptions tight;
  tight.tol = 1e-12;
  double worst_obj = 0.0, worst_kkt = 0.0;
  for (int inst = 0; inst < 100; ++inst) {
    const Design d = testing::random_design(rng, 50, 8);
    const Eigen::VectorXd w = testing::positive_weights(rng, 50);
    for (double lambda : {0.0, 0.1, 1.0}) {
      const PenaltySpec pen = PenaltySpec::make(d, lambda);
      const auto oracle = testing::sign_pattern_oracle(d, w, pen.weights, lambda);
      const auto fit = solve_weighted_lasso(d, w, pen, nullptr, tight);
      worst_obj = std::max(worst_obj, std::abs(fit.objective - oracle.objective));
      worst_kkt = std::max(worst_kkt, check_kkt(d, w, pen, fit.beta));
    }
  }
  const double secs = seconds_since(start);
  return {worst_obj <= 1e-8 && worst_kkt < 1e-6 && secs < 10.0,
          fmt("max objective gap %.3g, max KKT violation %.3g, %.2f s", worst_obj, worst_kkt, secs)};
}

double subset_oracle(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const Index m = A.cols();
  double best = b.squaredNorm();
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<Index> cols;
    for (Index j = 0; j < m; ++j)
      if (mask & (1u << j)) cols.push_back(j);
    Eigen::MatrixXd As(A.rows(), static_cast<Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) As.col(static_cast<Index>(k)) = A.col(cols[k]);
    const Eigen::VectorXd x = As.colPivHouseholderQr().solve(b);
    if ((x.array() < 0.0).any()) continue;
    best = std::min(best, (b - As * x).squaredNorm());
  }
  return best;
}

Outcome nnls_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(202);
  double worst_obj = 0.0, worst_dual = 0.0;
  bool feasible = true;
  for (int inst = 0; inst < 100; ++inst) {
    const Eigen::MatrixXd A = testing::gaussian_matrix(rng, 20, 6);
    const Eigen::VectorXd b = testing::gaussian_vector(rng, 20);
    const NnlsSolution s = solve_nnls(A, b);
    feasible = feasible && (s.alpha.array() >= 0.0).all();
    worst_obj = std::max(worst_obj, std::abs((b - A * s.alpha).squaredNorm() - subset_oracle(A, b)));
    const Eigen::VectorXd g = A.transpose() * (b - A * s.alpha);
    for (Index j = 0; j < 6; ++j) {
      worst_dual = std::max(worst_dual, s.alpha(j) > 0.0 ? std::abs(g(j)) : std::max(0.0, g(j)));
    }
  }
  const double secs = seconds_since(start);
  return {feasible && worst_obj <= 1e-8 && worst_dual <= 1e-8 && secs < 5.0,
          fmt("max objective gap %.3g, max dual violation %.3g, %.2f s", worst_obj, worst_dual, secs)};
}

Outcome weight_lambda_equivalence() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    const Design d = testing::random_design(rng, 60, 10);
    const Eigen::VectorXd w = testing::positive_weights(rng, 60);
    const double lambda = 2.0;
    const auto base = solve_weighted_lasso(d, w, PenaltySpec::make(d, lambda));
    for (double c : {0.5, 2.0, 10.0}) {
      const auto scaled = solve_weighted_lasso(d, c * w, PenaltySpec::make(d, lambda * c * c));
      worst = std::max(worst, (scaled.beta - base.beta).cwiseAbs().maxCoeff());
    }
  }
  return {worst <= 1e-6, fmt("max coefficient difference %.3g", worst)};
}

Outcome gamma_recovery() {
  VolatilitySpec spec;
  spec.lag_sets = LagIndexSets::own_series(1, 2);
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(7000 + seed);
    const VolatilityFit fit = fit_volatility({testing::gaussian_vector(rng, 5000)}, spec, 0);
    inside += std::abs(fit.gamma_hat - 0.798) <= 0.02;
  }
  return {inside >= 95, fmt("%d of 100 seeds within 0.798 +- 0.02", inside)};
}

Outcome coefficient_rule() {
  DgpSpec spec;
  const double phi = 0.85;
  const int max_lag = 40000 * 40000;
  const std::vector<ArTerm> terms = ar_coefficients(spec, max_lag);
  double worst = 0.0, sum = 0.0;
  bool square = true;
  for (const ArTerm& t : terms) {
    const double root = std::round(std::sqrt(static_cast<double>(t.lag)));
    square = square && root * root == t.lag;
    worst = std::max(worst, std::abs(t.coef - 0.95 * (1.0 / phi - 1.0) * std::pow(phi, root)));
    sum += t.coef;
  }
  const double first = terms.empty() ? 0.0 : terms[0].coef;
  return {square && worst < 1e-15 && std::abs(sum - 0.95) < 1e-6 && terms.size() == 40000,
          fmt("%zu square lags, phi_1 = %.6f, max formula gap %.3g, partial sum %.9f", terms.size(), first, worst,
              sum)};
}

McReport inclusion_report;

Outcome inclusion_separation() {
  const long n = 600;
  const StudyOptions opts = desk_options({1, 2});
  inclusion_report = run_inclusion_study(DgpSpec::arch(n, 6001), {n}, opts);
  const McReport& r = inclusion_report;
  double best = -1.0, best_lambda = 0.0, k1_at_best = 0.0;
  for (double lam : opts.grid) {
    const double sep2 = *r.value("relevant_inclusion", n, 2, lam) - *r.value("irrelevant_inclusion", n, 2, lam);
    if (sep2 > best) {
      best = sep2;
      best_lambda = lam;
      k1_at_best = *r.value("relevant_inclusion", n, 1, lam) - *r.value("irrelevant_inclusion", n, 1, lam);
    }
  }
  return {r.completed[0] == opts.replications && best > 0.3 && best >= k1_at_best,
          fmt("%d reps, best lambda 2^%.2f: separation k=2 %.4f, k=1 %.4f", r.completed[0], std::log2(best_lambda),
              best, k1_at_best)};
}

Outcome mae_ordering() {
  const StudyOptions opts = desk_options({1, 2});
  bool ok = true;
  std::string detail;
  for (VolKind kind : {VolKind::Arch, VolKind::Tarch}) {
    for (long n : {300L, 600L}) {
      const DgpSpec dgp = kind == VolKind::Arch ? DgpSpec::arch(n, 7001) : DgpSpec::tarch(n, 7001);
      const McReport r = run_mae_study(dgp, n, opts, false);
      double m1 = 1e300, m2 = 1e300;
      for (double lam : opts.grid) {
        m1 = std::min(m1, *r.value("mae", n, 1, lam));
        m2 = std::min(m2, *r.value("mae", n, 2, lam));
      }
      const bool pass = r.completed[0] == opts.replications && m2 <= m1 * 1.01;
      ok = ok && pass;
      detail += fmt("%s%s n=%ld k1 %.4f k2 %.4f", detail.empty() ? "" : "; ", std::string(to_string(kind)).c_str(),
                    n, m1, m2);
    }
  }
  return {ok, detail};
}

Outcome consistency_trend() {
  const TrendTable t =
      run_consistency_trend(DgpSpec::arch(300, 8001), {300, 600, 1200}, Criterion::Bic, 2, desk_options({2}));
  bool complete = true;
  for (int c : t.completed) complete = complete && c == 200;
  return {complete && t.inversions <= 1 && t.max_inversion <= 0.03,
          fmt("recovery %.3f, %.3f, %.3f; %d inversions, max %.3f", t.recovery[0], t.recovery[1], t.recovery[2],
              t.inversions, t.max_inversion)};
}

Outcome ic_nesting() {
  const McReport& r = inclusion_report;
  return {r.ic_nesting_checks > 0 && r.ic_nesting_violations == 0,
          fmt("%ld violations over %ld selection checks", r.ic_nesting_violations, r.ic_nesting_checks)};
}

Outcome protocol_fit() {
  const fs::path out = fs::temp_directory_path() / "irwal_acceptance_fit";
  fs::remove_all(out);
  RunConfig cfg;
  cfg.command = "fit";
  cfg.input = std::string(IRWAL_DATA_DIR) + "/hourly_pair.csv";
  cfg.out = out.string();
  cfg.mean_lags = 700;
  cfg.vol_lags = 700;
  cfg.criterion = "bic";
  cfg.tau = 0.0;
  cfg.k_max = 3;
  cfg.stop_epsilon = 1e-12;
  cfg.threads = hardware_threads();
  std::ostringstream log, err;
  const int rc = run_command(cfg, log, err);
  if (rc != kExitOk) return {false, "exit status " + std::to_string(rc) + ": " + err.str()};
  std::ifstream in(out / "manifest.json");
  const auto manifest = nlohmann::json::parse(in);
  bool all_present = true;
  for (const auto& a : manifest["artifacts"]) all_present = all_present && fs::exists(out / a.get<std::string>());
  std::ifstream sin(out / "summary.json");
  const auto summary = nlohmann::json::parse(sin);
  bool three = summary["series"].size() == 2;
  std::string counts;
  for (const auto& s : summary["series"]) {
    three = three && s.contains("iterations") && s["iterations"].size() == 3;
    counts += fmt("%s%s active %d", counts.empty() ? "" : ", ", s["name"].get<std::string>().c_str(),
                  s.value("active_count", -1));
  }
  bool artifacts = fs::exists(out / "manifest.json") && manifest["artifacts"].size() == 7;
  for (const char* f : {"summary.json", "coefficients_price.csv", "coefficients_load.csv", "volatility_price.csv",
                        "volatility_load.csv", "sigma_price.csv", "sigma_load.csv"}) {
    artifacts = artifacts && fs::exists(out / f);
  }
  return {all_present && artifacts && three,
          fmt("%zu artifacts plus manifest, 3 iterations per series: %s; %s", manifest["artifacts"].size(), three ? "yes" : "no",
              counts.c_str())};
}

}  // namespace

int main() {
  std::printf("threads: %d\n", hardware_threads());
  report(1, "weighted lasso matches the sign-pattern oracle", solver_oracle);
  report(2, "nnls matches subset enumeration", nnls_oracle);
  report(3, "weight scaling equals lambda rescaling", weight_lambda_equivalence);
  report(4, "gamma of standard normal residuals", gamma_recovery);
  report(5, "square-lag coefficient rule", coefficient_rule);
  report(6, "inclusion separation at n=600", inclusion_separation);
  report(7, "one-step MAE k=2 vs k=1", mae_ordering);
  report(8, "BIC sign-recovery trend", consistency_trend);
  report(9, "information criteria nest", ic_nesting);
  report(10, "two-series 700-lag fit protocol", protocol_fit);
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "SOME FAILED", failures);
  return failures == 0 ? 0 : 1;
}
