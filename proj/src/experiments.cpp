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

#include "irwal/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "irwal/design.hpp"
#include "irwal/error.hpp"
#include "irwal/io.hpp"
#include "irwal/irwal.hpp"
#include "irwal/parallel.hpp"

namespace irwal {
namespace {

struct MetricKey {
  std::string metric;
  int k = 0;
  double lambda = kNoLambda;
};

// Per-replication output: one value per key of the study's layout.
struct RepOutcome {
  bool ok = false;
  std::string error;
  std::vector<double> values;
  long nesting_checks = 0;
  long nesting_violations = 0;
};

struct Sample {
  SeriesPanel panel;  // what the estimator sees
  SeriesPanel full;   // including held-out points
  Design design;
  std::vector<char> relevant;  // per design column
  std::vector<int> support;    // true AR lags within the candidate horizon
};

Sample draw_sample(const DgpSpec& dgp, long n, int rep, const StudyOptions& opts, int holdout) {
  const int L = candidate_horizon(n);
  DgpSpec spec = dgp;
  spec.n = n + L + holdout;
  spec.seed = stream_seed(stream_seed(dgp.seed, static_cast<std::uint64_t>(n)), static_cast<std::uint64_t>(rep));
  const SimulatedPath path = simulate_path(spec);

  Sample s;
  s.full = SeriesPanel(path.y.transpose(), {"y"});
  s.panel = holdout > 0 ? s.full.head(n + L) : s.full;
  s.design = build_ar_design(s.panel, 0, LagIndexSets::contiguous(1, L), opts.include_intercept);
  for (const ArTerm& t : ar_coefficients(dgp, L)) s.support.push_back(t.lag);
  for (const Column& c : s.design.columns) {
    s.relevant.push_back(!c.is_intercept() &&
                         std::binary_search(s.support.begin(), s.support.end(), c.lag));
  }
  return s;
}

IrwalConfig study_config(const DgpSpec& dgp, const StudyOptions& opts) {
  IrwalConfig cfg;
  cfg.vol_spec = VolatilitySpec::with_horizon(1, opts.vol_horizon, opts.delta, dgp.vol_kind == VolKind::Tarch);
  cfg.k_max = opts.k_max();
  // Run every iteration; a run can only stop early when the fitted scales
  // repeat exactly, and then later iterates coincide with the last one.
  cfg.stop_epsilon = std::numeric_limits<double>::min();
  cfg.solver = opts.solver;
  return cfg;
}

const Eigen::VectorXd& beta_at(const IrwalResult& res, int k) {
  const int idx = std::min(k, res.stopped_at) - 1;
  return res.iterations[static_cast<std::size_t>(idx)].fit.beta;
}

IrwalWarmStart warm_from(const IrwalResult& res, int k_max) {
  IrwalWarmStart warm;
  for (int k = 1; k <= k_max; ++k) warm.push_back(beta_at(res, k));
  return warm;
}

// Fixed-lambda IRWAL at every grid value, warm-started along the grid.
template <class Visit>
void fixed_lambda_sweep(const Design& design, const IrwalConfig& base, const std::vector<double>& grid,
                        Visit&& visit) {
  IrwalWarmStart warm;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    IrwalConfig cfg = base;
    cfg.lambda_policy = FixedLambda{grid[g]};
    const IrwalResult res = irwal_fit(design, cfg, {}, 0, warm.empty() ? nullptr : &warm);
    visit(g, res);
    warm = warm_from(res, base.k_max);
  }
}

std::pair<double, double> inclusion(const Eigen::VectorXd& beta, const std::vector<char>& relevant,
                                    const Design& design) {
  double rel = 0.0, irr = 0.0, n_rel = 0.0, n_irr = 0.0;
  for (Index j = 0; j < beta.size(); ++j) {
    if (design.is_intercept(j)) continue;
    const bool active = beta(j) != 0.0;
    if (relevant[static_cast<std::size_t>(j)]) {
      n_rel += 1.0;
      rel += active;
    } else {
      n_irr += 1.0;
      irr += active;
    }
  }
  return {n_rel > 0 ? rel / n_rel : 0.0, n_irr > 0 ? irr / n_irr : 0.0};
}

// K(BIC) <= K(HQC) <= K(AIC) on one path.
void tally_nesting(const SelectionReport& report, long& checks, long& violations) {
  const auto K = [&](Criterion c) { return report.records[report.chosen_for(c)].K; };
  ++checks;
  if (!(K(Criterion::Bic) <= K(Criterion::Hqc) && K(Criterion::Hqc) <= K(Criterion::Aic))) ++violations;
}

McReport aggregate(std::string study, const std::vector<long>& n_values,
                   const std::vector<std::vector<RepOutcome>>& outcomes,
                   const std::vector<MetricKey>& layout, int requested) {
  McReport report;
  report.study = std::move(study);
  report.requested_replications = requested;
  report.n_values = n_values;
  for (std::size_t a = 0; a < n_values.size(); ++a) {
    std::vector<double> sums(layout.size(), 0.0);
    int ok = 0, failed = 0;
    for (const RepOutcome& o : outcomes[a]) {
      if (!o.ok) {
        ++failed;
        report.failure_messages.push_back("n=" + std::to_string(n_values[a]) + ": " + o.error);
        continue;
      }
      ++ok;
      for (std::size_t m = 0; m < layout.size(); ++m) sums[m] += o.values[m];
      report.ic_nesting_checks += o.nesting_checks;
      report.ic_nesting_violations += o.nesting_violations;
    }
    report.completed.push_back(ok);
    report.failed.push_back(failed);
    for (std::size_t m = 0; m < layout.size(); ++m) {
      McRow row;
      row.lambda = layout[m].lambda;
      row.k = layout[m].k;
      row.n = n_values[a];
      row.metric = layout[m].metric;
      row.value = ok > 0 ? sums[m] / ok : std::numeric_limits<double>::quiet_NaN();
      row.n_reps = ok;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

template <class Work>
std::vector<std::vector<RepOutcome>> run_replications(const std::vector<long>& n_values, int reps, int threads,
                                                      Work&& work) {
  std::vector<std::vector<RepOutcome>> out(n_values.size(), std::vector<RepOutcome>(static_cast<std::size_t>(reps)));
  const std::size_t total = n_values.size() * static_cast<std::size_t>(reps);
  parallel_for(total, threads, [&](std::size_t i) {
    const std::size_t a = i / static_cast<std::size_t>(reps);
    const int r = static_cast<int>(i % static_cast<std::size_t>(reps));
    RepOutcome& o = out[a][static_cast<std::size_t>(r)];
    try {
      work(n_values[a], r, o);
      o.ok = true;
    } catch (const std::exception& e) {
      o.ok = false;
      o.error = e.what();
    }
  });
  return out;
}

std::string ic_metric(std::string_view base, Criterion c) {
  return std::string(base) + "_" + std::string(to_string(c));
}

}  // namespace

void StudyOptions::validate() const {
  if (replications < 1) throw Error(ErrorKind::Config, "replications must be at least 1");
  if (k_list.empty()) throw Error(ErrorKind::Config, "k_list is empty");
  for (int k : k_list) {
    if (k < 1) throw Error(ErrorKind::Config, "iterations in k_list must be >= 1");
  }
  if (grid.empty()) throw Error(ErrorKind::Config, "lambda grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] < grid[i - 1])) throw Error(ErrorKind::Config, "lambda grid must be strictly descending");
  }
  if (vol_horizon < 1) throw Error(ErrorKind::Config, "volatility horizon must be positive");
}

int StudyOptions::k_max() const { return *std::max_element(k_list.begin(), k_list.end()); }

int candidate_horizon(long n) {
  return static_cast<int>(std::floor(5.0 * std::sqrt(static_cast<double>(n))));
}

std::optional<double> McReport::value(std::string_view metric, long n, int k,
                                      std::optional<double> lambda) const {
  for (const McRow& r : rows) {
    if (r.metric != metric || r.n != n || r.k != k) continue;
    if (lambda ? r.lambda == *lambda : std::isnan(r.lambda)) return r.value;
  }
  return std::nullopt;
}

std::vector<double> McReport::series(std::string_view metric, long n, int k,
                                     const std::vector<double>& grid) const {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double lam : grid) {
    const auto v = value(metric, n, k, lam);
    if (!v) throw Error(ErrorKind::InvalidInput, "report has no '" + std::string(metric) + "' row for that key");
    out.push_back(*v);
  }
  return out;
}

McReport run_inclusion_study(const DgpSpec& dgp, const std::vector<long>& n_values, const StudyOptions& opts) {
  opts.validate();
  std::vector<MetricKey> layout;
  for (int k : opts.k_list) {
    for (double lam : opts.grid) {
      layout.push_back({"relevant_inclusion", k, lam});
      layout.push_back({"irrelevant_inclusion", k, lam});
    }
    for (Criterion c : opts.criteria) {
      layout.push_back({ic_metric("relevant_inclusion", c), k, kNoLambda});
      layout.push_back({ic_metric("irrelevant_inclusion", c), k, kNoLambda});
      layout.push_back({ic_metric("log2_lambda", c), k, kNoLambda});
    }
  }
  const IrwalConfig base = study_config(dgp, opts);

  auto outcomes = run_replications(n_values, opts.replications, opts.threads, [&](long n, int rep, RepOutcome& o) {
    const Sample s = draw_sample(dgp, n, rep, opts, 0);
    const std::size_t G = opts.grid.size();
    // [k index][grid index] -> (relevant, irrelevant)
    std::vector<std::vector<std::pair<double, double>>> path(opts.k_list.size(), std::vector<std::pair<double, double>>(G));
    fixed_lambda_sweep(s.design, base, opts.grid, [&](std::size_t g, const IrwalResult& res) {
      for (std::size_t a = 0; a < opts.k_list.size(); ++a) {
        path[a][g] = inclusion(beta_at(res, opts.k_list[a]), s.relevant, s.design);
      }
    });
    std::vector<std::vector<std::array<double, 3>>> ic(opts.k_list.size(),
                                                       std::vector<std::array<double, 3>>(opts.criteria.size()));
    for (std::size_t c = 0; c < opts.criteria.size(); ++c) {
      IrwalConfig cfg = base;
      cfg.lambda_policy = GridSelection{opts.grid, opts.criteria[c]};
      const IrwalResult res = irwal_fit(s.design, cfg);
      for (const auto& rec : res.iterations) tally_nesting(*rec.selection, o.nesting_checks, o.nesting_violations);
      for (std::size_t a = 0; a < opts.k_list.size(); ++a) {
        const auto [rel, irr] = inclusion(beta_at(res, opts.k_list[a]), s.relevant, s.design);
        const int idx = std::min(opts.k_list[a], res.stopped_at) - 1;
        ic[a][c] = {rel, irr, std::log2(res.iterations[static_cast<std::size_t>(idx)].lambda)};
      }
    }
    for (std::size_t a = 0; a < opts.k_list.size(); ++a) {
      for (std::size_t g = 0; g < G; ++g) {
        o.values.push_back(path[a][g].first);
        o.values.push_back(path[a][g].second);
      }
      for (std::size_t c = 0; c < opts.criteria.size(); ++c) {
        for (double v : ic[a][c]) o.values.push_back(v);
      }
    }
  });
  return aggregate("inclusion", n_values, outcomes, layout, opts.replications);
}

McReport run_mae_study(const DgpSpec& dgp, long n, const StudyOptions& opts, bool oracle) {
  opts.validate();
  std::vector<MetricKey> layout;
  for (int k : opts.k_list) {
    for (double lam : opts.grid) {
      layout.push_back({"mae", k, lam});
      if (oracle) layout.push_back({"mae_oracle", k, lam});
    }
  }
  const IrwalConfig base = study_config(dgp, opts);
  const std::vector<long> n_values{n};

  auto outcomes = run_replications(n_values, opts.replications, opts.threads, [&](long nn, int rep, RepOutcome& o) {
    const Sample s = draw_sample(dgp, nn, rep, opts, 1);
    const Index t_next = s.panel.length();
    const double actual = s.full(0, t_next);
    const std::size_t G = opts.grid.size();

    auto forecast_errors = [&](const Design& design) {
      const Eigen::RowVectorXd row = design_row(s.full, design, t_next);
      std::vector<std::vector<double>> err(opts.k_list.size(), std::vector<double>(G));
      fixed_lambda_sweep(design, base, opts.grid, [&](std::size_t g, const IrwalResult& res) {
        for (std::size_t a = 0; a < opts.k_list.size(); ++a) {
          err[a][g] = std::abs(row.dot(beta_at(res, opts.k_list[a])) - actual);
        }
      });
      return err;
    };

    const auto full_err = forecast_errors(s.design);
    std::vector<std::vector<double>> oracle_err;
    if (oracle) {
      std::vector<Index> keep;
      for (Index j = 0; j < s.design.cols(); ++j) {
        if (s.design.is_intercept(j) || s.relevant[static_cast<std::size_t>(j)]) keep.push_back(j);
      }
      oracle_err = forecast_errors(select_columns(s.design, keep));
    }
    for (std::size_t a = 0; a < opts.k_list.size(); ++a) {
      for (std::size_t g = 0; g < G; ++g) {
        o.values.push_back(full_err[a][g]);
        if (oracle) o.values.push_back(oracle_err[a][g]);
      }
    }
  });
  return aggregate("mae", n_values, outcomes, layout, opts.replications);
}

TrendTable run_consistency_trend(const DgpSpec& dgp, const std::vector<long>& n_values, Criterion criterion,
                                 int k, const StudyOptions& opts) {
  opts.validate();
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (!(n_values[i] > n_values[i - 1])) throw Error(ErrorKind::Config, "n values must be ascending");
  }
  StudyOptions o2 = opts;
  o2.k_list = {k};
  IrwalConfig cfg = study_config(dgp, o2);
  cfg.lambda_policy = GridSelection{opts.grid, criterion};
  const std::vector<MetricKey> layout{{"sign_recovery", k, kNoLambda}};

  auto outcomes = run_replications(n_values, opts.replications, opts.threads, [&](long n, int rep, RepOutcome& o) {
    const Sample s = draw_sample(dgp, n, rep, o2, 0);
    const IrwalResult res = irwal_fit(s.design, cfg);
    const Eigen::VectorXd& beta = beta_at(res, k);
    bool recovered = true;
    if (s.support.empty()) {
      for (Index j = 0; j < beta.size(); ++j) {
        if (!s.design.is_intercept(j) && beta(j) != 0.0) recovered = false;
      }
    } else {
      const std::vector<ArTerm> truth = ar_coefficients(dgp, candidate_horizon(n));
      const std::size_t checked = std::min<std::size_t>(3, truth.size());
      for (std::size_t i = 0; i < checked; ++i) {
        for (Index j = 0; j < s.design.cols(); ++j) {
          const Column& c = s.design.columns[static_cast<std::size_t>(j)];
          if (c.is_intercept() || c.lag != truth[i].lag) continue;
          const double want = truth[i].coef > 0.0 ? 1.0 : -1.0;
          if (!(beta(j) * want > 0.0)) recovered = false;
        }
      }
    }
    o.values.push_back(recovered ? 1.0 : 0.0);
  });

  TrendTable table;
  table.report = aggregate("trend", n_values, outcomes, layout, opts.replications);
  table.n_values = n_values;
  table.completed = table.report.completed;
  for (long n : n_values) table.recovery.push_back(*table.report.value("sign_recovery", n, k));
  for (std::size_t i = 1; i < table.recovery.size(); ++i) {
    const double drop = table.recovery[i - 1] - table.recovery[i];
    if (drop > 0.0) {
      ++table.inversions;
      table.max_inversion = std::max(table.max_inversion, drop);
    }
  }
  return table;
}

void write_report_csv(std::ostream& out, const McReport& report) {
  out << "lambda,k,n,metric,value,n_reps\n";
  for (const McRow& r : report.rows) {
    out << (std::isnan(r.lambda) ? std::string("NA") : format_double(r.lambda)) << ',' << r.k << ',' << r.n
        << ',' << r.metric << ',' << format_double(r.value) << ',' << r.n_reps << '\n';
  }
}

void write_report_csv(const std::filesystem::path& path, const McReport& report) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  write_report_csv(out, report);
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

}  // namespace irwal
