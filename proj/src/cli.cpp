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

#include "irwal/cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "irwal/error.hpp"
#include "irwal/io.hpp"
#include "irwal/selection.hpp"

namespace irwal {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string file_token(const std::string& name) {
  std::string out;
  for (char ch : name) out += std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' ? ch : '_';
  return out.empty() ? "series" : out;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  finish(out, path);
}

fs::path prepare_out(const RunConfig& cfg) {
  const fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_manifest(const fs::path& dir, const RunConfig& cfg, const std::vector<std::string>& artifacts,
                    json extra = json::object()) {
  json m;
  m["command"] = cfg.command;
  m["version"] = std::string(kVersion);
  m["seed"] = cfg.seed;
  m["config"] = serialize_config(cfg);
  m["artifacts"] = artifacts;
  for (auto& [k, v] : extra.items()) m[k] = v;
  write_text(dir / "manifest.json", m.dump(2) + "\n");
}

std::string source_name(const SeriesPanel& panel, int series) {
  return series < 0 ? std::string("(intercept)") : panel.names()[static_cast<std::size_t>(series)];
}

std::string term_kind(VolTerm::Kind k) {
  switch (k) {
    case VolTerm::Kind::Intercept:
      return "intercept";
    case VolTerm::Kind::Absolute:
      return "abs";
    case VolTerm::Kind::Negative:
      return "neg";
  }
  return "?";
}

json iteration_json(const IterationRecord& rec) {
  json it;
  it["k"] = rec.k;
  it["lambda"] = rec.lambda;
  it["lambda_objective"] = rec.lambda_objective;
  it["active_count"] = rec.active_count;
  it["sigma_change"] = rec.sigma_change;
  it["solver_converged"] = rec.fit.converged;
  it["solver_sweeps"] = rec.fit.n_iters;
  it["gamma_hat"] = rec.volatility.gamma_hat;
  it["volatility_scale"] = rec.volatility.scale;
  if (rec.selection) {
    const SelectionReport& rep = *rec.selection;
    json ic;
    for (Criterion c : kAllCriteria) {
      const SelectionRecord& chosen = rep.records[rep.chosen_for(c)];
      ic[std::string(to_string(c))] = {{"lambda", chosen.lambda},
                                       {"K", chosen.K},
                                       {"value", chosen.gic[static_cast<std::size_t>(c)]}};
    }
    it["ic"] = ic;
  }
  return it;
}

McReport merge_reports(std::vector<McReport> parts) {
  McReport out = std::move(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) {
    McReport& p = parts[i];
    out.rows.insert(out.rows.end(), p.rows.begin(), p.rows.end());
    out.n_values.insert(out.n_values.end(), p.n_values.begin(), p.n_values.end());
    out.completed.insert(out.completed.end(), p.completed.begin(), p.completed.end());
    out.failed.insert(out.failed.end(), p.failed.begin(), p.failed.end());
    out.failure_messages.insert(out.failure_messages.end(), p.failure_messages.begin(), p.failure_messages.end());
    out.ic_nesting_checks += p.ic_nesting_checks;
    out.ic_nesting_violations += p.ic_nesting_violations;
  }
  return out;
}

json report_json(const McReport& r) {
  return {{"study", r.study},
          {"requested_replications", r.requested_replications},
          {"n_values", r.n_values},
          {"completed", r.completed},
          {"failed", r.failed},
          {"failure_messages", r.failure_messages},
          {"ic_nesting_checks", r.ic_nesting_checks},
          {"ic_nesting_violations", r.ic_nesting_violations}};
}

int write_study(const RunConfig& cfg, const McReport& report, const std::string& file, std::ostream& log,
                json extra = json::object()) {
  const fs::path dir = prepare_out(cfg);
  write_report_csv(dir / file, report);
  json info = report_json(report);
  for (auto& [k, v] : extra.items()) info[k] = v;
  write_manifest(dir, cfg, {file}, {{"study", info}});
  for (std::size_t i = 0; i < report.n_values.size(); ++i) {
    log << report.study << " n=" << report.n_values[i] << ": " << report.completed[i] << " completed, "
        << report.failed[i] << " failed\n";
  }
  log << "wrote " << (dir / file).string() << "\n";
  return kExitOk;
}

}  // namespace

IrwalConfig irwal_config_from(const RunConfig& cfg, Index num_series) {
  IrwalConfig c;
  if (cfg.lambda) {
    c.lambda_policy = FixedLambda{*cfg.lambda};
  } else {
    c.lambda_policy = GridSelection{
        exponential_lambda_grid(cfg.lambda_grid_from, cfg.lambda_grid_to, cfg.lambda_grid_length),
        parse_criterion(cfg.criterion)};
  }
  c.lambda_units = cfg.lambda_units == "objective" ? LambdaUnits::Objective : LambdaUnits::PerUnitWeight;
  c.tau = cfg.tau;
  c.beta_init_source = cfg.beta_init == "ols"     ? BetaInitSource::Ols
                       : cfg.beta_init == "lasso" ? BetaInitSource::Lasso
                                                  : BetaInitSource::None;
  c.vol_spec = VolatilitySpec::with_horizon(num_series, cfg.vol_lags, cfg.delta, cfg.threshold);
  c.vol_spec.sigma_floor = cfg.sigma_floor;
  c.k_max = cfg.k_max;
  c.stop_epsilon = cfg.stop_epsilon;
  c.stop_norm = cfg.stop_norm == "euclidean" ? StopNorm::Euclidean : StopNorm::MaxAbs;
  c.ic_residuals = cfg.ic_residuals == "unweighted" ? IcResiduals::Unweighted : IcResiduals::Weighted;
  c.solver.tol = cfg.solver_tol;
  c.solver.max_sweeps = cfg.max_sweeps;
  return c;
}

DgpSpec dgp_from(const RunConfig& cfg) {
  DgpSpec d = parse_vol_kind(cfg.vol_kind) == VolKind::Tarch ? DgpSpec::tarch(cfg.n, cfg.seed)
                                                             : DgpSpec::arch(cfg.n, cfg.seed);
  d.burn_in = cfg.burn_in;
  d.phi_decay = cfg.phi;
  d.mass = cfg.mass;
  if (cfg.alpha0) d.alpha0 = *cfg.alpha0;
  if (cfg.alpha1) d.alpha[0] = *cfg.alpha1;
  if (cfg.alpha2) d.alpha[1] = *cfg.alpha2;
  if (cfg.alpha1_minus) d.alpha_minus[0] = *cfg.alpha1_minus;
  if (cfg.alpha2_minus) d.alpha_minus[1] = *cfg.alpha2_minus;
  d.generation_horizon = cfg.generation_horizon;
  d.validate();
  return d;
}

StudyOptions study_options_from(const RunConfig& cfg) {
  StudyOptions o;
  o.replications = cfg.resolved_reps();
  o.k_list = cfg.k_list;
  o.grid = exponential_lambda_grid(cfg.lambda_grid_from, cfg.lambda_grid_to, cfg.lambda_grid_length);
  o.threads = cfg.resolved_threads();
  o.include_intercept = cfg.intercept.value_or(false);
  o.delta = cfg.delta;
  o.vol_horizon = cfg.vol_lags;
  o.solver.tol = cfg.solver_tol;
  o.solver.max_sweeps = cfg.max_sweeps;
  o.validate();
  return o;
}

int cmd_fit(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (cfg.input.empty()) throw Error(ErrorKind::Config, "fit needs an input CSV (key 'input')");
  const SeriesPanel panel = read_panel_csv(cfg.input);
  const Index d = panel.num_series();
  const IrwalConfig icfg = irwal_config_from(cfg, d);
  icfg.validate();
  const std::vector<IrwalConfig> cfgs(static_cast<std::size_t>(d), icfg);
  const auto outcomes = multivariate_fit(panel, LagIndexSets::contiguous(d, cfg.mean_lags), cfgs,
                                         cfg.intercept.value_or(true), cfg.resolved_threads());

  const fs::path dir = prepare_out(cfg);
  std::vector<std::string> artifacts;
  json summary;
  summary["input"] = cfg.input;
  summary["series"] = json::array();
  bool all_ok = true;

  for (Index i = 0; i < d; ++i) {
    const SeriesOutcome& o = outcomes[static_cast<std::size_t>(i)];
    const std::string name = panel.names()[static_cast<std::size_t>(i)];
    json s;
    s["name"] = name;
    if (!o.result) {
      all_ok = false;
      s["error"] = o.error;
      log << name << ": failed: " << o.error << "\n";
      summary["series"].push_back(s);
      continue;
    }
    const IrwalResult& res = *o.result;
    const Design& design = o.design;
    const IterationRecord& last = res.final();
    const std::string token = file_token(name);

    const std::string coef_file = "coefficients_" + token + ".csv";
    {
      auto out = open_out(dir / coef_file);
      out << "series,lag,coefficient,included\n";
      for (Index j = 0; j < design.cols(); ++j) {
        const Column& c = design.columns[static_cast<std::size_t>(j)];
        out << source_name(panel, c.series) << ',' << c.lag << ',' << format_double(last.beta_original(j)) << ','
            << (last.fit.beta(j) != 0.0 ? 1 : 0) << '\n';
      }
      finish(out, dir / coef_file);
    }
    const std::string vol_file = "volatility_" + token + ".csv";
    {
      auto out = open_out(dir / vol_file);
      out << "term,series,lag,alpha\n";
      const Eigen::VectorXd& alpha = last.volatility.alpha_tilde.alpha;
      for (std::size_t j = 0; j < last.volatility.terms.size(); ++j) {
        const VolTerm& t = last.volatility.terms[j];
        out << term_kind(t.kind) << ',' << (t.series < 0 ? std::string() : source_name(panel, t.series)) << ','
            << t.lag << ',' << format_double(alpha(static_cast<Index>(j))) << '\n';
      }
      finish(out, dir / vol_file);
    }
    const std::string sigma_file = "sigma_" + token + ".csv";
    {
      auto out = open_out(dir / sigma_file);
      out << "t,sigma\n";
      for (Index r = 0; r < last.sigma_hat.size(); ++r) {
        out << design.max_lag + r << ',' << format_double(last.sigma_hat(r)) << '\n';
      }
      finish(out, dir / sigma_file);
    }
    artifacts.insert(artifacts.end(), {coef_file, vol_file, sigma_file});

    s["rows"] = design.rows();
    s["columns"] = design.cols();
    s["iterations_run"] = res.stopped_at;
    s["stop_reason"] = std::string(to_string(res.stop_reason));
    s["stop_epsilon"] = res.stop_epsilon;
    s["initial_scale"] = res.initial_scale;
    s["active_count"] = last.active_count;
    s["iterations"] = json::array();
    for (const IterationRecord& rec : res.iterations) s["iterations"].push_back(iteration_json(rec));
    summary["series"].push_back(s);
    log << name << ": " << res.stopped_at << " iterations (" << to_string(res.stop_reason)
        << "), active " << last.active_count << " of " << design.cols() << " columns\n";
  }

  write_text(dir / "summary.json", summary.dump(2) + "\n");
  artifacts.push_back("summary.json");
  write_manifest(dir, cfg, artifacts);
  return all_ok ? kExitOk : kExitPartial;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const DgpSpec dgp = dgp_from(cfg);
  const SimulatedPath path = simulate_path(dgp);
  const fs::path dir = prepare_out(cfg);
  const std::string file = "simulated.csv";
  {
    auto out = open_out(dir / file);
    write_panel_csv(out, SeriesPanel(path.y.transpose(), {"y"}));
    finish(out, dir / file);
  }
  write_manifest(dir, cfg, {file});
  log << "wrote " << (dir / file).string() << " (" << path.y.size() << " rows)\n";
  return kExitOk;
}

int cmd_bench_inclusion(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const std::vector<long> ns = cfg.n_values.empty() ? std::vector<long>{600} : cfg.n_values;
  const McReport report = run_inclusion_study(dgp_from(cfg), ns, study_options_from(cfg));
  return write_study(cfg, report, "inclusion.csv", log);
}

int cmd_bench_mae(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const std::vector<long> ns = cfg.n_values.empty() ? std::vector<long>{300, 600} : cfg.n_values;
  const DgpSpec dgp = dgp_from(cfg);
  const StudyOptions opts = study_options_from(cfg);
  std::vector<McReport> parts;
  for (long n : ns) parts.push_back(run_mae_study(dgp, n, opts, cfg.oracle));
  return write_study(cfg, merge_reports(std::move(parts)), "mae.csv", log);
}

int cmd_bench_trend(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const std::vector<long> ns = cfg.n_values.empty() ? std::vector<long>{300, 600, 1200} : cfg.n_values;
  const TrendTable t = run_consistency_trend(dgp_from(cfg), ns, parse_criterion(cfg.criterion), cfg.trend_k,
                                             study_options_from(cfg));
  return write_study(cfg, t.report, "trend.csv", log,
                     {{"recovery", t.recovery}, {"inversions", t.inversions}, {"max_inversion", t.max_inversion}});
}

int run_command(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  try {
    if (cfg.command == "fit") return cmd_fit(cfg, log);
    if (cfg.command == "simulate") return cmd_simulate(cfg, log);
    if (cfg.command == "bench-inclusion") return cmd_bench_inclusion(cfg, log);
    if (cfg.command == "bench-mae") return cmd_bench_mae(cfg, log);
    if (cfg.command == "bench-trend") return cmd_bench_trend(cfg, log);
    throw Error(ErrorKind::Config, "unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

int cli_main(int argc, char** argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"Iteratively reweighted adaptive lasso for AR models with ARCH-type errors"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> threads;
    std::vector<std::string> sets;
  };
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"fit", "Fit IRWAL models to every series of a CSV panel"},
      {"simulate", "Simulate the sparse AR-ARCH/TARCH process"},
      {"bench-inclusion", "Monte Carlo inclusion study along the lambda grid"},
      {"bench-mae", "Monte Carlo one-step forecast MAE study"},
      {"bench-trend", "Monte Carlo sign-recovery trend over sample sizes"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "Config file (key = value lines)")->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "Base seed");
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--threads", flags.threads, "Worker threads (0: machine parallelism)");
    sub->add_option("--set", flags.sets, "Override a config key (key=value); repeatable");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, log, err);
  }

  RunConfig cfg;
  try {
    if (!flags.config.empty()) cfg = load_config(flags.config);
    for (const std::string& s : flags.sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::Config, "--set expects key=value, got '" + s + "'");
      set_config_value(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.out) cfg.out = *flags.out;
    if (flags.threads) cfg.threads = *flags.threads;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return run_command(cfg, log, err);
}

}  // namespace irwal
