// Copyright 2026 The ars-ppl Authors
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

#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "ars/diagnostics.hpp"
#include "ars/error.hpp"
#include "ars/harness/aggregate.hpp"
#include "ars/harness/csv.hpp"
#include "ars/harness/experiment.hpp"
#include "ars/interpreter.hpp"
#include "ars/models/gmm.hpp"
#include "ars/models/gum.hpp"
#include "ars/weights.hpp"

namespace ars::cli {

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;
constexpr int kCheckFailed = 3;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      items.push_back(item);
    }
  }
  return items;
}

/// Moves every "--config FILE" (or "--config=FILE") into "--key=value" tokens
/// placed directly after the subcommand, ahead of the explicit flags. With the
/// last-value-wins policy this makes flags override the file.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::vector<std::string> files;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config") {
      if (i + 1 >= args.size()) {
        throw CLI::ArgumentMismatch("--config requires a file name");
      }
      files.push_back(args[++i]);
    } else if (a.rfind("--config=", 0) == 0) {
      files.push_back(a.substr(9));
    } else {
      kept.push_back(a);
    }
  }
  if (files.empty()) {
    return kept;
  }
  std::vector<std::string> injected;
  for (const auto& file : files) {
    for (const CLI::ConfigItem& item : CLI::ConfigINI{}.from_file(file)) {
      if (item.name == "++" || item.name == "--") {
        continue;
      }
      if (!item.parents.empty()) {
        throw CLI::ConversionError("config file " + file + ": sections are not supported (key '" +
                                   item.fullname() + "')");
      }
      std::string value;
      for (std::size_t k = 0; k < item.inputs.size(); ++k) {
        value += (k == 0 ? "" : ",") + item.inputs[k];
      }
      injected.push_back("--" + item.name + "=" + value);
    }
  }
  // The subcommand is the first token that is not an option.
  std::size_t pos = 0;
  while (pos < kept.size() && kept[pos].rfind("-", 0) == 0) {
    ++pos;
  }
  const auto at = kept.begin() + static_cast<std::ptrdiff_t>(std::min(pos + 1, kept.size()));
  kept.insert(at, injected.begin(), injected.end());
  return kept;
}

struct ModelOptions {
  std::string model = "gum";
  GumParams gum;
  GmmParams gmm;
  double y_obs = 0.0;

  void add_to(CLI::App& app) {
    app.add_option("--model", model, "Model: gum or gmm")->check(CLI::IsMember({"gum", "gmm"}))->capture_default_str();
    app.add_option("--y-obs", y_obs, "Observed value")->capture_default_str();
    app.add_option("--mu0", gum.mu0, "GUM prior mean")->capture_default_str();
    app.add_option("--sigma0", gum.sigma0, "GUM prior standard deviation")->capture_default_str();
    app.add_option("--sigma", gum.sigma, "GUM likelihood standard deviation")->capture_default_str();
    app.add_option("--pi1", gmm.pi1, "GMM weight of the first component")->capture_default_str();
    app.add_option("--mu1", gmm.mu1, "GMM first component mean")->capture_default_str();
    app.add_option("--sigma1", gmm.sigma1, "GMM first component standard deviation")->capture_default_str();
    app.add_option("--mu2", gmm.mu2, "GMM second component mean")->capture_default_str();
    app.add_option("--sigma2", gmm.sigma2, "GMM second component standard deviation")->capture_default_str();
    app.add_option("--mu0-base", gmm.mu0_base, "GMM soft-rejection base mean")->capture_default_str();
    app.add_option("--sigma0-base", gmm.sigma0_base, "GMM soft-rejection base standard deviation")
        ->capture_default_str();
    app.add_option("--sigma-lik", gmm.sigma_lik, "GMM likelihood standard deviation")->capture_default_str();
  }

  void apply(ExperimentConfig& cfg) const {
    cfg.model = parse_model_kind(model);
    cfg.gum = gum;
    cfg.gmm = gmm;
    cfg.gum.y_obs = y_obs;
    cfg.gmm.y_obs = y_obs;
  }
};

void add_seed(CLI::App& app, std::uint64_t& seed) {
  app.add_option("--seed", seed, "Master seed (falls back to $PPL_ARS_SEED)")
      ->envname("PPL_ARS_SEED")
      ->capture_default_str();
}

std::ostream& open_output(const std::string& path, std::ofstream& file, std::ostream& out) {
  if (path.empty() || path == "-") {
    return out;
  }
  file.open(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  return file;
}

// ---- run ----

struct RunOptions {
  ModelOptions model;
  std::string estimators = "ars";
  int ars_m = 10;
  int ars_n = 10;
  std::string proposal = "fixed";
  std::uint64_t particles = 10'000;
  std::uint64_t runs = 1;
  std::uint64_t seed = 0;
  int scope_cap = 1'000'000;
  std::string checkpoints;
  std::string out = "-";
  std::string aggregate_out;
  int threads = 1;
  bool no_wall_time = false;
};

int do_run(const RunOptions& o, std::ostream& out) {
  ExperimentConfig cfg;
  o.model.apply(cfg);
  cfg.proposal_preset = o.proposal;
  cfg.particles = o.particles;
  cfg.runs = o.runs;
  cfg.master_seed = o.seed;
  cfg.scope_cap = o.scope_cap;
  cfg.threads = o.threads;
  cfg.record_wall_time = !o.no_wall_time;
  for (const auto& c : split_list(o.checkpoints)) {
    cfg.checkpoints.push_back(std::stoull(c));
  }

  std::vector<ExperimentRow> rows;
  for (const auto& name : split_list(o.estimators)) {
    cfg.estimator = EstimatorKind::parse(name, o.ars_m, o.ars_n);
    auto part = run_experiment(cfg);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::ofstream file;
  write_rows(open_output(o.out, file, out), rows);
  if (!o.aggregate_out.empty()) {
    std::ofstream agg_file;
    write_aggregates(open_output(o.aggregate_out, agg_file, out), aggregate_runs(rows));
  }
  return 0;
}

// ---- truth ----

int do_truth(const ModelOptions& m, std::ostream& out) {
  ExperimentConfig cfg;
  m.apply(cfg);
  out << format_double(ground_truth(cfg)) << '\n';
  return 0;
}

// ---- check-variance ----

struct VarianceOptions {
  ModelOptions model;
  std::string scope;
  std::string proposal = "fixed";
  std::string method = "quadrature";
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 0;
};

int do_check_variance(const VarianceOptions& o, std::ostream& out) {
  ExperimentConfig cfg;
  o.model.apply(cfg);
  LoopSite site = [&] {
    if (cfg.model == ModelKind::kGum) {
      return gum_loop_site(cfg.gum, parse_gum_proposal(o.proposal), o.scope.empty() ? "branch1" : o.scope);
    }
    if (!o.scope.empty() && o.scope != "mixture") {
      throw ConfigError("GMM has a single rejection scope named 'mixture'");
    }
    return gmm_loop_site(cfg.gmm, parse_gmm_proposal(o.proposal));
  }();
  const std::string scope = o.scope.empty() ? (cfg.model == ModelKind::kGum ? "branch1" : "mixture") : o.scope;

  out << "model=" << o.model.model << " scope=" << scope << " proposal=" << o.proposal << '\n';
  out << "prior=" << site.prior << " proposal_dist=" << site.proposal << '\n';
  std::optional<double> verdict_value;
  if (o.method == "quadrature" || o.method == "both") {
    const SpqEstimate s = compute_s_pq(site, SpqMethod::quadrature());
    out << "S_quadrature=" << format_double(s.value) << " error_bound=" << format_double(s.error_bound) << '\n';
    verdict_value = s.value;
  }
  if (o.method == "monte-carlo" || o.method == "both") {
    const SpqEstimate s = compute_s_pq(site, SpqMethod::monte_carlo(o.samples, o.seed));
    out << "S_monte_carlo=" << format_double(s.value) << " std_error=" << format_double(s.std_error)
        << " samples=" << o.samples << '\n';
    if (!verdict_value) {
      verdict_value = s.value;
    }
  }
  out << "S=" << format_double(*verdict_value) << '\n';
  out << (*verdict_value >= 1.0 ? "INFINITE-VARIANCE REGIME: naive importance weights have infinite variance"
                                : "FINITE-VARIANCE REGIME: S < 1")
      << '\n';
  return 0;
}

// ---- theorem2-check ----

struct Theorem2Options {
  ModelOptions model;
  std::string scope = "branch1";
  std::string proposal = "fixed";
  double mu = 0.5;
  std::uint64_t replications = 100'000;
  std::uint64_t seed = 0;
  std::string estimators = "ic,biased,ars_m1_n10,ars_m10_n10,ars_m1_n100,ars_m10_n100,collapsed";
};

int do_theorem2(const Theorem2Options& o, std::ostream& out) {
  if (o.model.model != "gum") {
    throw OracleUnavailable("theorem2-check needs the collapsed oracle, which only the GUM model provides");
  }
  ExperimentConfig cfg;
  o.model.apply(cfg);
  const ModelProgram model = build_gum(cfg.gum, parse_gum_proposal(o.proposal));
  const auto pinned = gum_fixture(o.scope, o.mu);

  EngineConfig exact;
  exact.estimator = EstimatorKind::collapsed_oracle();
  exact.pinned = pinned;
  const TraceRecord trace = run_trace(model, ExecutionMode::kProposal, RngStream{o.seed}, exact);
  const double w_c = std::exp(collapsed_log_weight(model, trace));
  const LoopSite site = gum_loop_site(cfg.gum, parse_gum_proposal(o.proposal), o.scope);
  const double region_prior = o.scope == "branch1" ? site.prior.mass(cfg.gum.mu0, kInf)
                                                   : site.prior.mass(-kInf, cfg.gum.mu0);
  const double region_proposal = o.scope == "branch1" ? site.proposal.mass(cfg.gum.mu0, kInf)
                                                      : site.proposal.mass(-kInf, cfg.gum.mu0);
  const double bias_factor = region_prior / region_proposal;

  out << "scope=" << o.scope << " mu=" << format_double(o.mu) << " y_obs=" << format_double(cfg.gum.y_obs)
      << " replications=" << o.replications << '\n';
  out << "w_C=" << format_double(w_c) << '\n';
  out << "biased_factor=" << format_double(bias_factor) << '\n';

  bool all_ok = true;
  for (const auto& name : split_list(o.estimators)) {
    const EstimatorKind est = EstimatorKind::parse(name);
    const ConditionalMean m = conditional_mean_check(model, est, pinned, o.replications, o.seed);
    out << "estimator=" << est.name() << " mean=" << format_double(m.mean)
        << " std_error=" << format_double(m.std_error);
    if (est.kind() == EstimatorKind::Kind::kBiased) {
      const double ratio = m.mean / w_c;
      const double rel = std::abs(ratio / bias_factor - 1.0);
      const bool ok = rel < 0.01;
      all_ok = all_ok && ok;
      out << " ratio_to_w_C=" << format_double(ratio) << " relative_error=" << format_double(rel)
          << (ok ? " BIASED-AS-EXPECTED" : " UNEXPECTED") << '\n';
    } else {
      const double dev = m.mean - w_c;
      const bool ok = m.std_error > 0.0 ? std::abs(dev) <= 4.0 * m.std_error : std::abs(dev) <= 1e-12 * w_c;
      all_ok = all_ok && ok;
      out << " z=" << format_double(m.std_error > 0.0 ? dev / m.std_error : 0.0) << (ok ? " MATCH" : " MISMATCH")
          << '\n';
    }
  }
  return all_ok ? 0 : kCheckFailed;
}

// ---- aggregate ----

int do_aggregate(const std::string& in_path, const std::string& out_path, std::ostream& out) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + in_path + "'");
  }
  std::ofstream file;
  write_aggregates(open_output(out_path, file, out), aggregate_runs(parse_rows(in)));
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Importance sampling for probabilistic programs with rejection loops", "ars"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.footer(
      "Every subcommand accepts --config FILE: lines of key = value, where key is a long option\n"
      "name without the leading dashes; '#' and ';' start comments. Flags override the file and the\n"
      "file overrides PPL_ARS_SEED.");

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run repeated inference and write one CSV row per checkpoint");
  run.model.add_to(*run_cmd);
  run_cmd->add_option("--estimator,--estimators", run.estimators,
                      "Comma-separated list of ic, biased, ars, collapsed or ars_m<M>_n<N>")
      ->capture_default_str();
  run_cmd->add_option("--ars-m", run.ars_m, "Trials-to-acceptance replications M for 'ars'")->capture_default_str();
  run_cmd->add_option("--ars-n", run.ars_n, "Proposal executions N for 'ars' (raised to at least 10)")
      ->capture_default_str();
  run_cmd->add_option("--proposal", run.proposal, "Proposal preset")->capture_default_str();
  run_cmd->add_option("--particles", run.particles, "Particles per run")->capture_default_str();
  run_cmd->add_option("--runs", run.runs, "Independent runs")->capture_default_str();
  add_seed(*run_cmd, run.seed);
  run_cmd->add_option("--scope-cap", run.scope_cap, "Iteration cap per loop")->capture_default_str();
  run_cmd->add_option("--checkpoints", run.checkpoints, "Comma-separated ascending particle counts");
  run_cmd->add_option("--out", run.out, "Output CSV path ('-' for stdout)")->capture_default_str();
  run_cmd->add_option("--aggregate-out", run.aggregate_out, "Also write per-checkpoint quantile bands here");
  run_cmd->add_option("--threads", run.threads, "Worker threads per run")->capture_default_str();
  run_cmd->add_flag("--no-wall-time", run.no_wall_time, "Write wall_ms as 0 so output depends only on the seed");

  ModelOptions truth;
  auto* truth_cmd = app.add_subcommand("truth", "Print the analytic posterior mean");
  truth.model = "gum";
  truth.add_to(*truth_cmd);

  VarianceOptions var;
  auto* var_cmd = app.add_subcommand("check-variance", "Evaluate S and report whether naive weights have infinite variance");
  var.model.add_to(*var_cmd);
  var_cmd->add_option("--scope", var.scope, "Loop: branch1 or branch2 (gum), mixture (gmm)");
  var_cmd->add_option("--proposal", var.proposal, "Proposal preset")->capture_default_str();
  var_cmd->add_option("--method", var.method, "quadrature, monte-carlo or both")
      ->check(CLI::IsMember({"quadrature", "monte-carlo", "both"}))
      ->capture_default_str();
  var_cmd->add_option("--samples", var.samples, "Monte Carlo sample count")->capture_default_str();
  add_seed(*var_cmd, var.seed);

  Theorem2Options t2;
  auto* t2_cmd = app.add_subcommand("theorem2-check",
                                    "Compare conditional mean weights with the collapsed weight on a fixed GUM trace");
  t2.model.add_to(*t2_cmd);
  t2_cmd->add_option("--scope", t2.scope, "branch1 or branch2")->capture_default_str();
  t2_cmd->add_option("--proposal", t2.proposal, "Proposal preset")->capture_default_str();
  t2_cmd->add_option("--mu", t2.mu, "Pinned accepted loop value")->capture_default_str();
  t2_cmd->add_option("--replications", t2.replications, "Replications per estimator")->capture_default_str();
  t2_cmd->add_option("--estimators", t2.estimators, "Comma-separated estimator list")->capture_default_str();
  add_seed(*t2_cmd, t2.seed);

  std::string agg_in;
  std::string agg_out = "-";
  auto* agg_cmd = app.add_subcommand("aggregate", "Median and 10%/90% bands per estimator and checkpoint");
  agg_cmd->add_option("--in", agg_in, "Experiment CSV")->required();
  agg_cmd->add_option("--out", agg_out, "Output path ('-' for stdout)")->capture_default_str();

  try {
    std::vector<std::string> expanded = expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*run_cmd) {
      return do_run(run, out);
    }
    if (*truth_cmd) {
      return do_truth(truth, out);
    }
    if (*var_cmd) {
      return do_check_variance(var, out);
    }
    if (*t2_cmd) {
      return do_theorem2(t2, out);
    }
    if (*agg_cmd) {
      return do_aggregate(agg_in, agg_out, out);
    }
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace ars::cli
