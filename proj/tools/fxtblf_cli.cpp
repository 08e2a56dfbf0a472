// Copyright 2026 The fxtblf Authors
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

// Command-line front end: run one scenario, compare all controller variants,
// run the property suites or print the fixed-time settling bound.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "fxtblf/checks.hpp"
#include "fxtblf/config.hpp"
#include "fxtblf/errors.hpp"
#include "fxtblf/export.hpp"
#include "fxtblf/metrics.hpp"
#include "fxtblf/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBreach = 2;

struct ScenarioOptions {
  std::string config;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::optional<std::string> variant;
  bool model_free = false;
  std::optional<bool> strict;
};

void add_scenario_options(CLI::App* cmd, ScenarioOptions& o, bool with_variant) {
  cmd->add_option("--config", o.config, "YAML scenario file (defaults when omitted)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--dt", o.dt, "integration step in seconds")->check(CLI::PositiveNumber);
  cmd->add_option("--horizon", o.horizon, "simulated duration in seconds")
      ->check(CLI::PositiveNumber);
  if (with_variant) {
    cmd->add_option("--variant", o.variant, "FXT_TVIBLF, TVIBLF or IBLF");
    cmd->add_flag("--model-free", o.model_free, "use the RBF network instead of the model");
  }
  cmd->add_flag("--strict,!--tolerant", o.strict,
                "abort on the first constraint breach (default) or log and continue");
}

fxtblf::ScenarioConfig build_config(const ScenarioOptions& o) {
  fxtblf::ScenarioConfig cfg =
      o.config.empty() ? fxtblf::ScenarioConfig{} : fxtblf::load_config(o.config);
  if (o.dt) cfg.dt = *o.dt;
  if (o.horizon) cfg.horizon = *o.horizon;
  if (o.variant) cfg.variant.kind = fxtblf::parse_controller_kind(*o.variant);
  if (o.model_free) cfg.variant.model_free = true;
  if (o.strict) cfg.strict = *o.strict;
  cfg.validate();
  return cfg;
}

std::string seconds(double v) {
  if (std::isnan(v)) return "n/a";
  if (std::isinf(v)) return "never";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g s", v);
  return buf;
}

void print_metrics(const std::string& label, const fxtblf::MetricsReport& m) {
  std::printf("%-16s rmse=(%.4e, %.4e) m  margin=(%.4f @ %.2f s, %.4f @ %.2f s)  settle=%s  "
              "tmax=%s  peak|u|=%.4g N  breaches=%lld\n",
              label.c_str(), m.rmse(0), m.rmse(1), m.margin.margin(0), m.margin.time(0),
              m.margin.margin(1), m.margin.time(1), seconds(m.settling_time).c_str(),
              seconds(m.tmax).c_str(), m.peak_control, static_cast<long long>(m.breaches));
}

int cmd_run(const ScenarioOptions& o, const std::string& out) {
  const fxtblf::ScenarioConfig cfg = build_config(o);
  fxtblf::ClosedLoopSimulation sim(cfg);
  int code = kExitOk;
  const auto start = std::chrono::steady_clock::now();
  try {
    while (sim.step()) {
    }
  } catch (const fxtblf::ConstraintBreach& e) {
    std::cerr << "constraint breach: " << e.what() << '\n';
    code = kExitBreach;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const fxtblf::SimulationTrace& trace = sim.trace();
  if (!trace.samples.empty()) {
    print_metrics(cfg.variant.label(), fxtblf::compute_metrics(trace, cfg));
  }
  std::printf("simulated %.3f s in %.2f s wall\n", sim.time(), wall);
  if (!out.empty()) {
    for (const auto& p : fxtblf::write_run_outputs(trace, out, fxtblf::variant_stem(cfg.variant))) {
      std::printf("wrote %s\n", p.string().c_str());
    }
  }
  return code;
}

int cmd_compare(const ScenarioOptions& o, const std::string& out, unsigned workers) {
  const fxtblf::ScenarioConfig cfg = build_config(o);
  const fxtblf::ComparisonMatrix matrix = fxtblf::run_comparison(cfg, {}, workers);
  int code = kExitOk;
  for (const fxtblf::ComparisonRow& row : matrix.rows) {
    print_metrics(row.variant.label(), row.metrics);
    if (row.error) {
      std::printf("%-16s aborted: %s\n", "", row.error->c_str());
      if (row.breached) {
        code = kExitBreach;
      } else if (code == kExitOk) {
        code = kExitError;
      }
    }
  }
  if (!out.empty()) {
    const auto files = fxtblf::write_comparison_outputs(matrix, out);
    std::printf("wrote %zu files to %s\n", files.size(), out.c_str());
  }
  return code;
}

int cmd_check(std::uint64_t seed, const std::string& suite, double scale) {
  const fxtblf::RobotParams robot;
  std::vector<fxtblf::checks::CheckResult> results;
  auto samples = [scale](long n) { return std::max<long>(1, std::lround(n * scale)); };
  if (suite == "all" || suite == "dynamics") {
    for (auto& r : fxtblf::checks::dynamics_identities(robot, seed, samples(1000))) {
      results.push_back(std::move(r));
    }
  }
  if (suite == "all" || suite == "barrier") {
    for (auto& r : fxtblf::checks::barrier_oracles(seed, samples(1000))) results.push_back(std::move(r));
  }
  if (suite == "all" || suite == "lemmas") {
    for (auto& r : fxtblf::checks::lemma_suite(robot, seed, samples(10000))) {
      results.push_back(std::move(r));
    }
  }
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed;
    std::printf("%-4s %-26s n=%-6ld worst=%-11.3e %s\n", r.passed ? "ok" : "FAIL",
                r.name.c_str(), r.samples, r.worst, r.detail.c_str());
    if (!r.passed) std::printf("     counterexample: %s\n", r.counterexample.c_str());
  }
  if (suite == "all" || suite == "integrator") {
    const auto order = fxtblf::checks::rk4_harmonic_order();
    const bool pass = order.ratio >= 12.0 && order.ratio <= 20.0 && order.energy_drift < 1e-8;
    ok = ok && pass;
    std::printf("%-4s %-26s ratio=%.3f energy_drift=%.3e\n", pass ? "ok" : "FAIL", "rk4_order",
                order.ratio, order.energy_drift);
  }
  return ok ? kExitOk : kExitError;
}

int cmd_bound(const ScenarioOptions& o, double v) {
  const fxtblf::ScenarioConfig cfg = build_config(o);
  const double lmax = fxtblf::max_inertia_eigenvalue(cfg.robot);
  const int nodes = static_cast<int>(cfg.network.centers.size());
  cfg.gains.validate(true);
  for (bool with_net : {false, true}) {
    const fxtblf::FixedTimeRates r = fxtblf::fixed_time_rates(cfg.gains, lmax, nodes, with_net);
    const double t = fxtblf::tmax_bound(r.alpha, r.beta, v, cfg.gains.p_c, cfg.gains.q_c.value());
    std::printf("%s\n  lambda = [%.4g, %.4g, %.4g, %.4g, %.4g, %.4g]\n  alpha = %.6g  beta = %.6g"
                "\n  tmax = %.6g s (v = %g)\n",
                with_net ? "with network:" : "model-based:", r.lambda1, r.lambda2, r.lambda3,
                r.lambda4, r.lambda5, r.lambda6, r.alpha, r.beta, t, v);
  }
  std::printf("sup lambda_max(M) = %.6g\n", lmax);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-time integral-barrier admittance control simulator"};
  app.require_subcommand(1);

  ScenarioOptions run_opts;
  std::string run_out = "results";
  CLI::App* run = app.add_subcommand("run", "simulate one scenario");
  add_scenario_options(run, run_opts, true);
  run->add_option("--out", run_out, "output directory for the trace CSV and figures");

  ScenarioOptions cmp_opts;
  std::string cmp_out = "results";
  unsigned workers = 0;
  CLI::App* compare = app.add_subcommand("compare", "run the 3x2 controller comparison");
  add_scenario_options(compare, cmp_opts, false);
  compare->add_option("--out", cmp_out, "output directory for the table, traces and figures");
  compare->add_option("--workers", workers, "parallel runs (0 = hardware concurrency)");

  std::uint64_t seed = 1;
  std::string suite = "all";
  double scale = 1.0;
  CLI::App* check = app.add_subcommand("check", "randomized property suites");
  check->add_option("--seed", seed, "random seed");
  check->add_option("--suite", suite, "dynamics, barrier, lemmas, integrator or all")
      ->check(CLI::IsMember({"all", "dynamics", "barrier", "lemmas", "integrator"}));
  check->add_option("--scale", scale, "multiplier on the default sample counts")
      ->check(CLI::PositiveNumber);

  ScenarioOptions bound_opts;
  double v = 1.0;
  CLI::App* bound = app.add_subcommand("bound", "print the fixed-time settling bound");
  bound->add_option("--config", bound_opts.config, "YAML scenario file")->check(CLI::ExistingFile);
  bound->add_option("--v", v, "residual-set scalar in (0, 1]")->check(CLI::Range(1e-12, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run) return cmd_run(run_opts, run_out);
    if (*compare) return cmd_compare(cmp_opts, cmp_out, workers);
    if (*check) return cmd_check(seed, suite, scale);
    if (*bound) return cmd_bound(bound_opts, v);
  } catch (const fxtblf::ConstraintBreach& e) {
    std::cerr << "constraint breach: " << e.what() << '\n';
    return kExitBreach;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
