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

#include "fxtblf/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <optional>
#include <cmath>
#include <thread>

#include "fxtblf/errors.hpp"

namespace fxtblf {

namespace {

bool in_window(double t, const TimeWindow& w) { return t >= w.start && t <= w.end; }

}  // namespace

double rmse(const SimulationTrace& trace, int axis, const TimeWindow& window) {
  if (axis < 0 || axis >= kAxes) throw DomainError("rmse: axis out of range");
  double sum = 0.0;
  std::size_t n = 0;
  for (const TraceSample& s : trace.samples) {
    if (!in_window(s.t, window)) continue;
    const double e = s.x(axis) - s.xr(axis);
    sum += e * e;
    ++n;
  }
  if (n == 0) throw EmptyWindow("rmse: no trace samples inside the window");
  return std::sqrt(sum / static_cast<double>(n));
}

MarginReport constraint_margin(const SimulationTrace& trace) {
  if (trace.samples.empty()) throw DomainError("constraint_margin: empty trace");
  MarginReport r;
  r.margin.setConstant(std::numeric_limits<double>::infinity());
  for (const TraceSample& s : trace.samples) {
    for (int i = 0; i < kAxes; ++i) {
      const double m = s.bound(i) - std::abs(s.x(i));
      if (m < r.margin(i)) {
        r.margin(i) = m;
        r.time(i) = s.t;
      }
    }
  }
  return r;
}

double settling_time(const SimulationTrace& trace, double band, const TimeWindow& window) {
  if (!(band > 0.0)) throw DomainError("settling_time: band must be positive");
  std::optional<double> first_in_window;
  double candidate = kNeverSettles;
  for (const TraceSample& s : trace.samples) {
    if (!in_window(s.t, window)) continue;
    if (!first_in_window) first_in_window = s.t;
    if ((s.x - s.xr).norm() < band) {
      if (std::isinf(candidate)) candidate = s.t;
    } else {
      candidate = kNeverSettles;
    }
  }
  if (!first_in_window) throw EmptyWindow("settling_time: no trace samples inside the window");
  if (std::isinf(candidate)) return kNeverSettles;
  return candidate - std::max(window.start, *first_in_window);
}

double configured_tmax(const ScenarioConfig& cfg, double v) {
  if (cfg.variant.kind != ControllerKind::kFxtTviblf) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const FixedTimeRates rates =
      fixed_time_rates(cfg.gains, max_inertia_eigenvalue(cfg.robot),
                       static_cast<int>(cfg.network.centers.size()), cfg.variant.model_free);
  return tmax_bound(rates.alpha, rates.beta, v, cfg.gains.p_c, cfg.gains.q_c.value());
}

MetricsReport compute_metrics(const SimulationTrace& trace, const ScenarioConfig& cfg,
                              const MetricsOptions& options) {
  MetricsReport r;
  for (int i = 0; i < kAxes; ++i) r.rmse(i) = rmse(trace, i, options.rmse_window);
  r.margin = constraint_margin(trace);
  try {
    r.settling_time = settling_time(trace, options.settle_band, options.settle_window);
  } catch (const EmptyWindow&) {
    r.settling_time = kNeverSettles;
  }
  r.tmax = configured_tmax(cfg, options.tmax_v);
  for (const TraceSample& s : trace.samples) {
    r.peak_control = std::max(r.peak_control, s.u.norm());
    bool breach = false;
    for (int i = 0; i < kAxes; ++i) breach = breach || std::abs(s.x(i)) >= s.bound(i);
    if (breach) ++r.breaches;
  }
  return r;
}

std::vector<ControllerVariant> comparison_variants() {
  std::vector<ControllerVariant> out;
  for (ControllerKind k : {ControllerKind::kIblf, ControllerKind::kTviblf,
                           ControllerKind::kFxtTviblf}) {
    out.push_back({k, false});
    out.push_back({k, true});
  }
  return out;
}

const ComparisonRow& ComparisonMatrix::row(const ControllerVariant& v) const {
  for (const ComparisonRow& r : rows) {
    if (r.variant == v) return r;
  }
  throw DomainError("comparison matrix has no row " + v.label());
}

ComparisonMatrix run_comparison(const ScenarioConfig& base, const MetricsOptions& options,
                                unsigned workers) {
  ComparisonMatrix matrix;
  matrix.fingerprint = scenario_fingerprint(base);
  const std::vector<ControllerVariant> variants = comparison_variants();
  matrix.rows.resize(variants.size());

  std::vector<ScenarioConfig> configs;
  for (std::size_t k = 0; k < variants.size(); ++k) {
    ScenarioConfig cfg = base;
    cfg.variant = variants[k];
    matrix.rows[k].variant = variants[k];
    matrix.rows[k].fingerprint = scenario_fingerprint(cfg);
    if (matrix.rows[k].fingerprint != matrix.fingerprint) {
      throw Error("comparison row " + variants[k].label() + " differs from the shared scenario");
    }
    configs.push_back(std::move(cfg));
  }

  auto run_row = [&](std::size_t k) {
    ComparisonRow& row = matrix.rows[k];
    const auto start = std::chrono::steady_clock::now();
    ClosedLoopSimulation sim(configs[k]);
    try {
      while (sim.step()) {
      }
    } catch (const ConstraintBreach& e) {
      row.error = e.what();
      row.breached = true;
    } catch (const Error& e) {
      row.error = e.what();
    }
    row.trace = sim.trace();
    row.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!row.trace.samples.empty()) row.metrics = compute_metrics(row.trace, configs[k], options);
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(variants.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < variants.size(); k = next++) run_row(k);
    });
  }
  for (std::thread& t : pool) t.join();
  return matrix;
}

}  // namespace fxtblf
