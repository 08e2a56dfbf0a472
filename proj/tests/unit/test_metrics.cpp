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
#include <doctest.h>

#include <cmath>
#include <set>

#include "fxtblf/errors.hpp"
#include "fxtblf/metrics.hpp"

using namespace fxtblf;
using doctest::Approx;

namespace {

// Trace on a 0.01 s grid with tracking error e(t) per axis.
template <class Fn>
SimulationTrace synthetic(double horizon, Fn error, Vec2 bound = Vec2(0.5, 0.5)) {
  SimulationTrace tr;
  tr.sample_period = 0.01;
  const auto n = static_cast<int>(std::lround(horizon / tr.sample_period));
  for (int k = 0; k <= n; ++k) {
    TraceSample s;
    s.t = k * tr.sample_period;
    s.xr = Vec2(0.1, -0.1);
    s.x = s.xr + error(s.t);
    s.bound = bound;
    tr.samples.push_back(s);
  }
  return tr;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("rmse of constant and alternating errors") {
    const SimulationTrace c = synthetic(1.0, [](double) { return Vec2(0.02, -0.03); });
    CHECK(rmse(c, 0) == Approx(0.02));
    CHECK(rmse(c, 1) == Approx(0.03));
    SimulationTrace alt = c;
    for (std::size_t k = 0; k < alt.samples.size(); ++k) {
      alt.samples[k].x(0) = alt.samples[k].xr(0) + (k % 2 ? 3.0 : -3.0);
    }
    CHECK(rmse(alt, 0) == Approx(3.0));
    CHECK_THROWS_AS(rmse(c, 2), DomainError);
    CHECK_THROWS_AS(rmse(c, 0, {5.0, 6.0}), EmptyWindow);
  }

  TEST_CASE("rmse window") {
    const SimulationTrace tr = synthetic(2.0, [](double t) { return Vec2(t < 1.0 ? 1.0 : 0.0, 0.0); });
    CHECK(rmse(tr, 0, {1.005, 2.0}) == 0.0);
    CHECK(rmse(tr, 0, {0.0, 0.995}) == Approx(1.0));
  }

  TEST_CASE("constraint margin") {
    SimulationTrace tr = synthetic(1.0, [](double t) { return Vec2(0.1 * t, 0.0); });
    const MarginReport m = constraint_margin(tr);
    CHECK(m.margin(0) == Approx(0.5 - 0.2));
    CHECK(m.time(0) == Approx(1.0));
    CHECK(m.margin(1) == Approx(0.4));
    tr.samples[50].x(1) = -0.6;
    const MarginReport neg = constraint_margin(tr);
    CHECK(neg.margin(1) == Approx(-0.1));
    CHECK(neg.time(1) == Approx(0.5));
    CHECK_THROWS_AS(constraint_margin(SimulationTrace{}), DomainError);
  }

  TEST_CASE("settling time") {
    const SimulationTrace zero = synthetic(5.0, [](double) { return Vec2::Zero().eval(); });
    CHECK(settling_time(zero, 1e-3) == 0.0);

    // |e| = exp(-t); first entry into a 0.01 band is at ln 100
    const SimulationTrace decay = synthetic(10.0, [](double t) { return Vec2(std::exp(-t), 0.0); });
    CHECK(settling_time(decay, 0.01) == Approx(std::log(100.0)).epsilon(0.01 / std::log(100.0)));
    CHECK(settling_time(decay, 0.01, {2.0, 10.0}) ==
          Approx(std::log(100.0) - 2.0).epsilon(0.01));

    const SimulationTrace constant = synthetic(5.0, [](double) { return Vec2(0.1, 0.0); });
    CHECK(std::isinf(settling_time(constant, 0.01)));

    // leaving the band resets the candidate
    const SimulationTrace bump =
        synthetic(5.0, [](double t) { return Vec2(t > 3.0 && t < 3.5 ? 1.0 : 0.0, 0.0); });
    CHECK(settling_time(bump, 0.01) == Approx(3.5).epsilon(0.01));

    CHECK_THROWS_AS(settling_time(zero, 0.0), DomainError);
    CHECK_THROWS_AS(settling_time(zero, 1e-3, {10.0, 20.0}), EmptyWindow);
  }

  TEST_CASE("rmse is insensitive to trace decimation") {
    ScenarioConfig cfg;
    cfg.horizon = 5.0;
    cfg.trace_decimation = 1;
    const SimulationTrace full = run_scenario(cfg);
    cfg.trace_decimation = 50;
    const SimulationTrace sparse = run_scenario(cfg);
    for (int i = 0; i < kAxes; ++i) {
      CHECK(rmse(sparse, i) == Approx(rmse(full, i)).epsilon(0.02));
    }
  }

  TEST_CASE("fingerprint covers the scenario but not the variant") {
    ScenarioConfig a;
    ScenarioConfig b = a;
    b.variant = {ControllerKind::kIblf, true};
    CHECK(scenario_fingerprint(a) == scenario_fingerprint(b));
    b.dt = 2e-4;
    CHECK(scenario_fingerprint(a) != scenario_fingerprint(b));
    ScenarioConfig c = a;
    c.gains.k1(0) = 6.0;
    CHECK(scenario_fingerprint(a) != scenario_fingerprint(c));
  }

  TEST_CASE("configured bound") {
    ScenarioConfig cfg;
    CHECK(std::isfinite(configured_tmax(cfg)));
    CHECK(configured_tmax(cfg) > 0.0);
    cfg.variant.kind = ControllerKind::kTviblf;
    CHECK(std::isnan(configured_tmax(cfg)));
  }

  TEST_CASE("comparison matrix") {
    ScenarioConfig cfg;
    cfg.horizon = 1.0;
    cfg.trace_decimation = 50;
    const ComparisonMatrix m = run_comparison(cfg, {}, 3);
    REQUIRE(m.rows.size() == 6);
    std::set<std::string> labels;
    for (const ComparisonRow& r : m.rows) {
      labels.insert(r.variant.label());
      CHECK(r.fingerprint == m.fingerprint);
      CHECK_FALSE(r.error.has_value());
      CHECK(r.trace.samples.size() == 201);
      CHECK(r.metrics.breaches == 0);
      CHECK((r.metrics.margin.margin.array() > 0.0).all());
      CHECK(r.metrics.peak_control > 0.0);
    }
    CHECK(labels.size() == 6);
    CHECK(std::isnan(m.row({ControllerKind::kIblf, false}).metrics.tmax));
    CHECK(std::isfinite(m.row({ControllerKind::kFxtTviblf, true}).metrics.tmax));

    // same rows irrespective of the worker count
    const ComparisonMatrix serial = run_comparison(cfg, {}, 1);
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(serial.rows[k].metrics.rmse == m.rows[k].metrics.rmse);
    }
  }

  TEST_CASE("breached rows are flagged") {
    ScenarioConfig cfg;
    cfg.horizon = 3.0;
    cfg.trace_decimation = 50;
    cfg.constraints = ConstraintProfile::constant(Vec2(0.10, 0.48));
    const ComparisonMatrix m = run_comparison(cfg, {}, 2);
    const ControllerVariant tv{ControllerKind::kTviblf, false};
    CHECK(m.row(tv).breached);
    for (const ComparisonRow& r : m.rows) {
      if (r.breached) CHECK(r.error.has_value());
    }

    cfg.strict = false;
    const ComparisonMatrix tol = run_comparison(cfg, {}, 2);
    const ComparisonRow& row = tol.row(tv);
    CHECK_FALSE(row.breached);
    CHECK_FALSE(row.error.has_value());
    CHECK(row.metrics.breaches > 0);
    CHECK(row.metrics.margin.margin(0) <= 0.0);
    for (const ComparisonRow& r : tol.rows) {
      if (!r.error) CHECK((r.metrics.breaches > 0) == (r.metrics.margin.margin.minCoeff() <= 0.0));
    }
  }
}
