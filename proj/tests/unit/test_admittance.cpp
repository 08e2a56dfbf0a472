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

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <vector>

#include "fxtblf/admittance.hpp"
#include "fxtblf/errors.hpp"
#include "fxtblf/scenario.hpp"

using namespace fxtblf;
using doctest::Approx;

namespace {

// Runs the reference filter on the default circle from t0 to t1 and records
// xr - xd at the requested times.
struct FilterRun {
  std::vector<double> times;
  std::vector<Vec2> deviation;
};

FilterRun run_filter(const ForceFn& force, double t1, double dt, const std::vector<double>& at) {
  const AdmittanceParams p;
  const DesiredCircle circle;
  const DesiredFn desired = [&](double t) { return circle.at(t); };
  ReferenceState ref = reference_on_desired(p, circle.at(0.0));
  FilterRun out;
  std::size_t next = 0;
  const auto steps = static_cast<long>(std::lround(t1 / dt));
  for (long k = 0; k <= steps; ++k) {
    const double t = k * dt;
    while (next < at.size() && std::abs(at[next] - t) < 0.5 * dt) {
      out.times.push_back(t);
      out.deviation.push_back(ref.pos - circle.at(t).pos);
      ++next;
    }
    if (k < steps) ref = step_reference(p, t, dt, ref, desired, force);
  }
  return out;
}

// Independent oracle: km e'' + kb e' + kk e = fe(t) integrated with an
// adaptive Dormand-Prince scheme.
double deviation_oracle(double amp, double t_end) {
  using State = std::array<double, 2>;
  const double km = 20.0, kb = 20.0, kk = 100.0;
  auto rhs = [&](const State& y, State& dy, double t) {
    dy[0] = y[1];
    dy[1] = (external_force(t, Vec2(amp, amp))(0) - kb * y[1] - kk * y[0]) / km;
  };
  State y{0.0, 0.0};
  namespace ode = boost::numeric::odeint;
  double t = 0.0;
  // Integrate piecewise so the controller never steps across a kink.
  for (double edge : {20.0, 21.0, 30.0, 31.0, t_end}) {
    if (edge > t_end) edge = t_end;
    if (edge <= t) continue;
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-13, 1e-13),
                            rhs, y, t, edge, 1e-4);
    t = edge;
  }
  return y[0];
}

}  // namespace

TEST_SUITE("admittance") {
  TEST_CASE("no force and no deviation reproduces the desired acceleration") {
    const AdmittanceParams p;
    const DesiredSample d = DesiredCircle{}.at(1.3);
    const Vec2 acc = admittance_acceleration(p, d, d.pos, d.vel, Vec2::Zero());
    CHECK((acc - d.acc).norm() == 0.0);
  }

  TEST_CASE("static offset balances a constant force") {
    const AdmittanceParams p;
    const DesiredSample rest{};
    // offset fe / kk on each axis
    const Vec2 acc = admittance_acceleration(p, rest, Vec2(0.02, 0.04), Vec2::Zero(), Vec2(2, 4));
    CHECK(acc.norm() < 1e-15);
  }

  TEST_CASE("zero force keeps the reference on the desired trajectory") {
    const ForceFn none = [](double) { return Vec2::Zero(); };
    std::vector<double> at;
    for (int k = 0; k <= 20; ++k) at.push_back(k);
    const FilterRun r = run_filter(none, 20.0, 1e-3, at);
    REQUIRE(r.deviation.size() == at.size());
    for (const Vec2& e : r.deviation) CHECK(e.norm() < 1e-6);
  }

  TEST_CASE("force response follows the linear filter solution") {
    const ForceFn force = [](double t) { return external_force(t, Vec2(1.0, 2.0)); };
    const std::vector<double> at{20.5, 21.0, 23.0, 26.0, 28.0, 30.0, 31.0, 33.0, 36.0, 40.0};
    const FilterRun r = run_filter(force, 40.0, 1e-3, at);
    REQUIRE(r.deviation.size() == at.size());
    for (std::size_t k = 0; k < at.size(); ++k) {
      INFO("t = " << at[k]);
      CHECK(std::abs(r.deviation[k](0) - deviation_oracle(1.0, at[k])) < 1e-7);
      CHECK(std::abs(r.deviation[k](1) - deviation_oracle(2.0, at[k])) < 1e-7);
    }
  }

  TEST_CASE("constant force settles to fe / kk") {
    const ForceFn force = [](double t) { return external_force(t, Vec2(1.0, 2.0)); };
    std::vector<double> at;
    for (double t = 26.0; t < 30.0; t += 0.25) at.push_back(t);
    const FilterRun r = run_filter(force, 30.0, 1e-3, at);
    Vec2 mean = Vec2::Zero();
    for (const Vec2& e : r.deviation) mean += e;
    mean /= static_cast<double>(r.deviation.size());
    CHECK(mean(0) == Approx(0.02).epsilon(0.02));
    CHECK(mean(1) == Approx(0.04).epsilon(0.02));
    // The underdamped transient decays as exp(-kb t / (2 km)) = exp(-t / 2).
    const Vec2 late = r.deviation.back();
    CHECK(late(0) == Approx(0.02).epsilon(0.03));
    CHECK(late(1) == Approx(0.04).epsilon(0.03));
  }

  TEST_CASE("deviation decays after the force is released") {
    const ForceFn force = [](double t) { return external_force(t, Vec2(1.0, 2.0)); };
    std::vector<double> at;
    for (double t = 39.0; t <= 45.0; t += 0.5) at.push_back(t);
    const FilterRun r = run_filter(force, 45.0, 1e-3, at);
    for (const Vec2& e : r.deviation) CHECK(e.norm() < 1e-3);
  }

  TEST_CASE("deviation is linear in the force") {
    const ForceFn f1 = [](double t) { return external_force(t, Vec2(1.0, 2.0)); };
    const ForceFn f2 = [](double t) { return external_force(t, Vec2(2.0, 4.0)); };
    const std::vector<double> at{22.0, 27.0, 32.0};
    const FilterRun a = run_filter(f1, 32.0, 1e-3, at);
    const FilterRun b = run_filter(f2, 32.0, 1e-3, at);
    for (std::size_t k = 0; k < at.size(); ++k) {
      for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(b.deviation[k](i) - 2.0 * a.deviation[k](i)) <=
              1e-9 * std::abs(b.deviation[k](i)));
      }
    }
  }

  TEST_CASE("filter energy never increases without force") {
    const AdmittanceParams p;
    const DesiredCircle circle;
    const DesiredFn desired = [&](double t) { return circle.at(t); };
    const ForceFn none = [](double) { return Vec2::Zero(); };
    ReferenceState ref = reference_on_desired(p, circle.at(0.0));
    ref.pos += Vec2(0.05, -0.03);
    ref.vel += Vec2(-0.1, 0.2);
    auto energy = [&](double t) {
      const DesiredSample d = circle.at(t);
      const Vec2 e = ref.pos - d.pos;
      const Vec2 ed = ref.vel - d.vel;
      return 0.5 * (p.mass.dot(ed.cwiseAbs2()) + p.stiffness.dot(e.cwiseAbs2()));
    };
    const double dt = 1e-3;
    double prev = energy(0.0);
    for (int k = 0; k < 10000; ++k) {
      ref = step_reference(p, k * dt, dt, ref, desired, none);
      const double e = energy((k + 1) * dt);
      CHECK(e <= prev * (1.0 + 1e-12));
      prev = e;
    }
  }

  TEST_CASE("reference acceleration is consistent after a step") {
    const AdmittanceParams p;
    const DesiredCircle circle;
    const DesiredFn desired = [&](double t) { return circle.at(t); };
    const ForceFn force = [](double t) { return external_force(t, Vec2(1.0, 2.0)); };
    ReferenceState ref = reference_on_desired(p, circle.at(20.0));
    ref = step_reference(p, 20.0, 1e-3, ref, desired, force);
    const Vec2 expected =
        admittance_acceleration(p, circle.at(20.001), ref.pos, ref.vel, force(20.001));
    CHECK((ref.acc - expected).norm() == 0.0);
  }

  TEST_CASE("parameters must be strictly positive") {
    AdmittanceParams p;
    CHECK_NOTHROW(p.validate());
    p.damping(1) = 0.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = AdmittanceParams{};
    p.mass(0) = -20.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
  }

  TEST_CASE("step_reference rejects a non-positive step") {
    const AdmittanceParams p;
    const DesiredFn desired = [](double t) { return DesiredCircle{}.at(t); };
    const ForceFn none = [](double) { return Vec2::Zero(); };
    CHECK_THROWS(step_reference(p, 0.0, 0.0, ReferenceState{}, desired, none));
  }
}
