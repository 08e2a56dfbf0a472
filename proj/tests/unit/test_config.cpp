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

#include <filesystem>

#include "fxtblf/config.hpp"
#include "fxtblf/errors.hpp"

using namespace fxtblf;

TEST_SUITE("config") {
  TEST_CASE("empty documents give the defaults") {
    const std::string defaults = canonical_string(ScenarioConfig{});
    CHECK(canonical_string(parse_config("")) == defaults);
    CHECK(canonical_string(parse_config("~\n")) == defaults);
    CHECK(canonical_string(parse_config("scenario: {}\n")) == defaults);
  }

  TEST_CASE("overrides") {
    const ScenarioConfig cfg = parse_config(R"(
robot: { m2: 1.5 }
admittance: { stiffness: [100, 150] }
controller:
  variant: iblf
  model_free: true
  gains: { k4: 0.01, q_c: [97, 99] }
network: { width: 30, centers: [-1, 1] }
constraints:
  axis2: { offset: 0.4, amplitude: 0.05, frequency: 0.3, phase: 0.1 }
scenario: { horizon: 12, dt: 5e-5, q0: [0.6, 2.0], strict: false, reference_start: desired }
)");
    CHECK(cfg.robot.m2 == 1.5);
    CHECK(cfg.robot.m1 == ScenarioConfig{}.robot.m1);
    CHECK(cfg.admittance.stiffness == Vec2(100.0, 150.0));
    CHECK(cfg.variant.kind == ControllerKind::kIblf);
    CHECK(cfg.variant.model_free);
    CHECK(cfg.gains.k4 == 0.01);
    CHECK(cfg.gains.q_c.num == 97);
    CHECK(cfg.gains.q_c.den == 99);
    CHECK(cfg.network.width == 30.0);
    CHECK(cfg.network.centers.size() == 2);
    CHECK(cfg.constraints.axes()[1].offset == 0.4);
    CHECK(cfg.constraints.axes()[1].frequency == 0.3);
    CHECK(cfg.constraints.axes()[0].offset == ScenarioConfig{}.constraints.axes()[0].offset);
    CHECK(cfg.horizon == 12.0);
    CHECK(cfg.dt == 5e-5);
    CHECK(cfg.q0 == Vec2(0.6, 2.0));
    CHECK_FALSE(cfg.strict);
    CHECK(cfg.reference_start == ReferenceStart::kDesired);
  }

  TEST_CASE("scalars broadcast to both axes") {
    const ScenarioConfig cfg = parse_config("admittance: { mass: 7 }\nscenario: { force_amps: 0 }\n");
    CHECK(cfg.admittance.mass == Vec2(7.0, 7.0));
    CHECK(cfg.force_amps.isZero());
  }

  TEST_CASE("dump and parse round trip") {
    ScenarioConfig cfg;
    cfg.robot.l1 = 0.4123456789012345;
    cfg.gains.k2 = Vec2(123.456, 1e-7);
    cfg.variant = {ControllerKind::kTviblf, true};
    cfg.reference_start = ReferenceStart::kDesired;
    cfg.network.centers = {-3.0, 0.1, 2.5};
    cfg.trace_decimation = 3;
    const ScenarioConfig back = parse_config(dump_config(cfg));
    CHECK(canonical_string(back) == canonical_string(cfg));
    CHECK(scenario_fingerprint(back) == scenario_fingerprint(cfg));
  }

  TEST_CASE("rejected documents") {
    CHECK_THROWS_AS(parse_config("robots: { m1: 1 }\n"), DomainError);
    CHECK_THROWS_AS(parse_config("robot: { mass: 1 }\n"), DomainError);
    CHECK_THROWS_AS(parse_config("controller: { variant: pid }\n"), DomainError);
    CHECK_THROWS_AS(parse_config("scenario: { dt: fast }\n"), DomainError);
    CHECK_THROWS_AS(parse_config("scenario: { q0: [1, 2, 3] }\n"), DomainError);
    CHECK_THROWS_AS(parse_config("scenario: { reference_start: later }\n"), DomainError);
    CHECK_THROWS_AS(parse_config("- 1\n- 2\n"), DomainError);
    CHECK_THROWS_AS(parse_config("robot: { m1: [1\n"), DomainError);
  }

  TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_config(std::filesystem::path("/nonexistent/fxtblf.yaml")), IoError);
  }
}
