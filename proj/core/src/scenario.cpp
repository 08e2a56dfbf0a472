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

#include "fxtblf/scenario.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fxtblf/errors.hpp"

namespace fxtblf {

Vec2 external_force(double t, const Vec2& amps) {
  const double pi = std::numbers::pi;
  if (t < 20.0 || t >= 31.0) return Vec2::Zero();
  if (t < 21.0) return amps * (1.0 - std::cos(pi * t));
  if (t < 30.0) return 2.0 * amps;
  return amps * (1.0 + std::cos(pi * t));
}

DesiredSample DesiredCircle::at(double t) const {
  const double w = angular_rate;
  const double c = std::cos(w * t);
  const double s = std::sin(w * t);
  DesiredSample d;
  d.pos = {radius * c, radius * s};
  d.vel = {-radius * w * s, radius * w * c};
  d.acc = {-radius * w * w * c, -radius * w * w * s};
  return d;
}

DesiredSample desired_trajectory(double t) { return DesiredCircle{}.at(t); }

ConstraintSample constraint_profile(double t) {
  return ConstraintProfile::workspace_default().at(t);
}

std::string_view to_string(ReferenceStart start) {
  return start == ReferenceStart::kMeasured ? "measured" : "desired";
}

void ScenarioConfig::validate() const {
  robot.validate();
  admittance.validate();
  gains.validate(variant.kind == ControllerKind::kFxtTviblf);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("horizon must be positive");
  if (trace_decimation < 1) throw DomainError("trace_decimation must be at least 1");
  if (!q0.allFinite() || !force_amps.allFinite()) throw DomainError("q0 and force amplitudes must be finite");
  if (!(desired.radius >= 0.0)) throw DomainError("desired radius must be nonnegative");
  if (network.centers.empty() || !(network.width > 0.0)) {
    throw DomainError("network needs centres and a positive width");
  }
  if (!(network.traditional_rate > 0.0) || network.traditional_sigma < 0.0) {
    throw DomainError("traditional law needs rate > 0 and sigma >= 0");
  }
  constraints.validate_over(horizon);
}

std::int64_t ScenarioConfig::steps() const {
  return static_cast<std::int64_t>(std::llround(horizon / dt));
}

std::string canonical_string(const ScenarioConfig& c, bool include_variant) {
  std::ostringstream os;
  os.precision(17);
  auto v2 = [&os](const char* key, const Vec2& v) { os << key << '=' << v(0) << ',' << v(1) << ';'; };
  os << "robot=" << c.robot.m1 << ',' << c.robot.m2 << ',' << c.robot.l1 << ',' << c.robot.l2
     << ',' << c.robot.g << ';';
  v2("km", c.admittance.mass);
  v2("kb", c.admittance.damping);
  v2("kk", c.admittance.stiffness);
  const FixedTimeGains& g = c.gains;
  v2("kappa1", g.kappa1);
  v2("theta1", g.theta1);
  v2("theta2", g.theta2);
  v2("k1", g.k1);
  v2("k2", g.k2);
  v2("k3", g.k3);
  os << "k4=" << g.k4 << ";k5=" << g.k5 << ";p=" << g.p_c << ";q=" << g.q_c.num << '/'
     << g.q_c.den << ';';
  if (include_variant) {
    os << "variant=" << to_string(c.variant.kind) << ';' << "nn=" << c.variant.model_free << ';';
  }
  for (const BoundWave& w : c.constraints.axes()) {
    os << "bound=" << w.offset << ',' << w.amplitude << ',' << w.frequency << ',' << w.phase
       << ';';
  }
  os << "circle=" << c.desired.radius << ',' << c.desired.angular_rate << ';';
  os << "centers=";
  for (double x : c.network.centers) os << x << ',';
  os << ";width=" << c.network.width << ";sigma=" << c.network.traditional_sigma
     << ";rate=" << c.network.traditional_rate << ';';
  v2("a", c.force_amps);
  v2("q0", c.q0);
  os << "horizon=" << c.horizon << ";dt=" << c.dt << ";decimation=" << c.trace_decimation
     << ";strict=" << c.strict << ";start=" << to_string(c.reference_start) << ';';
  return os.str();
}

std::uint64_t scenario_fingerprint(const ScenarioConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canonical_string(cfg, false)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace fxtblf
