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

#ifndef FXTBLF_SCENARIO_HPP_
#define FXTBLF_SCENARIO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fxtblf/admittance.hpp"
#include "fxtblf/barrier.hpp"
#include "fxtblf/control.hpp"
#include "fxtblf/dynamics.hpp"
#include "fxtblf/types.hpp"

namespace fxtblf {

/// Human force pushed on at 20 s and released at 31 s:
///   a (1 - cos(pi t)) on [20, 21), 2a on [21, 30), a (1 + cos(pi t)) on [30, 31), 0 otherwise.
Vec2 external_force(double t, const Vec2& amps);

/// Force release time; the trailing force-free segment starts here.
inline constexpr double kForceReleaseTime = 31.0;

/// Circular task trajectory x_d = r (cos wt, sin wt).
struct DesiredCircle {
  double radius = 0.18;       // m
  double angular_rate = 0.5;  // rad/s

  DesiredSample at(double t) const;
};

/// x_d, x_d_dot, x_d_ddot of the default circle.
DesiredSample desired_trajectory(double t);

/// Default workspace bounds and their rates at time t.
ConstraintSample constraint_profile(double t);

/// Where the compliant reference starts.
enum class ReferenceStart {
  kMeasured,  // xr(0) = FK(q0), xr_dot(0) = J(q0) qd0 = 0
  kDesired,   // xr(0) = xd(0), xr_dot(0) = xd_dot(0)
};

std::string_view to_string(ReferenceStart start);

struct NetworkConfig {
  std::vector<double> centers{-25.0, -15.0, -5.0, -1.0, 1.0, 5.0, 15.0, 25.0};
  double width = 40.0;
  // sigma-modification law used by the IBLF/TVIBLF network baselines
  double traditional_sigma = 0.1;
  double traditional_rate = 100.0;
};

struct ScenarioConfig {
  RobotParams robot;
  AdmittanceParams admittance;
  FixedTimeGains gains;
  ControllerVariant variant;
  ConstraintProfile constraints = ConstraintProfile::workspace_default();
  DesiredCircle desired;
  NetworkConfig network;

  Vec2 force_amps{1.0, 2.0};  // N
  double horizon = 50.0;      // s
  double dt = 1e-4;           // s
  Vec2 q0{0.5236, 2.0944};    // rad, arm starts at rest
  int trace_decimation = 10;
  bool strict = true;  // abort on the first constraint breach
  ReferenceStart reference_start = ReferenceStart::kMeasured;

  /// Throws DomainError on any violated invariant (including non-positive
  /// bounds anywhere on the horizon).
  void validate() const;

  /// Number of integration steps, round(horizon / dt).
  std::int64_t steps() const;
};

/// Canonical text form of a configuration; identical configurations produce
/// identical strings. With `include_variant == false` the controller variant
/// is left out, so every row of a comparison shares one fingerprint.
std::string canonical_string(const ScenarioConfig& cfg, bool include_variant = true);

/// FNV-1a hash of canonical_string(cfg, false).
std::uint64_t scenario_fingerprint(const ScenarioConfig& cfg);

}  // namespace fxtblf

#endif  // FXTBLF_SCENARIO_HPP_
