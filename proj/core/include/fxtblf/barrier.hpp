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

#ifndef FXTBLF_BARRIER_HPP_
#define FXTBLF_BARRIER_HPP_

#include <array>

#include "fxtblf/types.hpp"

namespace fxtblf {

/// One axis of a workspace bound: kc(t) = offset + amplitude cos(frequency t + phase).
/// The barrier uses the symmetric magnitude |kc(t)|, so a negative offset
/// describes the same region as its absolute value.
struct BoundWave {
  double offset = 0.5;
  double amplitude = 0.0;
  double frequency = 0.0;  // rad/s
  double phase = 0.0;      // rad
};

struct ConstraintSample {
  Vec2 bound = Vec2::Zero();  // m, strictly positive
  Vec2 rate = Vec2::Zero();   // m/s
};

/// Time-varying per-axis bound |x_i(t)| < bound_i(t).
class ConstraintProfile {
 public:
  ConstraintProfile() : ConstraintProfile(workspace_default()) {}
  explicit ConstraintProfile(const std::array<BoundWave, kAxes>& axes) : axes_(axes) {}

  /// axis 1: 0.48 + 0.1 cos(0.2 t - pi/3); axis 2: |-0.48 + 0.1 sin(0.2 t)|.
  static ConstraintProfile workspace_default();
  static ConstraintProfile constant(const Vec2& bounds);

  ConstraintSample at(double t) const;
  Vec2 bound(double t) const { return at(t).bound; }
  Vec2 rate(double t) const { return at(t).rate; }

  /// Constant profile holding bound(t) with zero rate.
  ConstraintProfile frozen(double t) const;

  /// Throws DomainError if any bound is non-positive on a uniform grid over
  /// [0, horizon].
  void validate_over(double horizon, int samples = 10001) const;

  const std::array<BoundWave, kAxes>& axes() const { return axes_; }

 private:
  std::array<BoundWave, kAxes> axes_;
};

/// Below this |z1| the rho/omega expressions switch to their z1 -> 0 limits.
inline constexpr double kLimitBranchThreshold = 1e-8;

/// Integral barrier value V1 = int_0^z1 s kc^2 / (kc^2 - (s + xr)^2) ds,
/// evaluated in closed form. Throws OutOfBarrier unless |z1 + xr| < kc and
/// |xr| < kc.
double v1_value(double z1, double xr, double kc);

/// rho = kc / (2 z1) ln[(kc + eta)(kc - xr) / ((kc - eta)(kc + xr))], eta = z1 + xr.
double rho(double z1, double xr, double kc);

/// omega = -xr kc / (kc^2 - eta^2) + (kc / z1) ln[(kc^2 - eta^2) / (kc^2 - xr^2)]
///         + (xr / (2 z1)) ln[(kc^2 - xr^2) / (kc^2 - eta^2)].
double omega(double z1, double xr, double kc);

struct BarrierEval {
  double v1 = 0.0;
  double rho = 0.0;
  double omega = 0.0;
};

BarrierEval evaluate_barrier(double z1, double xr, double kc);

/// kc^2 / (kc^2 - eta^2); the weight on z1 in the barrier feedback term.
double barrier_weight(double eta, double kc);

/// Throws OutOfBarrier unless kc > 0, |eta| < kc and |xr| < kc.
void require_inside_barrier(double eta, double xr, double kc);

}  // namespace fxtblf

#endif  // FXTBLF_BARRIER_HPP_
