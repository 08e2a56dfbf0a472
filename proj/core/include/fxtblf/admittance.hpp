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

#ifndef FXTBLF_ADMITTANCE_HPP_
#define FXTBLF_ADMITTANCE_HPP_

#include <functional>

#include "fxtblf/types.hpp"

namespace fxtblf {

/// Per-axis virtual mass-spring-damper at the end effector.
struct AdmittanceParams {
  Vec2 mass{20.0, 20.0};         // kg
  Vec2 damping{20.0, 20.0};      // N s/m
  Vec2 stiffness{100.0, 100.0};  // N/m

  void validate() const;
};

/// Desired trajectory sample and its first two time derivatives.
struct DesiredSample {
  Vec2 pos = Vec2::Zero();
  Vec2 vel = Vec2::Zero();
  Vec2 acc = Vec2::Zero();
};

/// Compliant reference x_r. `acc` is the admittance acceleration evaluated at
/// the stored (pos, vel).
struct ReferenceState {
  Vec2 pos = Vec2::Zero();
  Vec2 vel = Vec2::Zero();
  Vec2 acc = Vec2::Zero();
};

using DesiredFn = std::function<DesiredSample(double)>;
using ForceFn = std::function<Vec2(double)>;

/// Admittance law solved for the reference acceleration:
///   xr_dd = xd_dd + (fe - kb (xr_d - xd_d) - kk (xr - xd)) / km
Vec2 admittance_acceleration(const AdmittanceParams& p, const DesiredSample& desired,
                             const Vec2& xr, const Vec2& xr_dot, const Vec2& fe);

/// Advances (xr, xr_dot) from t to t + dt with one RK4 step, the force and
/// desired trajectory evaluated at the stage times.
ReferenceState step_reference(const AdmittanceParams& p, double t, double dt,
                              const ReferenceState& ref, const DesiredFn& desired,
                              const ForceFn& force);

/// Reference that coincides with the desired trajectory at time t.
ReferenceState reference_on_desired(const AdmittanceParams& p, const DesiredSample& desired);

}  // namespace fxtblf

#endif  // FXTBLF_ADMITTANCE_HPP_
