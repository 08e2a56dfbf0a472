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

#include "fxtblf/admittance.hpp"

#include <cmath>

#include "fxtblf/errors.hpp"
#include "fxtblf/integrator.hpp"

namespace fxtblf {

void AdmittanceParams::validate() const {
  for (int i = 0; i < kAxes; ++i) {
    for (double v : {mass(i), damping(i), stiffness(i)}) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError("admittance mass, damping and stiffness must be strictly positive");
      }
    }
  }
}

Vec2 admittance_acceleration(const AdmittanceParams& p, const DesiredSample& desired,
                             const Vec2& xr, const Vec2& xr_dot, const Vec2& fe) {
  const Vec2 spring_damper = p.damping.cwiseProduct(xr_dot - desired.vel) +
                             p.stiffness.cwiseProduct(xr - desired.pos);
  return desired.acc + (fe - spring_damper).cwiseQuotient(p.mass);
}

ReferenceState step_reference(const AdmittanceParams& p, double t, double dt,
                              const ReferenceState& ref, const DesiredFn& desired,
                              const ForceFn& force) {
  using State = Eigen::Matrix<double, 4, 1>;
  auto rhs = [&](double s, const State& y) {
    const Vec2 pos = y.head<2>();
    const Vec2 vel = y.tail<2>();
    State dy;
    dy << vel, admittance_acceleration(p, desired(s), pos, vel, force(s));
    return dy;
  };
  State y;
  y << ref.pos, ref.vel;
  const State next = rk4_step(rhs, t, y, dt);

  ReferenceState out;
  out.pos = next.head<2>();
  out.vel = next.tail<2>();
  out.acc = admittance_acceleration(p, desired(t + dt), out.pos, out.vel, force(t + dt));
  return out;
}

ReferenceState reference_on_desired(const AdmittanceParams& p, const DesiredSample& desired) {
  ReferenceState ref;
  ref.pos = desired.pos;
  ref.vel = desired.vel;
  ref.acc = admittance_acceleration(p, desired, ref.pos, ref.vel, Vec2::Zero());
  return ref;
}

}  // namespace fxtblf
