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

#ifndef FXTBLF_INTEGRATOR_HPP_
#define FXTBLF_INTEGRATOR_HPP_

#include <stdexcept>

namespace fxtblf {

/// One classic fourth-order Runge-Kutta step of y' = f(t, y).
///
/// `State` must support `State + State` and `double * State` (Eigen vectors,
/// plain doubles). Any control inputs captured by `f` are held fixed over
/// the step.
template <typename State, typename Rhs>
State rk4_step(Rhs&& f, double t, const State& y, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
  const double h = 0.5 * dt;
  const State k1 = f(t, y);
  const State k2 = f(t + h, State(y + h * k1));
  const State k3 = f(t + h, State(y + h * k2));
  const State k4 = f(t + dt, State(y + dt * k3));
  return State(y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace fxtblf

#endif  // FXTBLF_INTEGRATOR_HPP_
