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

#ifndef FXTBLF_DYNAMICS_HPP_
#define FXTBLF_DYNAMICS_HPP_

#include "fxtblf/types.hpp"

namespace fxtblf {

/// Point-mass two-link planar arm. Defaults are the benchmark arm.
struct RobotParams {
  double m1 = 1.5;   // kg
  double m2 = 1.0;   // kg
  double l1 = 0.3;   // m
  double l2 = 0.3;   // m
  double g = 9.81;   // m/s^2

  /// Throws DomainError unless every field is strictly positive and finite.
  void validate() const;
};

struct PlantState {
  Vec2 q = Vec2::Zero();   // rad
  Vec2 qd = Vec2::Zero();  // rad/s
};

/// Joint-space dynamics mapped to the end-effector frame.
struct CartesianCoefficients {
  Mat2 mx;  // inertia
  Mat2 cx;  // Coriolis/centrifugal
  Vec2 gx;  // gravity wrench
  Vec2 fx;  // disturbance wrench
};

/// Jacobians with |det J| below this are treated as singular.
inline constexpr double kSingularDetThreshold = 1e-8;

Mat2 mass_matrix(const RobotParams& p, const Vec2& q);

/// Christoffel-consistent Coriolis matrix; C(q, qd) qd reproduces the
/// velocity-product torques of the closed-form arm model and M_dot - 2C is
/// skew-symmetric.
Mat2 coriolis_matrix(const RobotParams& p, const Vec2& q, const Vec2& qd);

Vec2 gravity_vector(const RobotParams& p, const Vec2& q);

/// Unmodelled friction/disturbance torque. Independent of qd for this arm.
Vec2 disturbance_vector(const Vec2& q, const Vec2& qd);

Mat2 jacobian(const RobotParams& p, const Vec2& q);
Mat2 jacobian_dot(const RobotParams& p, const Vec2& q, const Vec2& qd);

/// End-effector position in the joint-1 base frame.
Vec2 forward_kinematics(const RobotParams& p, const Vec2& q);

/// Cartesian-space coefficients:
///   Mx = J^-T M J^-1,  Cx = J^-T (C - M J^-1 J_dot) J^-1,
///   Gx = J^-T G,       Fx = J^-T F.
/// Throws SingularJacobian when |det J| < kSingularDetThreshold.
CartesianCoefficients cartesian_coefficients(const RobotParams& p, const Vec2& q,
                                             const Vec2& qd);

/// Forward dynamics: q_dd = M^-1 (tau_c + tau_e - C qd - G - F).
Vec2 plant_acceleration(const RobotParams& p, const PlantState& state, const Vec2& tau_c,
                        const Vec2& tau_e);

}  // namespace fxtblf

#endif  // FXTBLF_DYNAMICS_HPP_
