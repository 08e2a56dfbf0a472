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

#include "fxtblf/dynamics.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "fxtblf/errors.hpp"

namespace fxtblf {

void RobotParams::validate() const {
  for (double v : {m1, m2, l1, l2, g}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("robot parameters must be strictly positive and finite");
    }
  }
}

Mat2 mass_matrix(const RobotParams& p, const Vec2& q) {
  const double c2 = std::cos(q(1));
  const double a = p.m2 * p.l2 * p.l2;
  const double b = p.m2 * p.l1 * p.l2 * c2;
  Mat2 m;
  m << a + 2.0 * b + (p.m1 + p.m2) * p.l1 * p.l1, a + b,
       a + b, a;
  return m;
}

Mat2 coriolis_matrix(const RobotParams& p, const Vec2& q, const Vec2& qd) {
  const double h = p.m2 * p.l1 * p.l2 * std::sin(q(1));
  Mat2 c;
  c << -h * qd(1), -h * (qd(0) + qd(1)),
       h * qd(0), 0.0;
  return c;
}

Vec2 gravity_vector(const RobotParams& p, const Vec2& q) {
  const double c1 = std::cos(q(0));
  const double c12 = std::cos(q(0) + q(1));
  const double g2 = p.m2 * p.l2 * p.g * c12;
  return {g2 + (p.m1 + p.m2) * p.l1 * p.g * c1, g2};
}

Vec2 disturbance_vector(const Vec2& q, const Vec2& /*qd*/) {
  const double c1 = std::cos(q(0));
  const double f = 4.0 * c1 * std::sin(q(1)) + 6.0 * c1 * c1 - 2.0;
  return {f, -f};
}

Mat2 jacobian(const RobotParams& p, const Vec2& q) {
  const double s1 = std::sin(q(0)), c1 = std::cos(q(0));
  const double s12 = std::sin(q(0) + q(1)), c12 = std::cos(q(0) + q(1));
  Mat2 j;
  j << -p.l1 * s1 - p.l2 * s12, -p.l2 * s12,
       p.l1 * c1 + p.l2 * c12, p.l2 * c12;
  return j;
}

Mat2 jacobian_dot(const RobotParams& p, const Vec2& q, const Vec2& qd) {
  const double s1 = std::sin(q(0)), c1 = std::cos(q(0));
  const double s12 = std::sin(q(0) + q(1)), c12 = std::cos(q(0) + q(1));
  const double w12 = qd(0) + qd(1);
  Mat2 jd;
  jd << -p.l1 * c1 * qd(0) - p.l2 * c12 * w12, -p.l2 * c12 * w12,
        -p.l1 * s1 * qd(0) - p.l2 * s12 * w12, -p.l2 * s12 * w12;
  return jd;
}

Vec2 forward_kinematics(const RobotParams& p, const Vec2& q) {
  return {p.l1 * std::cos(q(0)) + p.l2 * std::cos(q(0) + q(1)),
          p.l1 * std::sin(q(0)) + p.l2 * std::sin(q(0) + q(1))};
}

CartesianCoefficients cartesian_coefficients(const RobotParams& p, const Vec2& q,
                                             const Vec2& qd) {
  const Mat2 j = jacobian(p, q);
  const double det = j.determinant();
  if (std::abs(det) < kSingularDetThreshold) throw SingularJacobian(det);

  const Mat2 j_inv = j.inverse();
  const Mat2 j_inv_t = j_inv.transpose();
  const Mat2 m = mass_matrix(p, q);

  CartesianCoefficients out;
  out.mx = j_inv_t * m * j_inv;
  out.cx = j_inv_t * (coriolis_matrix(p, q, qd) - m * j_inv * jacobian_dot(p, q, qd)) * j_inv;
  out.gx = j_inv_t * gravity_vector(p, q);
  out.fx = j_inv_t * disturbance_vector(q, qd);
  return out;
}

Vec2 plant_acceleration(const RobotParams& p, const PlantState& state, const Vec2& tau_c,
                        const Vec2& tau_e) {
  const Vec2 rhs = tau_c + tau_e - coriolis_matrix(p, state.q, state.qd) * state.qd -
                   gravity_vector(p, state.q) - disturbance_vector(state.q, state.qd);
  // M is SPD for every q.
  return mass_matrix(p, state.q).ldlt().solve(rhs);
}

}  // namespace fxtblf
