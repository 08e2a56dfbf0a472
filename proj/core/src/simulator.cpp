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

#include "fxtblf/simulator.hpp"

#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <string>

#include "fxtblf/errors.hpp"
#include "fxtblf/integrator.hpp"

namespace fxtblf {

namespace {

using LoopVector = Eigen::Matrix<double, 8, 1>;

// Used only in tolerant mode, where the controller still needs a state
// strictly inside the barrier after a breach.
constexpr double kProjectionMargin = 1e-6;

double project_inside(double v, double bound) {
  const double limit = (1.0 - kProjectionMargin) * bound;
  if (std::abs(v) < limit) return v;
  return std::copysign(limit, v);
}

Eigen::VectorXd flatten_weights(const Eigen::MatrixXd& w) {
  Eigen::VectorXd flat(w.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) flat(k++) = w(i, j);
  }
  return flat;
}

}  // namespace

LoopState rk4_step(const RobotParams& robot, const AdmittanceParams& admittance,
                   const DesiredCircle& desired, const Vec2& force_amps, const LoopState& s,
                   double t, double dt, const Vec2& tau_c) {
  auto rhs = [&](double time, const LoopVector& y) {
    const PlantState plant{y.segment<2>(0), y.segment<2>(2)};
    const Vec2 fe = external_force(time, force_amps);
    const Vec2 tau_e = jacobian(robot, plant.q).transpose() * fe;
    LoopVector dy;
    dy << plant.qd, plant_acceleration(robot, plant, tau_c, tau_e), y.segment<2>(6),
        admittance_acceleration(admittance, desired.at(time), y.segment<2>(4), y.segment<2>(6),
                                fe);
    return dy;
  };

  LoopVector y;
  y << s.plant.q, s.plant.qd, s.ref.pos, s.ref.vel;
  const LoopVector next = fxtblf::rk4_step(rhs, t, y, dt);

  LoopState out;
  out.plant.q = next.segment<2>(0);
  out.plant.qd = next.segment<2>(2);
  out.ref.pos = next.segment<2>(4);
  out.ref.vel = next.segment<2>(6);
  out.ref.acc = admittance_acceleration(admittance, desired.at(t + dt), out.ref.pos, out.ref.vel,
                                        external_force(t + dt, force_amps));
  return out;
}

ClosedLoopSimulation::ClosedLoopSimulation(const ScenarioConfig& cfg)
    : cfg_((cfg.validate(), cfg)),
      profile_(cfg.variant.kind == ControllerKind::kIblf ? cfg.constraints.frozen(0.0)
                                                          : cfg.constraints),
      controller_(cfg.variant.kind, cfg.gains),
      net_(RbfNetwork::replicated(cfg.network.centers, 4 * kAxes, cfg.network.width)),
      total_steps_(cfg.steps()) {
  state_.plant.q = cfg_.q0;
  state_.plant.qd.setZero();
  const DesiredSample d0 = cfg_.desired.at(0.0);
  const Vec2 fe0 = external_force(0.0, cfg_.force_amps);
  if (cfg_.reference_start == ReferenceStart::kDesired) {
    state_.ref.pos = d0.pos;
    state_.ref.vel = d0.vel;
  } else {
    state_.ref.pos = forward_kinematics(cfg_.robot, cfg_.q0);
    state_.ref.vel.setZero();
  }
  state_.ref.acc =
      admittance_acceleration(cfg_.admittance, d0, state_.ref.pos, state_.ref.vel, fe0);

  trace_.variant = cfg_.variant;
  trace_.dt = cfg_.dt;
  trace_.sample_period = cfg_.dt * cfg_.trace_decimation;
  trace_.nodes = net_.nodes();
  trace_.samples.reserve(static_cast<std::size_t>(total_steps_ / cfg_.trace_decimation + 1));
}

ClosedLoopSimulation::StepOutput ClosedLoopSimulation::evaluate(double t) {
  const RobotParams& robot = cfg_.robot;
  const Vec2& q = state_.plant.q;
  const Vec2& qd = state_.plant.qd;

  const Mat2 jac = jacobian(robot, q);
  const double det = jac.determinant();
  if (std::abs(det) < kSingularDetThreshold) throw SingularJacobian(det, t);

  StepOutput out;
  TraceSample& s = out.sample;
  s.t = t;
  s.q = q;
  s.qd = qd;
  s.x = forward_kinematics(robot, q);
  s.xdot = jac * qd;
  s.xd = cfg_.desired.at(t).pos;
  s.xr = state_.ref.pos;
  s.fe = external_force(t, cfg_.force_amps);
  const ConstraintSample c = profile_.at(t);
  s.bound = c.bound;

  bool inside = true;
  for (int i = 0; i < kAxes; ++i) {
    if (std::abs(s.x(i)) >= c.bound(i) || std::abs(s.xr(i)) >= c.bound(i)) {
      if (cfg_.strict) {
        const bool state_out = std::abs(s.x(i)) >= c.bound(i);
        throw ConstraintBreach(t, i, std::abs(state_out ? s.x(i) : s.xr(i)), c.bound(i));
      }
      inside = false;
    }
  }
  if (!inside) {
    ++trace_.breach_steps;
    if (!trace_.first_breach_time) trace_.first_breach_time = t;
  }

  Vec2 eta = s.x;
  Vec2 xr = s.xr;
  if (!inside) {
    for (int i = 0; i < kAxes; ++i) {
      eta(i) = project_inside(eta(i), c.bound(i));
      xr(i) = project_inside(xr(i), c.bound(i));
    }
  }

  ErrorState e;
  e.z1 = eta - xr;
  const Vec2 alpha = controller_.alpha(e.z1, xr, state_.ref.vel, c);
  const Vec2 alpha_dot = controller_.alpha_dot(alpha, cfg_.dt);
  e.z2 = s.xdot - alpha;

  if (cfg_.variant.model_free) {
    Eigen::VectorXd z(4 * kAxes);
    z << q, qd, alpha, alpha_dot;
    out.basis = net_.basis(z);
    s.u = controller_.model_free(net_.output_from_basis(out.basis), e, s.fe, eta, c.bound);
  } else {
    const CartesianCoefficients coeffs = cartesian_coefficients(robot, q, qd);
    s.u = controller_.model_based(coeffs, e, alpha, alpha_dot, s.fe, eta, c.bound);
  }
  s.tau = jac.transpose() * s.u;
  s.z1 = s.x - s.xr;
  s.z2 = e.z2;

  if (inside) {
    s.v1 = 0.0;
    for (int i = 0; i < kAxes; ++i) s.v1 += v1_value(s.z1(i), s.xr(i), c.bound(i));
  } else {
    s.v1 = std::numeric_limits<double>::infinity();
  }
  return out;
}

bool ClosedLoopSimulation::step() {
  const double t = time();
  StepOutput out = evaluate(t);
  if (step_ % cfg_.trace_decimation == 0) {
    out.sample.weights = flatten_weights(net_.weights());
    trace_.samples.push_back(out.sample);
  }
  if (step_ >= total_steps_) return false;

  state_ = rk4_step(cfg_.robot, cfg_.admittance, cfg_.desired, cfg_.force_amps, state_, t,
                    cfg_.dt, out.sample.tau);

  if (cfg_.variant.model_free) {
    const FixedTimeGains& g = cfg_.gains;
    if (cfg_.variant.kind == ControllerKind::kFxtTviblf) {
      net_.update_fixed_time(out.basis, out.sample.z2, cfg_.dt, g.k4, g.k5, g.p_c, g.q_c.value());
    } else {
      net_.update_traditional(out.basis, out.sample.z2, cfg_.dt, cfg_.network.traditional_sigma,
                              cfg_.network.traditional_rate);
    }
  }

  if (!state_.plant.q.allFinite() || !state_.plant.qd.allFinite() ||
      !state_.ref.pos.allFinite() || !net_.weights().allFinite()) {
    throw Error("non-finite closed-loop state at t = " + std::to_string(t + cfg_.dt));
  }
  ++step_;
  return true;
}

SimulationTrace ClosedLoopSimulation::run() {
  while (step()) {
  }
  return trace_;
}

SimulationTrace run_scenario(const ScenarioConfig& cfg) {
  ClosedLoopSimulation sim(cfg);
  return sim.run();
}

}  // namespace fxtblf
