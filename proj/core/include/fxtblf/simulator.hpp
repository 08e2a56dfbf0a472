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

#ifndef FXTBLF_SIMULATOR_HPP_
#define FXTBLF_SIMULATOR_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "fxtblf/admittance.hpp"
#include "fxtblf/control.hpp"
#include "fxtblf/dynamics.hpp"
#include "fxtblf/nn.hpp"
#include "fxtblf/scenario.hpp"

namespace fxtblf {

/// One logged instant of a closed-loop run. `u` and `tau` are the values held
/// over the step that starts at `t`.
struct TraceSample {
  double t = 0.0;
  Vec2 q = Vec2::Zero();
  Vec2 qd = Vec2::Zero();
  Vec2 x = Vec2::Zero();
  Vec2 xdot = Vec2::Zero();
  Vec2 xd = Vec2::Zero();
  Vec2 xr = Vec2::Zero();
  Vec2 z1 = Vec2::Zero();
  Vec2 z2 = Vec2::Zero();
  Vec2 u = Vec2::Zero();
  Vec2 tau = Vec2::Zero();
  Vec2 fe = Vec2::Zero();
  Vec2 bound = Vec2::Zero();
  double v1 = 0.0;
  /// Network weights, axis-major: [W_1^T, W_2^T]. Zero for model-based runs.
  Eigen::VectorXd weights;
};

struct SimulationTrace {
  ControllerVariant variant;
  double dt = 0.0;              // integration step
  double sample_period = 0.0;   // dt * decimation
  int nodes = 0;                // weights per axis
  std::vector<TraceSample> samples;

  /// Integration steps on which |x_i| >= bound_i (tolerant mode only).
  std::int64_t breach_steps = 0;
  std::optional<double> first_breach_time;
};

/// Integration state: plant joints plus the compliant reference.
struct LoopState {
  PlantState plant;
  ReferenceState ref;
};

/// One RK4 step of the coupled plant and admittance reference with the
/// control torque held constant. The human force enters the plant as
/// J(q)^T fe(t) and the admittance filter as fe(t), both at the stage times.
LoopState rk4_step(const RobotParams& robot, const AdmittanceParams& admittance,
                   const DesiredCircle& desired, const Vec2& force_amps, const LoopState& s,
                   double t, double dt, const Vec2& tau_c);

/// Fixed-step closed-loop simulation of one scenario.
class ClosedLoopSimulation {
 public:
  explicit ClosedLoopSimulation(const ScenarioConfig& cfg);

  /// Computes the control for the current step, logs it if the step is on
  /// the trace grid, integrates to the next step and adapts the network.
  /// Returns false once the horizon is reached (the final state is logged).
  bool step();

  SimulationTrace run();

  double time() const { return static_cast<double>(step_) * cfg_.dt; }
  const LoopState& state() const { return state_; }
  const SimulationTrace& trace() const { return trace_; }
  const RbfNetwork& network() const { return net_; }

 private:
  struct StepOutput {
    TraceSample sample;
    Eigen::VectorXd basis;
  };

  StepOutput evaluate(double t);

  ScenarioConfig cfg_;
  ConstraintProfile profile_;
  BarrierController controller_;
  RbfNetwork net_;
  LoopState state_;
  SimulationTrace trace_;
  std::int64_t step_ = 0;
  std::int64_t total_steps_ = 0;
};

/// Runs `cfg` from t = 0 to the horizon. Throws ConstraintBreach (strict
/// mode), SingularJacobian (with the time stamp) or Error on a non-finite
/// state.
SimulationTrace run_scenario(const ScenarioConfig& cfg);

}  // namespace fxtblf

#endif  // FXTBLF_SIMULATOR_HPP_
