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

#ifndef FXTBLF_CHECKS_HPP_
#define FXTBLF_CHECKS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fxtblf/dynamics.hpp"

namespace fxtblf::checks {

/// Outcome of one randomized property check. `worst` is the largest observed
/// violation measure (error, ratio gap, ...) in the units named by `detail`.
struct CheckResult {
  std::string name;
  bool passed = true;
  long samples = 0;
  double worst = 0.0;
  std::string detail;
  std::string counterexample;  // first failing sample, empty when passed
};

/// Inertia SPD, M_dot - 2C skew symmetry, FK/Jacobian and J_dot finite
/// differences, Cartesian SPD/skew and J^T Mx J = M.
std::vector<CheckResult> dynamics_identities(const RobotParams& p, std::uint64_t seed,
                                             long samples = 1000);

/// Closed-form V1 against adaptive quadrature, the quadratic upper bound on
/// V1, rho/omega continuity at the limit branch, divergence towards the bound.
std::vector<CheckResult> barrier_oracles(std::uint64_t seed, long samples = 1000);

/// Weight, sum-power, odd-power, Young and Rayleigh inequalities, positivity
/// of the fractional-power scalar ODE and settling within the fixed-time
/// bound.
std::vector<CheckResult> lemma_suite(const RobotParams& p, std::uint64_t seed,
                                     long samples = 10000);

/// Error ratio between dt and dt/2 RK4 runs of a harmonic oscillator over one
/// period; fourth order gives about 16.
struct IntegratorOrder {
  double error_coarse = 0.0;
  double error_fine = 0.0;
  double ratio = 0.0;
  double energy_drift = 0.0;  // one period at dt = 1e-3
};
IntegratorOrder rk4_harmonic_order(int steps_per_period = 64);

/// V1 by adaptive Gauss-Kronrod quadrature of its defining integral.
double v1_quadrature(double z1, double xr, double kc);

/// Real power of an odd-denominator rational, x^(num/den), defined for
/// negative x.
double rational_power(double x, long num, long den);

}  // namespace fxtblf::checks

#endif  // FXTBLF_CHECKS_HPP_
