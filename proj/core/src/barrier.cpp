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

#include "fxtblf/barrier.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fxtblf/errors.hpp"

namespace fxtblf {

namespace {

// ln[(kc^2 - eta^2) / (kc^2 - xr^2)] with eta = z1 + xr, accurate for small z1.
double log_gap_ratio(double z1, double xr, double kc) {
  return std::log1p(-z1 * (2.0 * xr + z1) / (kc * kc - xr * xr));
}

// ln[(kc + eta)(kc - xr) / ((kc - eta)(kc + xr))], accurate for small z1.
double log_asym_ratio(double z1, double xr, double kc) {
  return std::log1p(z1 / (kc + xr)) - std::log1p(-z1 / (kc - xr));
}

}  // namespace

ConstraintProfile ConstraintProfile::workspace_default() {
  const double pi = std::numbers::pi;
  return ConstraintProfile({BoundWave{0.48, 0.1, 0.2, -pi / 3.0},
                            BoundWave{-0.48, 0.1, 0.2, -pi / 2.0}});
}

ConstraintProfile ConstraintProfile::constant(const Vec2& bounds) {
  return ConstraintProfile({BoundWave{bounds(0), 0.0, 0.0, 0.0},
                            BoundWave{bounds(1), 0.0, 0.0, 0.0}});
}

ConstraintSample ConstraintProfile::at(double t) const {
  ConstraintSample s;
  for (int i = 0; i < kAxes; ++i) {
    const BoundWave& w = axes_[static_cast<std::size_t>(i)];
    const double arg = w.frequency * t + w.phase;
    const double kc = w.offset + w.amplitude * std::cos(arg);
    const double kc_dot = -w.amplitude * w.frequency * std::sin(arg);
    s.bound(i) = std::abs(kc);
    s.rate(i) = kc < 0.0 ? -kc_dot : kc_dot;
  }
  return s;
}

ConstraintProfile ConstraintProfile::frozen(double t) const { return constant(bound(t)); }

void ConstraintProfile::validate_over(double horizon, int samples) const {
  if (samples < 2) samples = 2;
  // |kc| can touch zero between grid points; a sign change of kc catches that.
  Vec2 prev_kc = Vec2::Zero();
  for (int k = 0; k < samples; ++k) {
    const double t = horizon * static_cast<double>(k) / static_cast<double>(samples - 1);
    Vec2 kc;
    for (int i = 0; i < kAxes; ++i) {
      const BoundWave& w = axes_[static_cast<std::size_t>(i)];
      kc(i) = w.offset + w.amplitude * std::cos(w.frequency * t + w.phase);
    }
    const bool flipped = k > 0 && ((kc.array() * prev_kc.array()) < 0.0).any();
    if (!(kc.cwiseAbs().minCoeff() > 0.0) || !kc.allFinite() || flipped) {
      throw DomainError("constraint bound is not positive at t = " + std::to_string(t));
    }
    prev_kc = kc;
  }
}

void require_inside_barrier(double eta, double xr, double kc) {
  if (!(kc > 0.0)) throw OutOfBarrier("barrier bound must be positive");
  if (!(std::abs(eta) < kc)) {
    throw OutOfBarrier("state outside barrier: |eta| = " + std::to_string(std::abs(eta)) +
                       ", kc = " + std::to_string(kc));
  }
  if (!(std::abs(xr) < kc)) {
    throw OutOfBarrier("reference outside barrier: |xr| = " + std::to_string(std::abs(xr)) +
                       ", kc = " + std::to_string(kc));
  }
}

double v1_value(double z1, double xr, double kc) {
  require_inside_barrier(z1 + xr, xr, kc);
  if (z1 == 0.0) return 0.0;
  // Partial fractions: s kc^2/(kc^2 - s^2) integrated over s in [xr, eta] after
  // the shift s = delta + xr.
  const double value = -0.5 * kc * kc * log_gap_ratio(z1, xr, kc) -
                       0.5 * xr * kc * log_asym_ratio(z1, xr, kc);
  return value > 0.0 ? value : 0.0;
}

double rho(double z1, double xr, double kc) {
  require_inside_barrier(z1 + xr, xr, kc);
  if (std::abs(z1) < kLimitBranchThreshold) return kc * kc / (kc * kc - xr * xr);
  return kc / (2.0 * z1) * log_asym_ratio(z1, xr, kc);
}

double omega(double z1, double xr, double kc) {
  const double eta = z1 + xr;
  require_inside_barrier(eta, xr, kc);
  const double k2 = kc * kc;
  if (std::abs(z1) < kLimitBranchThreshold) return (xr * xr - 3.0 * xr * kc) / (k2 - xr * xr);
  const double log_ratio = log_gap_ratio(z1, xr, kc);
  return -xr * kc / (k2 - eta * eta) + kc / z1 * log_ratio + xr / (2.0 * z1) * (-log_ratio);
}

BarrierEval evaluate_barrier(double z1, double xr, double kc) {
  return {v1_value(z1, xr, kc), rho(z1, xr, kc), omega(z1, xr, kc)};
}

double barrier_weight(double eta, double kc) {
  const double k2 = kc * kc;
  return k2 / (k2 - eta * eta);
}

}  // namespace fxtblf
