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

#include "fxtblf/control.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "fxtblf/errors.hpp"

namespace fxtblf {

std::string_view to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kFxtTviblf:
      return "FXT_TVIBLF";
    case ControllerKind::kTviblf:
      return "TVIBLF";
    case ControllerKind::kIblf:
      return "IBLF";
  }
  return "?";
}

ControllerKind parse_controller_kind(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "FXT_TVIBLF" || upper == "FXTTVIBLF" || upper == "FXT") {
    return ControllerKind::kFxtTviblf;
  }
  if (upper == "TVIBLF") return ControllerKind::kTviblf;
  if (upper == "IBLF") return ControllerKind::kIblf;
  throw DomainError("unknown controller kind '" + std::string(name) + "'");
}

std::string ControllerVariant::label() const {
  std::string s(to_string(kind));
  if (model_free) s += "+NN";
  return s;
}

void FixedTimeGains::validate(bool require_fixed_time) const {
  if (!(p_c > 1.0)) throw DomainError("p_c must exceed 1");
  if (!q_c.is_odd_ratio()) throw DomainError("q_c must be a ratio of odd integers");
  const double q = q_c.value();
  if (!(q > 0.0 && q < 1.0)) throw DomainError("q_c must lie in (0, 1)");
  if (!(kappa1.minCoeff() > 0.0)) throw DomainError("kappa1 must be positive");
  if (!(k1.minCoeff() > 0.5)) throw DomainError("K1 - I/2 must be positive definite");
  if (theta1.minCoeff() < 0.0 || theta2.minCoeff() < 0.0 || k2.minCoeff() < 0.0 ||
      k3.minCoeff() < 0.0 || k4 < 0.0 || k5 < 0.0) {
    throw DomainError("controller gains must be nonnegative");
  }
  if (require_fixed_time && !(theta1.minCoeff() > 0.0 && theta2.minCoeff() > 0.0 &&
                              k2.minCoeff() > 0.0 && k3.minCoeff() > 0.0)) {
    throw DomainError("fixed-time gains theta1, theta2, K2, K3 must be positive");
  }
}

FixedTimeGains FixedTimeGains::without_fixed_time_terms() const {
  FixedTimeGains g = *this;
  g.theta1.setZero();
  g.theta2.setZero();
  g.k2.setZero();
  g.k3.setZero();
  return g;
}

double signed_power(double x, double r) {
  if (x == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(x), r), x);
}

Vec2 signed_power(const Vec2& x, double r) { return {signed_power(x(0), r), signed_power(x(1), r)}; }

namespace {

// The drive terms of alpha shared by every variant, ending with -kappa1 z1.
struct AlphaParts {
  double reference_drive;
  double bound_drive;
  double bound_scaling;
  double gap;  // kc^2 - eta^2
};

AlphaParts alpha_parts(double z1, double xr, double xr_dot, double kc, double kc_dot) {
  const double eta = z1 + xr;
  const BarrierEval b = {0.0, rho(z1, xr, kc), omega(z1, xr, kc)};
  const double k2 = kc * kc;
  const double gap = k2 - eta * eta;
  return {gap * xr_dot * b.rho / k2, gap * kc_dot * b.omega / k2, z1 * kc_dot / kc, gap};
}

}  // namespace

Vec2 stabilizing_alpha(const Vec2& z1, const Vec2& xr, const Vec2& xr_dot,
                       const ConstraintSample& c, const FixedTimeGains& g) {
  const double p = g.p_c;
  const double q = g.q_c.value();
  Vec2 alpha;
  for (int i = 0; i < kAxes; ++i) {
    const double kc = c.bound(i);
    const AlphaParts a = alpha_parts(z1(i), xr(i), xr_dot(i), kc, c.rate(i));
    const double fast = signed_power(z1(i), 2.0 * p - 1.0) * std::pow(kc, 2.0 * p - 2.0) /
                        std::pow(a.gap, p + 1.0);
    const double slow = signed_power(z1(i), 2.0 * q - 1.0) * std::pow(kc, 2.0 * q - 2.0) /
                        std::pow(a.gap, q + 1.0);
    alpha(i) = a.reference_drive - a.bound_drive + a.bound_scaling - g.theta1(i) * fast -
               g.theta2(i) * slow - g.kappa1(i) * z1(i);
  }
  return alpha;
}

Vec2 stabilizing_alpha_baseline(const Vec2& z1, const Vec2& xr, const Vec2& xr_dot,
                                const ConstraintSample& c, const FixedTimeGains& g) {
  Vec2 alpha;
  for (int i = 0; i < kAxes; ++i) {
    const AlphaParts a = alpha_parts(z1(i), xr(i), xr_dot(i), c.bound(i), c.rate(i));
    alpha(i) = a.reference_drive - a.bound_drive + a.bound_scaling - g.kappa1(i) * z1(i);
  }
  return alpha;
}

Vec2 alpha_derivative(std::span<const Vec2> history, double dt) {
  if (history.size() < 2) return Vec2::Zero();
  return (history[history.size() - 1] - history[history.size() - 2]) / dt;
}

Vec2 AlphaDifferentiator::update(const Vec2& alpha, double dt) {
  Vec2 rate = Vec2::Zero();
  if (previous_) rate = (alpha - *previous_) / dt;
  previous_ = alpha;
  return rate;
}

namespace {

Vec2 barrier_feedback(const ErrorState& e, const Vec2& eta1, const Vec2& bound) {
  Vec2 out;
  for (int i = 0; i < kAxes; ++i) {
    require_inside_barrier(eta1(i), eta1(i) - e.z1(i), bound(i));
    out(i) = barrier_weight(eta1(i), bound(i)) * e.z1(i);
  }
  return out;
}

}  // namespace

Vec2 feedback_terms(const ErrorState& e, const Vec2& eta1, const Vec2& bound,
                    const FixedTimeGains& g) {
  const double p = g.p_c;
  const double q = g.q_c.value();
  const Vec2 fast = signed_power(e.z2, 2.0 * p - 1.0) / std::pow(2.0, p);
  const Vec2 slow = signed_power(e.z2, 2.0 * q - 1.0) / std::pow(2.0, q);
  return barrier_feedback(e, eta1, bound) + g.k1.cwiseProduct(e.z2) + g.k2.cwiseProduct(fast) +
         g.k3.cwiseProduct(slow);
}

Vec2 feedback_terms_baseline(const ErrorState& e, const Vec2& eta1, const Vec2& bound,
                             const FixedTimeGains& g) {
  return barrier_feedback(e, eta1, bound) + g.k1.cwiseProduct(e.z2);
}

Vec2 control_model_based(const CartesianCoefficients& c, const ErrorState& e, const Vec2& alpha,
                         const Vec2& alpha_dot, const Vec2& fe, const Vec2& eta1,
                         const Vec2& bound, const FixedTimeGains& g) {
  return c.gx + c.mx * alpha_dot + c.cx * alpha - fe - feedback_terms(e, eta1, bound, g);
}

Vec2 control_model_free(const Vec2& nn_output, const ErrorState& e, const Vec2& fe,
                        const Vec2& eta1, const Vec2& bound, const FixedTimeGains& g) {
  return -nn_output - fe - feedback_terms(e, eta1, bound, g);
}

BarrierController::BarrierController(ControllerKind kind, const FixedTimeGains& gains)
    : kind_(kind), gains_(gains) {
  gains_.validate(fixed_time());
}

Vec2 BarrierController::alpha(const Vec2& z1, const Vec2& xr, const Vec2& xr_dot,
                              const ConstraintSample& c) const {
  return fixed_time() ? stabilizing_alpha(z1, xr, xr_dot, c, gains_)
                      : stabilizing_alpha_baseline(z1, xr, xr_dot, c, gains_);
}

Vec2 BarrierController::model_based(const CartesianCoefficients& c, const ErrorState& e,
                                    const Vec2& alpha, const Vec2& alpha_dot, const Vec2& fe,
                                    const Vec2& eta1, const Vec2& bound) const {
  const Vec2 fb = fixed_time() ? feedback_terms(e, eta1, bound, gains_)
                               : feedback_terms_baseline(e, eta1, bound, gains_);
  return c.gx + c.mx * alpha_dot + c.cx * alpha - fe - fb;
}

Vec2 BarrierController::model_free(const Vec2& nn_output, const ErrorState& e, const Vec2& fe,
                                   const Vec2& eta1, const Vec2& bound) const {
  const Vec2 fb = fixed_time() ? feedback_terms(e, eta1, bound, gains_)
                               : feedback_terms_baseline(e, eta1, bound, gains_);
  return -nn_output - fe - fb;
}

double tmax_bound(double alpha_coef, double beta_coef, double v, double p_c, double q_c) {
  if (!(alpha_coef > 0.0) || !(beta_coef > 0.0)) {
    throw DomainError("tmax_bound: alpha and beta must be positive");
  }
  if (!(v > 0.0 && v <= 1.0)) throw DomainError("tmax_bound: v must lie in (0, 1]");
  if (!(p_c > 1.0)) throw DomainError("tmax_bound: p_c must exceed 1");
  if (!(q_c > 0.0 && q_c < 1.0)) throw DomainError("tmax_bound: q_c must lie in (0, 1)");
  return 1.0 / (alpha_coef * v * (p_c - 1.0)) + 1.0 / (beta_coef * v * (1.0 - q_c));
}

double weight_inequality_n1(double q) {
  return (1.0 / (1.0 + q)) *
         (1.0 - std::pow(2.0, q - 1.0) + q / (1.0 + q) +
          std::pow(2.0, q) * (1.0 - q * q) / (1.0 + q));
}

double weight_inequality_n2(double q) {
  return (std::pow(2.0, q) - 1.0) / (1.0 + q) * (1.0 - std::pow(2.0, q * (q - 1.0)));
}

FixedTimeRates fixed_time_rates(const FixedTimeGains& g, double inertia_max_eig, int nn_nodes,
                                bool with_network) {
  if (!(inertia_max_eig > 0.0)) throw DomainError("inertia eigenvalue bound must be positive");
  const double n = kAxes;
  const double p = g.p_c;
  const double q = g.q_c.value();
  FixedTimeRates r;
  r.lambda1 = g.theta1.minCoeff() * std::pow(n, 1.0 - p);
  r.lambda2 = g.theta2.minCoeff();
  r.lambda3 = g.k2.minCoeff() / std::pow(inertia_max_eig, p) * std::pow(n, 1.0 - p);
  r.lambda4 = g.k3.minCoeff() / std::pow(inertia_max_eig, q);
  if (!with_network) {
    r.alpha = std::pow(2.0, 1.0 - p) * std::min(r.lambda1, r.lambda3);
    r.beta = std::min(r.lambda2, r.lambda4);
    return r;
  }
  if (nn_nodes < 1) throw DomainError("network needs at least one node");
  // The weight law carries W^(2q-1), so the fractional inequality is taken
  // at exponent 2q - 1.
  r.lambda5 = std::pow(2.0, p) * g.k4 * std::pow(static_cast<double>(nn_nodes), 1.0 - p) *
              std::pow(n, 1.0 - p);
  r.lambda6 = std::pow(2.0, q) * g.k5 * weight_inequality_n2(2.0 * q - 1.0);
  r.alpha = std::pow(3.0, 1.0 - p) * std::min({r.lambda1, r.lambda3, r.lambda5});
  r.beta = std::min({r.lambda2, r.lambda4, r.lambda6});
  return r;
}

double max_inertia_eigenvalue(const RobotParams& p) {
  double best = 0.0;
  for (double q2 : {0.0, 3.14159265358979323846}) {
    const Eigen::SelfAdjointEigenSolver<Mat2> es(mass_matrix(p, Vec2(0.0, q2)),
                                                 Eigen::EigenvaluesOnly);
    best = std::max(best, es.eigenvalues().maxCoeff());
  }
  return best;
}

}  // namespace fxtblf
