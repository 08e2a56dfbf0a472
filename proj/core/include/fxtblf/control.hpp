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

#ifndef FXTBLF_CONTROL_HPP_
#define FXTBLF_CONTROL_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "fxtblf/barrier.hpp"
#include "fxtblf/dynamics.hpp"
#include "fxtblf/types.hpp"

namespace fxtblf {

enum class ControllerKind {
  kFxtTviblf,  // fixed-time, time-varying integral barrier
  kTviblf,     // time-varying integral barrier, no fixed-time terms
  kIblf,       // constant integral barrier (bounds frozen at t = 0)
};

std::string_view to_string(ControllerKind kind);
/// Accepts "FXT_TVIBLF", "TVIBLF", "IBLF" (case-insensitive). Throws DomainError.
ControllerKind parse_controller_kind(std::string_view name);

struct ControllerVariant {
  ControllerKind kind = ControllerKind::kFxtTviblf;
  bool model_free = false;  // RBF compensation instead of the known model

  /// e.g. "FXT_TVIBLF+NN"
  std::string label() const;
  bool operator==(const ControllerVariant&) const = default;
};

/// Ratio of two odd integers, used for fractional exponents.
struct OddRatio {
  long num = 99;
  long den = 101;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_odd_ratio() const { return (num % 2 != 0) && (den % 2 != 0) && den > 0; }
};

struct FixedTimeGains {
  Vec2 kappa1{5.0, 22.0};
  Vec2 theta1{10.0, 0.01};
  Vec2 theta2{20.0, 0.01};
  Vec2 k1{5.0, 22.0};        // diagonal of K1
  Vec2 k2{100.0, 2000.0};    // diagonal of K2
  Vec2 k3{200.0, 3000.0};    // diagonal of K3
  double k4 = 0.001;
  double k5 = 0.001;
  double p_c = 3.0;
  OddRatio q_c{99, 101};

  /// Exponent checks plus K1 - I/2 > 0. With `require_fixed_time` the
  /// fixed-time gains theta1, theta2, K2, K3 must also be strictly positive.
  void validate(bool require_fixed_time = true) const;

  /// Same gains with theta1 = theta2 = 0 and K2 = K3 = 0.
  FixedTimeGains without_fixed_time_terms() const;
};

/// Position and velocity tracking errors z1 = eta1 - xr, z2 = eta2 - alpha.
struct ErrorState {
  Vec2 z1 = Vec2::Zero();
  Vec2 z2 = Vec2::Zero();
};

/// sign(x) |x|^r, the odd extension of x^r.
double signed_power(double x, double r);
Vec2 signed_power(const Vec2& x, double r);

/// Virtual velocity command for the position subsystem, per axis:
///   alpha = (kc^2 - eta^2) xr_dot rho / kc^2 - (kc^2 - eta^2) kc_dot omega / kc^2
///           + z1 kc_dot / kc
///           - theta1 z1^(2p-1) kc^(2p-2) / (kc^2 - eta^2)^(p+1)
///           - theta2 z1^(2q-1) kc^(2q-2) / (kc^2 - eta^2)^(q+1)
///           - kappa1 z1
/// Throws OutOfBarrier when xr + z1 or xr leaves the barrier.
Vec2 stabilizing_alpha(const Vec2& z1, const Vec2& xr, const Vec2& xr_dot,
                       const ConstraintSample& c, const FixedTimeGains& g);

/// alpha without the theta1/theta2 terms (TVIBLF and IBLF baselines).
Vec2 stabilizing_alpha_baseline(const Vec2& z1, const Vec2& xr, const Vec2& xr_dot,
                                const ConstraintSample& c, const FixedTimeGains& g);

/// Backward difference of the last two samples; zero with fewer than two.
Vec2 alpha_derivative(std::span<const Vec2> history, double dt);

/// Streaming form of alpha_derivative. The first update returns zero.
class AlphaDifferentiator {
 public:
  Vec2 update(const Vec2& alpha, double dt);
  void reset() { previous_.reset(); }

 private:
  std::optional<Vec2> previous_;
};

/// Barrier feedback and z2 damping shared by both controllers:
///   kc^2 z1 / (kc^2 - eta^2) + K1 z2 + K2 z2^(2p-1) / 2^p + K3 z2^(2q-1) / 2^q
Vec2 feedback_terms(const ErrorState& e, const Vec2& eta1, const Vec2& bound,
                    const FixedTimeGains& g);
Vec2 feedback_terms_baseline(const ErrorState& e, const Vec2& eta1, const Vec2& bound,
                             const FixedTimeGains& g);

/// u = Gx + Mx alpha_dot + Cx alpha - fe - feedback. The disturbance Fx is
/// treated as unknown and is not compensated.
Vec2 control_model_based(const CartesianCoefficients& c, const ErrorState& e, const Vec2& alpha,
                         const Vec2& alpha_dot, const Vec2& fe, const Vec2& eta1,
                         const Vec2& bound, const FixedTimeGains& g);

/// u = -W^T S(Z) - fe - feedback.
Vec2 control_model_free(const Vec2& nn_output, const ErrorState& e, const Vec2& fe,
                        const Vec2& eta1, const Vec2& bound, const FixedTimeGains& g);

/// Dispatches alpha and the feedback law on the controller kind. Holds the
/// alpha history used for alpha_dot; one instance per run.
class BarrierController {
 public:
  BarrierController(ControllerKind kind, const FixedTimeGains& gains);

  Vec2 alpha(const Vec2& z1, const Vec2& xr, const Vec2& xr_dot, const ConstraintSample& c) const;
  Vec2 alpha_dot(const Vec2& alpha, double dt) { return differentiator_.update(alpha, dt); }

  Vec2 model_based(const CartesianCoefficients& c, const ErrorState& e, const Vec2& alpha,
                   const Vec2& alpha_dot, const Vec2& fe, const Vec2& eta1,
                   const Vec2& bound) const;
  Vec2 model_free(const Vec2& nn_output, const ErrorState& e, const Vec2& fe, const Vec2& eta1,
                  const Vec2& bound) const;

  ControllerKind kind() const { return kind_; }
  const FixedTimeGains& gains() const { return gains_; }

 private:
  bool fixed_time() const { return kind_ == ControllerKind::kFxtTviblf; }

  ControllerKind kind_;
  FixedTimeGains gains_;
  AlphaDifferentiator differentiator_;
};

/// Upper bound on the settling time of V_dot <= -a V^p - b V^q:
///   T_max = 1 / (a v (p - 1)) + 1 / (b v (1 - q)).
/// Throws DomainError unless a, b > 0, 0 < v <= 1, p > 1 and 0 < q < 1.
double tmax_bound(double alpha_coef, double beta_coef, double v, double p_c, double q_c);

/// Convergence-rate constants of the composite Lyapunov function.
struct FixedTimeRates {
  double lambda1 = 0.0;  // theta1 n^(1-p)
  double lambda2 = 0.0;  // theta2
  double lambda3 = 0.0;  // lambda_min(K2) n^(1-p) / lambda_max(M)^p
  double lambda4 = 0.0;  // lambda_min(K3) / lambda_max(M)^q
  double lambda5 = 0.0;  // 2^p k4 l^(1-p) n^(1-p)
  double lambda6 = 0.0;  // 2^q k5 n2
  double alpha = 0.0;
  double beta = 0.0;
};

/// Assembles the rate constants from configured gains. Per-axis gains enter
/// through their minimum. Without the network the composite function has two
/// parts (alpha = 2^(1-p) min(l1, l3), beta = min(l2, l4)); with it three
/// (alpha = 3^(1-p) min(l1, l3, l5), beta = min(l2, l4, l6)).
FixedTimeRates fixed_time_rates(const FixedTimeGains& g, double inertia_max_eig, int nn_nodes,
                                bool with_network);

/// Weight-decay constant n2 of the fractional-power weight inequality.
double weight_inequality_n2(double q);
double weight_inequality_n1(double q);

/// sup_q lambda_max(M(q)). M is affine in cos(q2), so the supremum of its
/// largest eigenvalue is attained at q2 = 0 or q2 = pi.
double max_inertia_eigenvalue(const RobotParams& p);

}  // namespace fxtblf

#endif  // FXTBLF_CONTROL_HPP_
