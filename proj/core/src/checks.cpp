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

#include "fxtblf/checks.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "fxtblf/barrier.hpp"
#include "fxtblf/control.hpp"
#include "fxtblf/errors.hpp"
#include "fxtblf/integrator.hpp"

namespace fxtblf::checks {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec2 uniform2(Rng& rng, double lo, double hi) { return {uniform(rng, lo, hi), uniform(rng, lo, hi)}; }

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c, d);
  return buf;
}

// Tracks the worst violation and the first counterexample of one property.
class Tally {
 public:
  Tally(std::string name, std::string detail) {
    r_.name = std::move(name);
    r_.detail = std::move(detail);
  }

  // `measure` is compared against `limit`; larger is worse.
  void record(double measure, double limit, const std::function<std::string()>& describe) {
    ++r_.samples;
    if (!std::isfinite(measure)) measure = std::numeric_limits<double>::infinity();
    r_.worst = std::max(r_.worst, measure);
    if (measure > limit && r_.passed) {
      r_.passed = false;
      r_.counterexample = describe();
    }
  }

  CheckResult result() const { return r_; }

 private:
  CheckResult r_;
};

double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

// Closed-form eigenvalues of a symmetric 2x2 matrix, ascending.
std::array<double, 2> sym_eigenvalues(const Mat2& m) {
  const double mean = 0.5 * (m(0, 0) + m(1, 1));
  const double half_diff = 0.5 * (m(0, 0) - m(1, 1));
  const double r = std::hypot(half_diff, m(0, 1));
  return {mean - r, mean + r};
}

}  // namespace

double rational_power(double x, long num, long den) {
  if (den <= 0 || den % 2 == 0) throw DomainError("rational_power needs an odd positive denominator");
  const double mag = std::pow(std::abs(x), static_cast<double>(num) / static_cast<double>(den));
  return (x < 0.0 && num % 2 != 0) ? -mag : mag;
}

double v1_quadrature(double z1, double xr, double kc) {
  if (z1 == 0.0) return 0.0;
  const double k2 = kc * kc;
  auto f = [&](double s) {
    const double e = s + xr;
    return s * k2 / (k2 - e * e);
  };
  using Gk = boost::math::quadrature::gauss_kronrod<double, 61>;
  if (z1 > 0.0) return Gk::integrate(f, 0.0, z1, 15, 1e-12);
  return -Gk::integrate(f, z1, 0.0, 15, 1e-12);
}

std::vector<CheckResult> dynamics_identities(const RobotParams& p, std::uint64_t seed,
                                             long samples) {
  Rng rng(seed);
  constexpr double h = 1e-6;
  constexpr double pi = std::numbers::pi;
  Tally spd("inertia_spd", "min eigenvalue margin and asymmetry of M(q)");
  Tally skew("inertia_skew", "max |S + S^T|, S = M_dot - 2C, central difference h = 1e-6");
  Tally fkj("fk_jacobian", "max |dFK/dq - J|, central difference h = 1e-6");
  Tally jdot("jacobian_dot", "max |dJ/dt - J_dot|, central difference h = 1e-6");
  Tally cspd("cartesian_spd", "Mx symmetric positive definite");
  Tally cskew("cartesian_skew", "max |S + S^T| / max(1, |Mx|), S = Mx_dot - 2Cx");
  Tally recon("cartesian_reconstruction", "max |J^T Mx J - M|");
  Tally plant("plant_roundtrip", "|M q_dd + C qd + G + F - tau_c - tau_e|");

  for (long k = 0; k < samples; ++k) {
    const Vec2 q = uniform2(rng, -pi, pi);
    const Vec2 qd = uniform2(rng, -2.0, 2.0);
    auto where = [&] { return fmt("q=(%.17g, %.17g) qd=(%.17g, %.17g)", q(0), q(1), qd(0), qd(1)); };

    const Mat2 m = mass_matrix(p, q);
    const Eigen::LLT<Mat2> llt(m);
    const double lam_min = sym_eigenvalues(m)[0];
    const double asym = max_abs(m - m.transpose());
    spd.record((llt.info() == Eigen::Success && lam_min > 0.0) ? asym : 1.0, 0.0, where);

    const Mat2 m_dot = (mass_matrix(p, q + h * qd) - mass_matrix(p, q - h * qd)) / (2.0 * h);
    const Mat2 s = m_dot - 2.0 * coriolis_matrix(p, q, qd);
    skew.record(max_abs(s + s.transpose()), 1e-6, where);

    const Mat2 jac = jacobian(p, q);
    Mat2 jac_fd;
    for (int j = 0; j < 2; ++j) {
      const Vec2 e = Vec2::Unit(j) * h;
      jac_fd.col(j) = (forward_kinematics(p, q + e) - forward_kinematics(p, q - e)) / (2.0 * h);
    }
    fkj.record(max_abs(jac_fd - jac), 1e-6, where);

    const Mat2 jd_fd = (jacobian(p, q + h * qd) - jacobian(p, q - h * qd)) / (2.0 * h);
    jdot.record(max_abs(jd_fd - jacobian_dot(p, q, qd)), 1e-6, where);

    const Vec2 tau_c = uniform2(rng, -20.0, 20.0);
    const Vec2 tau_e = uniform2(rng, -5.0, 5.0);
    const Vec2 qdd = plant_acceleration(p, PlantState{q, qd}, tau_c, tau_e);
    const Vec2 resid = m * qdd + coriolis_matrix(p, q, qd) * qd + gravity_vector(p, q) +
                       disturbance_vector(q, qd) - tau_c - tau_e;
    plant.record(resid.cwiseAbs().maxCoeff(), 1e-9, where);

    // Cartesian identities away from the stretched/folded configurations.
    if (std::abs(jac.determinant()) < 1e-2) continue;
    const CartesianCoefficients cc = cartesian_coefficients(p, q, qd);
    const double mx_scale = std::max(1.0, max_abs(cc.mx));
    const bool mx_spd = Eigen::LLT<Mat2>(cc.mx).info() == Eigen::Success &&
                        sym_eigenvalues(cc.mx)[0] > 0.0;
    cspd.record(mx_spd ? max_abs(cc.mx - cc.mx.transpose()) / mx_scale : 1.0, 1e-12, where);

    const Mat2 mx_plus = cartesian_coefficients(p, q + h * qd, qd).mx;
    const Mat2 mx_minus = cartesian_coefficients(p, q - h * qd, qd).mx;
    const Mat2 sx = (mx_plus - mx_minus) / (2.0 * h) - 2.0 * cc.cx;
    cskew.record(max_abs(sx + sx.transpose()) / mx_scale, 1e-5, where);

    recon.record(max_abs(jac.transpose() * cc.mx * jac - m), 1e-9, where);
  }
  return {spd.result(),  skew.result(),  fkj.result(),   jdot.result(),
          cspd.result(), cskew.result(), recon.result(), plant.result()};
}

std::vector<CheckResult> barrier_oracles(std::uint64_t seed, long samples) {
  Rng rng(seed);
  Tally quad("v1_quadrature", "relative gap between closed-form V1 and Gauss-Kronrod quadrature");
  Tally bound("v1_quadratic_bound", "V1 - kc^2 z1^2 / (kc^2 - eta^2), must be <= 0");
  Tally nonneg("v1_nonnegative", "-V1, must be <= 0");
  Tally cont("branch_continuity", "max jump of rho, omega across |z1| = 1e-8");
  Tally diverge("v1_divergence", "count of non-increasing steps along rays to the bound");

  for (long k = 0; k < samples; ++k) {
    const double kc = uniform(rng, 0.2, 1.0);
    const double xr = kc * uniform(rng, -0.9, 0.9);
    const double eta = kc * uniform(rng, -0.98, 0.98);
    const double z1 = eta - xr;
    auto where = [&] { return fmt("z1=%.17g xr=%.17g kc=%.17g", z1, xr, kc); };

    const double closed = v1_value(z1, xr, kc);
    const double ref = v1_quadrature(z1, xr, kc);
    quad.record(std::abs(closed - ref) / std::max(std::abs(ref), 1e-300), 1e-9, where);
    const double quad_bound = kc * kc * z1 * z1 / (kc * kc - eta * eta);
    bound.record((closed - quad_bound) / std::max(quad_bound, 1e-300), 1e-12, where);
    nonneg.record(-closed, 0.0, where);

    double gap = 0.0;
    for (double side : {1.0, -1.0}) {
      const double outer = side * 1.0001 * kLimitBranchThreshold;
      const double inner = side * 0.9999 * kLimitBranchThreshold;
      gap = std::max({gap, std::abs(rho(outer, xr, kc) - rho(inner, xr, kc)),
                      std::abs(omega(outer, xr, kc) - omega(inner, xr, kc))});
    }
    cont.record(gap, 1e-4, where);

    int bad = 0;
    for (double target : {kc, -kc}) {
      double prev = 0.0;
      for (int e = 1; e <= 12; ++e) {
        const double eta_k = xr + (target - xr) * (1.0 - std::pow(10.0, -e));
        const double v = v1_value(eta_k - xr, xr, kc);
        if (!(v > prev)) ++bad;
        prev = v;
      }
    }
    diverge.record(bad, 0.0, where);
  }
  return {quad.result(), bound.result(), nonneg.result(), cont.result(), diverge.result()};
}

std::vector<CheckResult> lemma_suite(const RobotParams& p, std::uint64_t seed, long samples) {
  Rng rng(seed);
  constexpr double tol = 1e-12;

  // W_tilde W_hat^q <= n1 W^(q+1) - n2 W_tilde^(q+1), q an odd ratio in (0, 1).
  Tally weight("weight_inequality", "relative excess of lhs over rhs");
  const std::array<std::array<long, 2>, 6> odd_ratios{
      {{99, 101}, {97, 101}, {1, 3}, {3, 5}, {5, 7}, {1, 5}}};
  for (long k = 0; k < samples; ++k) {
    const auto [num, den] = odd_ratios[static_cast<std::size_t>(k) % odd_ratios.size()];
    const double q = static_cast<double>(num) / static_cast<double>(den);
    const double w = uniform(rng, -10.0, 10.0);
    const double w_hat = uniform(rng, -10.0, 10.0);
    const double w_tilde = w - w_hat;
    const double lhs = w_tilde * rational_power(w_hat, num, den);
    const double a = weight_inequality_n1(q) * rational_power(w, num + den, den);
    const double b = weight_inequality_n2(q) * rational_power(w_tilde, num + den, den);
    const double scale = 1.0 + std::abs(lhs) + std::abs(a) + std::abs(b);
    weight.record((lhs - (a - b)) / scale, tol, [&] {
      return fmt("q=%g W=%.17g W_hat=%.17g", q, w, w_hat);
    });
  }

  // n^(1-p) (sum x)^p <= sum x^p and (sum x)^q <= sum x^q for x >= 0.
  Tally sums("sum_power_inequalities", "relative excess of lhs over rhs");
  for (long k = 0; k < samples; ++k) {
    const int n = 1 + static_cast<int>(k % 8);
    const double pc = uniform(rng, 1.0 + 1e-6, 6.0);
    const double qc = uniform(rng, 1e-3, 1.0 - 1e-6);
    double sum = 0.0, sum_p = 0.0, sum_q = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = uniform(rng, 0.0, 10.0);
      sum += x;
      sum_p += std::pow(x, pc);
      sum_q += std::pow(x, qc);
    }
    const double l1 = std::pow(static_cast<double>(n), 1.0 - pc) * std::pow(sum, pc);
    const double l2 = std::pow(sum, qc);
    const double excess =
        std::max((l1 - sum_p) / (1.0 + sum_p), (l2 - sum_q) / (1.0 + sum_q));
    sums.record(excess, tol, [&] { return fmt("n=%g p=%g q=%g", n, pc, qc); });
  }

  // b (a - b)^p <= a^(p+1) - b^(p+1), a > 0, b < a, p odd.
  Tally odd("odd_power_inequality", "relative excess of lhs over rhs");
  for (long k = 0; k < samples; ++k) {
    const int pc = 3 + 2 * static_cast<int>(k % 4);
    const double a = uniform(rng, 1e-3, 10.0);
    const double b = uniform(rng, -20.0, a);
    const double lhs = b * std::pow(a - b, pc);
    const double rhs = std::pow(a, pc + 1) - std::pow(b, pc + 1);
    const double scale = std::abs(lhs) + std::abs(std::pow(a, pc + 1)) + std::pow(b, pc + 1);
    odd.record((lhs - rhs) / scale, tol, [&] { return fmt("p=%g a=%.17g b=%.17g", pc, a, b); });
  }

  // x y <= eps^a |x|^a / a + |y|^b / (b eps^b), (a - 1)(b - 1) = 1.
  Tally young("young_inequality", "relative excess of lhs over rhs");
  for (long k = 0; k < samples; ++k) {
    const double a = uniform(rng, 1.05, 6.0);
    const double b = a / (a - 1.0);
    const double eps = uniform(rng, 0.2, 5.0);
    const double x = uniform(rng, -5.0, 5.0);
    const double y = uniform(rng, -5.0, 5.0);
    const double rhs = std::pow(eps, a) * std::pow(std::abs(x), a) / a +
                       std::pow(std::abs(y), b) / (b * std::pow(eps, b));
    young.record((x * y - rhs) / (1.0 + rhs), tol, [&] {
      return fmt("a=%.17g eps=%.17g x=%.17g y=%.17g", a, eps, x, y);
    });
  }

  // lambda_min |x|^2 <= x^T M x <= lambda_max |x|^2 for the arm inertia.
  Tally rayleigh("rayleigh_bounds", "relative excess outside [lambda_min, lambda_max] |x|^2");
  for (long k = 0; k < samples; ++k) {
    const Vec2 q = uniform2(rng, -std::numbers::pi, std::numbers::pi);
    const Vec2 x = uniform2(rng, -10.0, 10.0);
    const Mat2 m = mass_matrix(p, q);
    const auto [lo, hi] = sym_eigenvalues(m);
    const double quad = x.dot(m * x);
    const double n2 = x.squaredNorm();
    const double excess = std::max(lo * n2 - quad, quad - hi * n2) / (1.0 + hi * n2);
    rayleigh.record(excess, tol, [&] {
      return fmt("q=(%.17g, %.17g) x=(%.17g, %.17g)", q(0), q(1), x(0), x(1));
    });
  }

  // x_dot = -c1 x^(2mu-1) - c2 x^(2v-1) + sigma(t) keeps x >= 0 from x(0) >= 0.
  // Explicit Euler whose step never removes more than 10% of x while decaying.
  Tally positive("ode_positivity", "-min x(t)");
  const std::array<std::array<long, 2>, 4> mus{{{3, 1}, {5, 3}, {7, 5}, {9, 7}}};
  const std::array<std::array<long, 2>, 4> vs{{{99, 101}, {7, 9}, {5, 7}, {3, 5}}};
  const long ode_samples = std::max<long>(1, samples / 50);
  for (long k = 0; k < ode_samples; ++k) {
    const auto [mn, md] = mus[static_cast<std::size_t>(k) % mus.size()];
    const auto [vn, vd] = vs[static_cast<std::size_t>(k / 4) % vs.size()];
    const double c1 = uniform(rng, 0.1, 2.0);
    const double c2 = uniform(rng, 0.1, 2.0);
    const double sigma0 = uniform(rng, 0.05, 1.0);
    const double x0 = (k % 5 == 0) ? 0.0 : uniform(rng, 0.0, 2.0);
    auto rhs = [&](double t, double x) {
      return -c1 * rational_power(x, 2 * mn - md, md) - c2 * rational_power(x, 2 * vn - vd, vd) +
             sigma0 * (1.0 + 0.5 * std::sin(3.0 * t));
    };
    double t = 0.0, x = x0, x_min = x0;
    while (t < 3.0) {
      const double f = rhs(t, x);
      double dt = 1e-3;
      if (f < 0.0) dt = std::min(dt, 0.1 * x / -f);
      dt = std::max(dt, 1e-12);
      x += dt * f;
      t += dt;
      x_min = std::min(x_min, x);
    }
    positive.record(-x_min, 0.0, [&] {
      return fmt("c1=%.17g c2=%.17g sigma0=%.17g x0=%.17g", c1, c2, sigma0, x0);
    });
  }

  // V_dot = -a V^p - b V^q reaches zero before 1/(a(p-1)) + 1/(b(1-q)).
  Tally settle("fixed_time_settling", "max settling time / bound");
  const long settle_samples = std::max<long>(1, samples / 50);
  for (long k = 0; k < settle_samples; ++k) {
    const double a = uniform(rng, 0.2, 5.0);
    const double b = uniform(rng, 0.2, 5.0);
    const double pc = uniform(rng, 1.5, 4.0);
    const double qc = uniform(rng, 0.2, 0.95);
    const double v0 = std::pow(10.0, uniform(rng, -3.0, 6.0));
    const double bound_t = tmax_bound(a, b, 1.0, pc, qc);
    double t = 0.0, v = v0;
    while (v > 1e-12 && t < 2.0 * bound_t) {
      const double rate = a * std::pow(v, pc) + b * std::pow(v, qc);
      const double dt = std::min(1e-3, 0.01 * v / rate);
      v = std::max(0.0, v - dt * rate);
      t += dt;
    }
    settle.record(t / bound_t, 1.0, [&] {
      return fmt("a=%.17g b=%.17g p=%.17g q=%.17g", a, b, pc, qc) + fmt(" V0=%.17g", v0);
    });
  }

  return {weight.result(),   sums.result(),     odd.result(),    young.result(),
          rayleigh.result(), positive.result(), settle.result()};
}

IntegratorOrder rk4_harmonic_order(int steps_per_period) {
  using State = Eigen::Vector2d;
  auto f = [](double, const State& y) { return State(y(1), -y(0)); };
  const State y0(1.0, 0.0);
  const double period = 2.0 * std::numbers::pi;
  auto run = [&](int steps) {
    State y = y0;
    const double dt = period / steps;
    for (int i = 0; i < steps; ++i) y = rk4_step(f, i * dt, y, dt);
    return y;
  };
  IntegratorOrder out;
  out.error_coarse = (run(steps_per_period) - y0).norm();
  out.error_fine = (run(2 * steps_per_period) - y0).norm();
  out.ratio = out.error_coarse / out.error_fine;
  const State y = run(static_cast<int>(std::lround(period / 1e-3)));
  out.energy_drift = std::abs(0.5 * y.squaredNorm() - 0.5 * y0.squaredNorm());
  return out;
}

}  // namespace fxtblf::checks
