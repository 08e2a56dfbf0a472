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

#include "fxtblf/nn.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "fxtblf/control.hpp"
#include "fxtblf/errors.hpp"

namespace fxtblf {

std::string_view to_string(AdaptiveLaw law) {
  return law == AdaptiveLaw::kFixedTime ? "fixed_time" : "traditional";
}

RbfNetwork::RbfNetwork(Eigen::MatrixXd centers, double width, int axes)
    : centers_(std::move(centers)), width_(width) {
  if (!(width_ > 0.0) || !std::isfinite(width_)) throw DomainError("RBF width must be positive");
  if (centers_.rows() < 1 || centers_.cols() < 1) throw DomainError("RBF network needs centres");
  if (axes < 1) throw DomainError("RBF network needs at least one output axis");
  weights_ = Eigen::MatrixXd::Zero(axes, centers_.rows());
}

RbfNetwork RbfNetwork::replicated(std::span<const double> scalars, int input_dim, double width,
                                  int axes) {
  Eigen::MatrixXd c(static_cast<Eigen::Index>(scalars.size()), input_dim);
  for (std::size_t j = 0; j < scalars.size(); ++j) {
    c.row(static_cast<Eigen::Index>(j)).setConstant(scalars[j]);
  }
  return RbfNetwork(std::move(c), width, axes);
}

RbfNetwork RbfNetwork::benchmark_default() {
  static constexpr std::array<double, 8> kCenters = {-25.0, -15.0, -5.0, -1.0,
                                                     1.0,   5.0,   15.0, 25.0};
  return replicated(kCenters, 8, 40.0);
}

Eigen::VectorXd RbfNetwork::basis(const Eigen::VectorXd& z) const {
  if (z.size() != centers_.cols()) throw DomainError("RBF input has the wrong dimension");
  const double inv_b2 = 1.0 / (width_ * width_);
  Eigen::VectorXd s(centers_.rows());
  for (Eigen::Index j = 0; j < centers_.rows(); ++j) {
    s(j) = std::exp(-(z.transpose() - centers_.row(j)).squaredNorm() * inv_b2);
  }
  return s;
}

Eigen::VectorXd RbfNetwork::output(const Eigen::VectorXd& z) const {
  return output_from_basis(basis(z));
}

void RbfNetwork::update_fixed_time(const Eigen::VectorXd& s, const Eigen::VectorXd& z2,
                                   double dt, double k4, double k5, double p_c, double q_c) {
  if (!(dt > 0.0)) throw DomainError("weight update needs dt > 0");
  const double fast = 2.0 * p_c - 1.0;
  const double slow = 2.0 * q_c - 1.0;
  for (Eigen::Index i = 0; i < weights_.rows(); ++i) {
    for (Eigen::Index j = 0; j < weights_.cols(); ++j) {
      const double w = weights_(i, j);
      const double w_dot = s(j) * z2(i) - k4 * signed_power(w, fast) - k5 * signed_power(w, slow);
      weights_(i, j) = w + dt * w_dot;
    }
  }
}

void RbfNetwork::update_traditional(const Eigen::VectorXd& s, const Eigen::VectorXd& z2,
                                    double dt, double sigma, double rate) {
  if (!(dt > 0.0)) throw DomainError("weight update needs dt > 0");
  if (!(rate > 0.0) || sigma < 0.0) throw DomainError("traditional law needs rate > 0, sigma >= 0");
  for (Eigen::Index i = 0; i < weights_.rows(); ++i) {
    weights_.row(i) += dt * rate * (s.transpose() * z2(i) - sigma * weights_.row(i));
  }
}

void RbfNetwork::set_weights(const Eigen::MatrixXd& w) {
  if (w.rows() != weights_.rows() || w.cols() != weights_.cols()) {
    throw DomainError("weight matrix has the wrong shape");
  }
  weights_ = w;
}

}  // namespace fxtblf
