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

#ifndef FXTBLF_NN_HPP_
#define FXTBLF_NN_HPP_

#include <span>
#include <string_view>

#include <Eigen/Core>

#include "fxtblf/types.hpp"

namespace fxtblf {

enum class AdaptiveLaw {
  kFixedTime,    // W_dot = S z2 - k4 sig(W)^(2p-1) - k5 sig(W)^(2q-1)
  kTraditional,  // W_dot = rate (S z2 - sigma W)
};

std::string_view to_string(AdaptiveLaw law);

/// Per-axis Gaussian RBF networks sharing one set of centres and one width.
///
/// Every axis owns an independent weight vector and is adapted only by its
/// own velocity error z2_i.
class RbfNetwork {
 public:
  /// `centers` is nodes x input_dim (one centre per row).
  RbfNetwork(Eigen::MatrixXd centers, double width, int axes = kAxes);

  /// Centre of node j is scalars[j] replicated over every input dimension.
  static RbfNetwork replicated(std::span<const double> scalars, int input_dim, double width,
                               int axes = kAxes);

  /// 8 nodes at {-25, -15, -5, -1, 1, 5, 15, 25} over an 8-dimensional input,
  /// width 40.
  static RbfNetwork benchmark_default();

  /// phi_j(Z) = exp(-|Z - C_j|^2 / B^2), each in (0, 1].
  Eigen::VectorXd basis(const Eigen::VectorXd& z) const;

  /// Per-axis estimate W_i^T S(Z).
  Eigen::VectorXd output(const Eigen::VectorXd& z) const;
  Eigen::VectorXd output_from_basis(const Eigen::VectorXd& s) const { return weights_ * s; }

  /// Forward-Euler step of the fixed-time law with signed fractional powers.
  void update_fixed_time(const Eigen::VectorXd& s, const Eigen::VectorXd& z2, double dt,
                         double k4, double k5, double p_c, double q_c);

  /// Forward-Euler step of the sigma-modification gradient law.
  void update_traditional(const Eigen::VectorXd& s, const Eigen::VectorXd& z2, double dt,
                          double sigma, double rate);

  int nodes() const { return static_cast<int>(centers_.rows()); }
  int input_dim() const { return static_cast<int>(centers_.cols()); }
  int axes() const { return static_cast<int>(weights_.rows()); }
  double width() const { return width_; }
  const Eigen::MatrixXd& centers() const { return centers_; }

  /// axes x nodes; row i is W_i^T.
  const Eigen::MatrixXd& weights() const { return weights_; }
  void set_weights(const Eigen::MatrixXd& w);

 private:
  Eigen::MatrixXd centers_;
  double width_;
  Eigen::MatrixXd weights_;
};

}  // namespace fxtblf

#endif  // FXTBLF_NN_HPP_
