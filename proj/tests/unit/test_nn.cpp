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

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "fxtblf/errors.hpp"
#include "fxtblf/nn.hpp"

using namespace fxtblf;
using doctest::Approx;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_SUITE("nn") {
  TEST_CASE("benchmark network layout") {
    const RbfNetwork net = RbfNetwork::benchmark_default();
    CHECK(net.nodes() == 8);
    CHECK(net.input_dim() == 8);
    CHECK(net.axes() == 2);
    CHECK(net.width() == 40.0);
    CHECK(net.weights().isZero(0.0));
    CHECK(net.centers()(2, 5) == -5.0);
    CHECK(net.centers()(7, 0) == 25.0);
  }

  TEST_CASE("activation is one at a centre") {
    const RbfNetwork net = RbfNetwork::benchmark_default();
    const VectorXd s = net.basis(VectorXd::Constant(8, 15.0));
    CHECK(s(6) == 1.0);
    for (int j = 0; j < 8; ++j) {
      CHECK(s(j) > 0.0);
      CHECK(s(j) <= 1.0);
    }
  }

  TEST_CASE("activation at one width from the centre") {
    const RbfNetwork net = RbfNetwork::benchmark_default();
    VectorXd z = VectorXd::Constant(8, 1.0);
    z(3) += 40.0;  // node 4 sits at 1
    CHECK(net.basis(z)(4) == Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(net.basis(z)(4) == Approx(0.36788).epsilon(1e-5));
  }

  TEST_CASE("activation of the zero input") {
    const RbfNetwork net = RbfNetwork::benchmark_default();
    CHECK(net.basis(VectorXd::Zero(8))(4) == Approx(std::exp(-8.0 / 1600.0)));
    CHECK(net.basis(VectorXd::Zero(8))(4) == Approx(0.99501).epsilon(1e-5));
  }

  TEST_CASE("output is linear in the weights") {
    RbfNetwork net = RbfNetwork::benchmark_default();
    const VectorXd z = VectorXd::LinSpaced(8, -3.0, 4.0);
    CHECK(net.output(z).isZero(0.0));
    MatrixXd w = MatrixXd::Zero(2, 8);
    w(1, 3) = 1.0;
    net.set_weights(w);
    CHECK(net.output(z)(1) == net.basis(z)(3));
    CHECK(net.output(z)(0) == 0.0);

    std::mt19937_64 rng(8);
    std::normal_distribution<double> n(0.0, 2.0);
    for (int k = 0; k < 50; ++k) {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 8; ++j) w(i, j) = n(rng);
      VectorXd zz(8);
      for (int j = 0; j < 8; ++j) zz(j) = 10 * n(rng);
      net.set_weights(w);
      const VectorXd s = net.basis(zz);
      for (int i = 0; i < 2; ++i) {
        double dot = 0.0;
        for (int j = 0; j < 8; ++j) dot += w(i, j) * s(j);
        CHECK(std::abs(net.output(zz)(i) - dot) < 1e-12);
      }
      CHECK((net.output_from_basis(s) - net.output(zz)).norm() < 1e-15);
    }
  }

  TEST_CASE("fixed-time law: zero is a fixed point") {
    RbfNetwork net = RbfNetwork::benchmark_default();
    const VectorXd s = net.basis(VectorXd::Zero(8));
    net.update_fixed_time(s, VectorXd::Zero(2), 1e-3, 0.001, 0.001, 3.0, 99.0 / 101.0);
    CHECK(net.weights().isZero(0.0));
  }

  TEST_CASE("fixed-time law: decay terms pull weights towards zero") {
    RbfNetwork net = RbfNetwork::benchmark_default();
    MatrixXd w = MatrixXd::Constant(2, 8, 0.1);
    w.row(1).setConstant(-0.1);
    net.set_weights(w);
    const double dt = 1e-3, q = 99.0 / 101.0;
    const double rate = -0.001 * std::pow(0.1, 5.0) - 0.001 * std::pow(0.1, 2 * q - 1);
    CHECK(rate < 0.0);
    net.update_fixed_time(VectorXd::Ones(8), VectorXd::Zero(2), dt, 0.001, 0.001, 3.0, q);
    CHECK(net.weights()(0, 2) == Approx(0.1 + dt * rate).epsilon(1e-14));
    CHECK(net.weights()(1, 2) == Approx(-0.1 - dt * rate).epsilon(1e-14));
    CHECK(net.weights()(1, 2) > -0.1);
  }

  TEST_CASE("fixed-time law: gradient term is S z2") {
    RbfNetwork net = RbfNetwork::benchmark_default();
    const VectorXd s = net.basis(VectorXd::LinSpaced(8, -1.0, 1.0));
    net.update_fixed_time(s, Eigen::Vector2d(0.5, -2.0), 0.01, 0.0, 0.0, 3.0, 99.0 / 101.0);
    CHECK((net.weights().row(0).transpose() - 0.01 * 0.5 * s).norm() < 1e-15);
    CHECK((net.weights().row(1).transpose() + 0.01 * 2.0 * s).norm() < 1e-15);
  }

  TEST_CASE("each axis adapts only from its own error") {
    RbfNetwork net = RbfNetwork::benchmark_default();
    const VectorXd s = net.basis(VectorXd::Zero(8));
    for (int k = 0; k < 100; ++k) {
      net.update_fixed_time(s, Eigen::Vector2d(1.0, 0.0), 1e-3, 0.001, 0.001, 3.0, 99.0 / 101.0);
      net.update_traditional(s, Eigen::Vector2d(1.0, 0.0), 1e-3, 0.1, 10.0);
    }
    CHECK(net.weights().row(1).isZero(0.0));
    CHECK(net.weights().row(0).minCoeff() > 0.0);
  }

  TEST_CASE("traditional law: no error and no leakage freezes the weights") {
    RbfNetwork net = RbfNetwork::benchmark_default();
    MatrixXd w = MatrixXd::Constant(2, 8, 0.7);
    net.set_weights(w);
    net.update_traditional(VectorXd::Ones(8), VectorXd::Zero(2), 1e-3, 0.0, 5.0);
    CHECK(net.weights() == w);
  }

  TEST_CASE("traditional law: leakage decays exponentially") {
    RbfNetwork net = RbfNetwork::benchmark_default();
    net.set_weights(MatrixXd::Constant(2, 8, 1.0));
    const double sigma = 0.5, rate = 2.0, dt = 1e-4;
    for (int k = 0; k < 10000; ++k) {
      net.update_traditional(VectorXd::Ones(8), VectorXd::Zero(2), dt, sigma, rate);
    }
    CHECK(net.weights()(0, 0) == Approx(std::exp(-sigma * rate * 1.0)).epsilon(1e-4));
  }

  TEST_CASE("traditional law: equilibrium is S z2 / sigma") {
    RbfNetwork net = RbfNetwork::benchmark_default();
    const VectorXd s = net.basis(VectorXd::Constant(8, 2.0));
    const Eigen::Vector2d z2(0.3, -0.1);
    const double sigma = 0.5;
    for (int k = 0; k < 20000; ++k) net.update_traditional(s, z2, 1e-3, sigma, 5.0);
    for (int j = 0; j < 8; ++j) {
      CHECK(net.weights()(0, j) == Approx(s(j) * 0.3 / sigma).epsilon(1e-9));
      CHECK(net.weights()(1, j) == Approx(-s(j) * 0.1 / sigma).epsilon(1e-9));
    }
  }

  TEST_CASE("bounded weights under the fixed-time law with a persistent error") {
    RbfNetwork net = RbfNetwork::benchmark_default();
    const VectorXd s = net.basis(VectorXd::Zero(8));
    for (int k = 0; k < 200000; ++k) {
      net.update_fixed_time(s, Eigen::Vector2d(0.5, -0.5), 1e-3, 0.001, 0.001, 3.0, 99.0 / 101.0);
    }
    // the quintic leakage caps growth: 0.001 w^5 ~ 0.5 at w ~ 3.5
    CHECK(net.weights().cwiseAbs().maxCoeff() < 4.0);
    CHECK(net.weights().allFinite());
  }

  TEST_CASE("least-squares weights improve on the zero predictor") {
    const RbfNetwork net = RbfNetwork::benchmark_default();
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    const int n = 400;
    MatrixXd phi(n, 8);
    VectorXd target(n);
    for (int k = 0; k < n; ++k) {
      VectorXd z(8);
      for (int j = 0; j < 8; ++j) z(j) = u(rng);
      phi.row(k) = net.basis(z).transpose();
      target(k) = std::tanh(0.02 * z.sum()) + 0.5 * std::exp(-z.squaredNorm() / 2000.0);
    }
    const VectorXd w = phi.colPivHouseholderQr().solve(target);
    const double fit = (phi * w - target).norm();
    CHECK(fit < 0.5 * target.norm());
  }

  TEST_CASE("invalid construction and inputs") {
    CHECK_THROWS_AS(RbfNetwork(MatrixXd::Zero(2, 3), 0.0), DomainError);
    CHECK_THROWS_AS(RbfNetwork(MatrixXd::Zero(0, 3), 1.0), DomainError);
    const RbfNetwork net = RbfNetwork::benchmark_default();
    CHECK_THROWS_AS(net.basis(VectorXd::Zero(7)), DomainError);
    RbfNetwork copy = net;
    CHECK_THROWS_AS(copy.set_weights(MatrixXd::Zero(3, 8)), DomainError);
    CHECK_THROWS_AS(copy.update_fixed_time(VectorXd::Ones(8), VectorXd::Zero(2), 0.0, 0.001,
                                           0.001, 3.0, 0.98),
                    DomainError);
    CHECK_THROWS_AS(copy.update_traditional(VectorXd::Ones(8), VectorXd::Zero(2), 1e-3, -1.0, 1.0),
                    DomainError);
  }
}
