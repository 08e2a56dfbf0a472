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

#ifndef FXTBLF_ERRORS_HPP_
#define FXTBLF_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fxtblf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameter or argument outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The manipulator Jacobian is (numerically) singular.
class SingularJacobian : public Error {
 public:
  explicit SingularJacobian(double det, double time = -1.0)
      : Error(describe(det, time)), det_(det), time_(time) {}

  double determinant() const { return det_; }
  /// Simulation time at which the singularity was hit, or -1 outside a run.
  double time() const { return time_; }

 private:
  static std::string describe(double det, double time) {
    std::string msg = "singular Jacobian (|det J| = " + std::to_string(det) + ")";
    if (time >= 0.0) msg += " at t = " + std::to_string(time) + " s";
    return msg;
  }

  double det_;
  double time_;
};

/// A state or reference lies on or outside the barrier |eta| < kc.
class OutOfBarrier : public Error {
 public:
  using Error::Error;
};

/// Strict-mode abort: the end-effector left the time-varying workspace bound.
class ConstraintBreach : public Error {
 public:
  ConstraintBreach(double time, int axis, double position, double bound)
      : Error("constraint breach on axis " + std::to_string(axis + 1) + " at t = " +
              std::to_string(time) + " s (|x| = " + std::to_string(position) +
              ", bound = " + std::to_string(bound) + ")"),
        time_(time),
        axis_(axis) {}

  double time() const { return time_; }
  /// Zero-based axis index.
  int axis() const { return axis_; }

 private:
  double time_;
  int axis_;
};

class EmptyWindow : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fxtblf

#endif  // FXTBLF_ERRORS_HPP_
