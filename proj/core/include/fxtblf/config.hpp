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

#ifndef FXTBLF_CONFIG_HPP_
#define FXTBLF_CONFIG_HPP_

#include <filesystem>
#include <string>

#include "fxtblf/scenario.hpp"

namespace fxtblf {

/// Parses a YAML scenario description. Every key is optional; missing keys
/// keep the ScenarioConfig defaults, so an empty document yields the default
/// benchmark. Unknown keys and malformed values throw DomainError.
///
///   robot:       { m1, m2, l1, l2, g }
///   admittance:  { mass: [a, b], damping: [a, b], stiffness: [a, b] }
///   controller:  { variant, model_free, gains: { kappa1, theta1, theta2, k1, k2, k3,
///                  k4, k5, p_c, q_c: [num, den] } }
///   network:     { centers: [...], width, traditional_sigma, traditional_rate }
///   constraints: { axis1: { offset, amplitude, frequency, phase }, axis2: {...} }
///   trajectory:  { radius, angular_rate }
///   scenario:    { force_amps, horizon, dt, q0, trace_decimation, strict, reference_start }
ScenarioConfig parse_config(const std::string& text);

/// Reads and parses a file. Throws IoError when the file cannot be read.
ScenarioConfig load_config(const std::filesystem::path& path);

/// YAML text that parse_config maps back to `cfg`.
std::string dump_config(const ScenarioConfig& cfg);

}  // namespace fxtblf

#endif  // FXTBLF_CONFIG_HPP_
