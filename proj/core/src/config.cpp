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

#include "fxtblf/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "fxtblf/errors.hpp"

namespace fxtblf {

namespace {

void require_keys(const YAML::Node& node, const std::string& section,
                  std::initializer_list<std::string_view> allowed) {
  if (!node.IsMap()) throw DomainError("section '" + section + "' must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw DomainError("unknown key '" + key + "' in section '" + section + "'");
    }
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& out, const std::string& section) {
  const YAML::Node v = node[key];
  if (!v) return;
  try {
    out = v.as<T>();
  } catch (const YAML::Exception&) {
    throw DomainError("bad value for '" + section + "." + key + "'");
  }
}

void read_vec2(const YAML::Node& node, const char* key, Vec2& out, const std::string& section) {
  const YAML::Node v = node[key];
  if (!v) return;
  if (v.IsScalar()) {
    double s = 0.0;
    read(node, key, s, section);
    out = Vec2::Constant(s);
    return;
  }
  if (!v.IsSequence() || v.size() != 2) {
    throw DomainError("'" + section + "." + key + "' must be a scalar or a 2-element list");
  }
  try {
    out = Vec2(v[0].as<double>(), v[1].as<double>());
  } catch (const YAML::Exception&) {
    throw DomainError("bad value for '" + section + "." + key + "'");
  }
}

void read_wave(const YAML::Node& node, BoundWave& w, const std::string& section) {
  require_keys(node, section, {"offset", "amplitude", "frequency", "phase"});
  read(node, "offset", w.offset, section);
  read(node, "amplitude", w.amplitude, section);
  read(node, "frequency", w.frequency, section);
  read(node, "phase", w.phase, section);
}

ReferenceStart parse_reference_start(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "measured") return ReferenceStart::kMeasured;
  if (s == "desired") return ReferenceStart::kDesired;
  throw DomainError("reference_start must be 'measured' or 'desired', got '" + s + "'");
}

void parse_gains(const YAML::Node& n, FixedTimeGains& g) {
  const std::string sec = "controller.gains";
  require_keys(n, sec,
               {"kappa1", "theta1", "theta2", "k1", "k2", "k3", "k4", "k5", "p_c", "q_c"});
  read_vec2(n, "kappa1", g.kappa1, sec);
  read_vec2(n, "theta1", g.theta1, sec);
  read_vec2(n, "theta2", g.theta2, sec);
  read_vec2(n, "k1", g.k1, sec);
  read_vec2(n, "k2", g.k2, sec);
  read_vec2(n, "k3", g.k3, sec);
  read(n, "k4", g.k4, sec);
  read(n, "k5", g.k5, sec);
  read(n, "p_c", g.p_c, sec);
  if (const YAML::Node q = n["q_c"]) {
    if (!q.IsSequence() || q.size() != 2) {
      throw DomainError("'controller.gains.q_c' must be [numerator, denominator]");
    }
    try {
      g.q_c = OddRatio{q[0].as<long>(), q[1].as<long>()};
    } catch (const YAML::Exception&) {
      throw DomainError("bad value for 'controller.gains.q_c'");
    }
  }
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw DomainError(std::string("malformed configuration: ") + e.what());
  }
  if (root.IsNull()) return cfg;
  require_keys(root, "<root>",
               {"robot", "admittance", "controller", "network", "constraints", "trajectory",
                "scenario"});

  if (const YAML::Node n = root["robot"]) {
    require_keys(n, "robot", {"m1", "m2", "l1", "l2", "g"});
    read(n, "m1", cfg.robot.m1, "robot");
    read(n, "m2", cfg.robot.m2, "robot");
    read(n, "l1", cfg.robot.l1, "robot");
    read(n, "l2", cfg.robot.l2, "robot");
    read(n, "g", cfg.robot.g, "robot");
  }
  if (const YAML::Node n = root["admittance"]) {
    require_keys(n, "admittance", {"mass", "damping", "stiffness"});
    read_vec2(n, "mass", cfg.admittance.mass, "admittance");
    read_vec2(n, "damping", cfg.admittance.damping, "admittance");
    read_vec2(n, "stiffness", cfg.admittance.stiffness, "admittance");
  }
  if (const YAML::Node n = root["controller"]) {
    require_keys(n, "controller", {"variant", "model_free", "gains"});
    if (n["variant"]) {
      std::string name;
      read(n, "variant", name, "controller");
      cfg.variant.kind = parse_controller_kind(name);
    }
    read(n, "model_free", cfg.variant.model_free, "controller");
    if (const YAML::Node g = n["gains"]) parse_gains(g, cfg.gains);
  }
  if (const YAML::Node n = root["network"]) {
    require_keys(n, "network", {"centers", "width", "traditional_sigma", "traditional_rate"});
    read(n, "centers", cfg.network.centers, "network");
    read(n, "width", cfg.network.width, "network");
    read(n, "traditional_sigma", cfg.network.traditional_sigma, "network");
    read(n, "traditional_rate", cfg.network.traditional_rate, "network");
  }
  if (const YAML::Node n = root["constraints"]) {
    require_keys(n, "constraints", {"axis1", "axis2"});
    std::array<BoundWave, kAxes> waves = cfg.constraints.axes();
    if (n["axis1"]) read_wave(n["axis1"], waves[0], "constraints.axis1");
    if (n["axis2"]) read_wave(n["axis2"], waves[1], "constraints.axis2");
    cfg.constraints = ConstraintProfile(waves);
  }
  if (const YAML::Node n = root["trajectory"]) {
    require_keys(n, "trajectory", {"radius", "angular_rate"});
    read(n, "radius", cfg.desired.radius, "trajectory");
    read(n, "angular_rate", cfg.desired.angular_rate, "trajectory");
  }
  if (const YAML::Node n = root["scenario"]) {
    require_keys(n, "scenario",
                 {"force_amps", "horizon", "dt", "q0", "trace_decimation", "strict",
                  "reference_start"});
    read_vec2(n, "force_amps", cfg.force_amps, "scenario");
    read(n, "horizon", cfg.horizon, "scenario");
    read(n, "dt", cfg.dt, "scenario");
    read_vec2(n, "q0", cfg.q0, "scenario");
    read(n, "trace_decimation", cfg.trace_decimation, "scenario");
    read(n, "strict", cfg.strict, "scenario");
    if (n["reference_start"]) {
      std::string s;
      read(n, "reference_start", s, "scenario");
      cfg.reference_start = parse_reference_start(s);
    }
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open configuration '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

void emit_vec2(YAML::Emitter& out, const char* key, const Vec2& v) {
  out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq << v(0) << v(1)
      << YAML::EndSeq;
}

void emit_wave(YAML::Emitter& out, const char* key, const BoundWave& w) {
  out << YAML::Key << key << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "offset" << YAML::Value << w.offset;
  out << YAML::Key << "amplitude" << YAML::Value << w.amplitude;
  out << YAML::Key << "frequency" << YAML::Value << w.frequency;
  out << YAML::Key << "phase" << YAML::Value << w.phase;
  out << YAML::EndMap;
}

}  // namespace

std::string dump_config(const ScenarioConfig& cfg) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;

  out << YAML::Key << "robot" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "m1" << YAML::Value << cfg.robot.m1;
  out << YAML::Key << "m2" << YAML::Value << cfg.robot.m2;
  out << YAML::Key << "l1" << YAML::Value << cfg.robot.l1;
  out << YAML::Key << "l2" << YAML::Value << cfg.robot.l2;
  out << YAML::Key << "g" << YAML::Value << cfg.robot.g;
  out << YAML::EndMap;

  out << YAML::Key << "admittance" << YAML::Value << YAML::BeginMap;
  emit_vec2(out, "mass", cfg.admittance.mass);
  emit_vec2(out, "damping", cfg.admittance.damping);
  emit_vec2(out, "stiffness", cfg.admittance.stiffness);
  out << YAML::EndMap;

  const FixedTimeGains& g = cfg.gains;
  out << YAML::Key << "controller" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "variant" << YAML::Value << std::string(to_string(cfg.variant.kind));
  out << YAML::Key << "model_free" << YAML::Value << cfg.variant.model_free;
  out << YAML::Key << "gains" << YAML::Value << YAML::BeginMap;
  emit_vec2(out, "kappa1", g.kappa1);
  emit_vec2(out, "theta1", g.theta1);
  emit_vec2(out, "theta2", g.theta2);
  emit_vec2(out, "k1", g.k1);
  emit_vec2(out, "k2", g.k2);
  emit_vec2(out, "k3", g.k3);
  out << YAML::Key << "k4" << YAML::Value << g.k4;
  out << YAML::Key << "k5" << YAML::Value << g.k5;
  out << YAML::Key << "p_c" << YAML::Value << g.p_c;
  out << YAML::Key << "q_c" << YAML::Value << YAML::Flow << YAML::BeginSeq << g.q_c.num
      << g.q_c.den << YAML::EndSeq;
  out << YAML::EndMap << YAML::EndMap;

  out << YAML::Key << "network" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "centers" << YAML::Value << YAML::Flow << cfg.network.centers;
  out << YAML::Key << "width" << YAML::Value << cfg.network.width;
  out << YAML::Key << "traditional_sigma" << YAML::Value << cfg.network.traditional_sigma;
  out << YAML::Key << "traditional_rate" << YAML::Value << cfg.network.traditional_rate;
  out << YAML::EndMap;

  out << YAML::Key << "constraints" << YAML::Value << YAML::BeginMap;
  emit_wave(out, "axis1", cfg.constraints.axes()[0]);
  emit_wave(out, "axis2", cfg.constraints.axes()[1]);
  out << YAML::EndMap;

  out << YAML::Key << "trajectory" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "radius" << YAML::Value << cfg.desired.radius;
  out << YAML::Key << "angular_rate" << YAML::Value << cfg.desired.angular_rate;
  out << YAML::EndMap;

  out << YAML::Key << "scenario" << YAML::Value << YAML::BeginMap;
  emit_vec2(out, "force_amps", cfg.force_amps);
  out << YAML::Key << "horizon" << YAML::Value << cfg.horizon;
  out << YAML::Key << "dt" << YAML::Value << cfg.dt;
  emit_vec2(out, "q0", cfg.q0);
  out << YAML::Key << "trace_decimation" << YAML::Value << cfg.trace_decimation;
  out << YAML::Key << "strict" << YAML::Value << cfg.strict;
  out << YAML::Key << "reference_start" << YAML::Value
      << std::string(to_string(cfg.reference_start));
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace fxtblf
