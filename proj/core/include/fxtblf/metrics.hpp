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

#ifndef FXTBLF_METRICS_HPP_
#define FXTBLF_METRICS_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fxtblf/scenario.hpp"
#include "fxtblf/simulator.hpp"

namespace fxtblf {

/// Closed time interval on the trace grid.
struct TimeWindow {
  double start = 0.0;
  double end = std::numeric_limits<double>::infinity();
};

/// Root-mean-square of x_axis - xr_axis over the samples inside `window`.
/// Throws EmptyWindow when no sample falls inside.
double rmse(const SimulationTrace& trace, int axis, const TimeWindow& window = {});

struct MarginReport {
  Vec2 margin = Vec2::Zero();  // min_t bound_i(t) - |x_i(t)|
  Vec2 time = Vec2::Zero();    // argmin per axis
};

/// Worst constraint margin per axis. Throws DomainError on an empty trace.
MarginReport constraint_margin(const SimulationTrace& trace);

/// Marker returned when the error never stays inside the band.
inline constexpr double kNeverSettles = std::numeric_limits<double>::infinity();

/// Time, measured from `window.start`, after which |x - xr| stays below
/// `band` for every remaining sample of the window. Throws DomainError unless
/// band > 0, EmptyWindow for an empty window.
double settling_time(const SimulationTrace& trace, double band, const TimeWindow& window = {});

struct MetricsOptions {
  TimeWindow rmse_window;                              // full horizon
  double settle_band = 5e-3;                           // m
  TimeWindow settle_window{kForceReleaseTime, std::numeric_limits<double>::infinity()};
  double tmax_v = 1.0;
};

struct MetricsReport {
  Vec2 rmse = Vec2::Zero();
  MarginReport margin;
  double settling_time = kNeverSettles;
  /// Fixed-time bound from the configured gains; NaN for variants without
  /// fixed-time terms.
  double tmax = std::numeric_limits<double>::quiet_NaN();
  double peak_control = 0.0;  // max_t |u(t)|, N
  std::int64_t breaches = 0;  // logged samples with |x_i| >= bound_i
};

/// Fixed-time settling bound for `cfg`'s gains and variant.
double configured_tmax(const ScenarioConfig& cfg, double v = 1.0);

MetricsReport compute_metrics(const SimulationTrace& trace, const ScenarioConfig& cfg,
                              const MetricsOptions& options = {});

/// IBLF, TVIBLF, FXT_TVIBLF, each model-based then with the network.
std::vector<ControllerVariant> comparison_variants();

struct ComparisonRow {
  ControllerVariant variant;
  std::uint64_t fingerprint = 0;
  MetricsReport metrics;
  SimulationTrace trace;
  std::optional<std::string> error;  // set when the run aborted
  bool breached = false;             // aborted on a strict-mode constraint breach
  double wall_seconds = 0.0;
};

struct ComparisonMatrix {
  std::uint64_t fingerprint = 0;
  std::vector<ComparisonRow> rows;

  const ComparisonRow& row(const ControllerVariant& v) const;
};

/// Runs every comparison variant of `base` (only the variant switch differs)
/// on up to `workers` threads; 0 picks the hardware concurrency. Aborted runs
/// keep their partial trace and error message.
ComparisonMatrix run_comparison(const ScenarioConfig& base, const MetricsOptions& options = {},
                                unsigned workers = 0);

}  // namespace fxtblf

#endif  // FXTBLF_METRICS_HPP_
