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

#ifndef FXTBLF_EXPORT_HPP_
#define FXTBLF_EXPORT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "fxtblf/metrics.hpp"
#include "fxtblf/simulator.hpp"

namespace fxtblf {

/// Trace CSV columns, in order: t, q1, q2, qd1, qd2, x1, x2, xd1, xd2, xr1,
/// xr2, z1_1, z1_2, z2_1, z2_2, u1, u2, fe1, fe2, b1, b2, V1, then w1_1 ..
/// w1_l, w2_1 .. w2_l.
std::vector<std::string> trace_csv_header(int nodes);

/// Values are written with 17 significant digits so a re-read is exact.
void write_trace_csv(const SimulationTrace& trace, const std::filesystem::path& path);

/// Reads a file written by write_trace_csv. Only the exported columns are
/// restored; `xdot` and `tau` stay zero.
SimulationTrace read_trace_csv(const std::filesystem::path& path);

/// One row per variant: rmse, margins, settling time, tmax, peak control,
/// breaches, wall time and any abort message.
void write_comparison_table(const ComparisonMatrix& matrix, const std::filesystem::path& path);

struct PlotSeries {
  std::string label;
  std::vector<double> values;
  std::string color = "#1f77b4";
  bool dashed = false;
};

struct PlotPanel {
  std::string title;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Stacked line chart sharing one time axis, written as standalone SVG.
void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::vector<double>& time, const std::vector<PlotPanel>& panels);

/// The four standard figures of a run.
enum class FigureKind { kTrajectory, kTrackingError, kControlEffort, kWeights };

std::string figure_suffix(FigureKind kind);
void write_figure(const SimulationTrace& trace, FigureKind kind, const std::filesystem::path& path);

/// Writes <stem>.csv plus the four <stem>_<figure>.svg files into `dir`.
/// Returns the written paths.
std::vector<std::filesystem::path> write_run_outputs(const SimulationTrace& trace,
                                                     const std::filesystem::path& dir,
                                                     const std::string& stem);

/// Writes comparison.csv plus per-variant traces and figures into `dir`.
std::vector<std::filesystem::path> write_comparison_outputs(const ComparisonMatrix& matrix,
                                                            const std::filesystem::path& dir);

/// File-name stem of a variant, e.g. "fxt_tviblf_nn".
std::string variant_stem(const ControllerVariant& v);

}  // namespace fxtblf

#endif  // FXTBLF_EXPORT_HPP_
