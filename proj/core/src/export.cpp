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

#include "fxtblf/export.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "fxtblf/errors.hpp"

namespace fxtblf {

namespace fs = std::filesystem;

namespace {

constexpr int kFixedColumns = 22;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_for_write(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& s, const fs::path& path) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw IoError("malformed number '" + s + "' in '" + path.string() + "'");
  }
  return v;
}

}  // namespace

std::vector<std::string> trace_csv_header(int nodes) {
  std::vector<std::string> h = {"t",    "q1",   "q2",   "qd1",  "qd2",  "x1",   "x2",   "xd1",
                                "xd2",  "xr1",  "xr2",  "z1_1", "z1_2", "z2_1", "z2_2", "u1",
                                "u2",   "fe1",  "fe2",  "b1",   "b2",   "V1"};
  for (int i = 1; i <= kAxes; ++i) {
    for (int j = 1; j <= nodes; ++j) h.push_back("w" + std::to_string(i) + "_" + std::to_string(j));
  }
  return h;
}

void write_trace_csv(const SimulationTrace& trace, const fs::path& path) {
  std::ofstream out = open_for_write(path);
  const std::vector<std::string> header = trace_csv_header(trace.nodes);
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  const auto n_weights = static_cast<Eigen::Index>(kAxes * trace.nodes);
  for (const TraceSample& s : trace.samples) {
    std::string line = format_double(s.t);
    auto put = [&line](double v) {
      line += ',';
      line += format_double(v);
    };
    for (const Vec2* v : {&s.q, &s.qd, &s.x, &s.xd, &s.xr, &s.z1, &s.z2, &s.u, &s.fe, &s.bound}) {
      put((*v)(0));
      put((*v)(1));
    }
    put(s.v1);
    for (Eigen::Index k = 0; k < n_weights; ++k) put(k < s.weights.size() ? s.weights(k) : 0.0);
    out << line << '\n';
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

SimulationTrace read_trace_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + path.string() + "' has no header");
  const std::vector<std::string> header = split_csv(line);
  const int extra = static_cast<int>(header.size()) - kFixedColumns;
  if (extra < 0 || extra % kAxes != 0) throw IoError("unexpected trace CSV header");
  SimulationTrace trace;
  trace.nodes = extra / kAxes;
  if (header != trace_csv_header(trace.nodes)) throw IoError("unexpected trace CSV header");

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != header.size()) throw IoError("ragged row in '" + path.string() + "'");
    std::size_t c = 0;
    auto next = [&] { return parse_double(cells[c++], path); };
    TraceSample s;
    s.t = next();
    for (Vec2* v : {&s.q, &s.qd, &s.x, &s.xd, &s.xr, &s.z1, &s.z2, &s.u, &s.fe, &s.bound}) {
      (*v)(0) = next();
      (*v)(1) = next();
    }
    s.v1 = next();
    s.weights.resize(extra);
    for (int k = 0; k < extra; ++k) s.weights(k) = next();
    trace.samples.push_back(std::move(s));
  }
  if (trace.samples.size() >= 2) {
    trace.sample_period = trace.samples[1].t - trace.samples[0].t;
  }
  return trace;
}

void write_comparison_table(const ComparisonMatrix& matrix, const fs::path& path) {
  std::ofstream out = open_for_write(path);
  out << "variant,rmse1,rmse2,margin1,margin1_t,margin2,margin2_t,settling_time,tmax,"
         "peak_control,breaches,wall_seconds,error\n";
  for (const ComparisonRow& r : matrix.rows) {
    const MetricsReport& m = r.metrics;
    std::string err = r.error.value_or("");
    std::replace(err.begin(), err.end(), ',', ';');
    out << r.variant.label() << ',' << format_double(m.rmse(0)) << ','
        << format_double(m.rmse(1)) << ',' << format_double(m.margin.margin(0)) << ','
        << format_double(m.margin.time(0)) << ',' << format_double(m.margin.margin(1)) << ','
        << format_double(m.margin.time(1)) << ',' << format_double(m.settling_time) << ','
        << format_double(m.tmax) << ',' << format_double(m.peak_control) << ',' << m.breaches
        << ',' << format_double(r.wall_seconds) << ',' << err << '\n';
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

constexpr double kPlotWidth = 960.0;
constexpr double kPanelHeight = 260.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kPanelGap = 50.0;
constexpr std::size_t kMaxPoints = 2500;

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

void write_svg_plot(const fs::path& path, const std::string& title,
                    const std::vector<double>& time, const std::vector<PlotPanel>& panels) {
  std::ofstream out = open_for_write(path);
  const double height = kTop + static_cast<double>(panels.size()) * (kPanelHeight + kPanelGap);
  const double plot_w = kPlotWidth - kLeft - kRight;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPlotWidth << "\" height=\""
      << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kPlotWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape_xml(title) << "</text>\n";

  double t0 = 0.0, t1 = 1.0;
  if (!time.empty()) {
    t0 = time.front();
    t1 = time.back() > t0 ? time.back() : t0 + 1.0;
  }
  const std::size_t stride = std::max<std::size_t>(1, time.size() / kMaxPoints);

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const PlotPanel& panel = panels[p];
    const double top = kTop + static_cast<double>(p) * (kPanelHeight + kPanelGap) + 10.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const PlotSeries& s : panel.series) {
      for (double v : s.values) {
        if (std::isfinite(v)) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
    }
    if (!std::isfinite(lo)) {
      lo = -1.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      const double pad = std::max(1e-9, std::abs(hi) * 0.1);
      lo -= pad;
      hi += pad;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto sx = [&](double t) { return kLeft + (t - t0) / (t1 - t0) * plot_w; };
    auto sy = [&](double v) { return top + (hi - v) / (hi - lo) * kPanelHeight; };

    out << "<text x=\"" << kLeft << "\" y=\"" << top - 6 << "\" font-size=\"13\">"
        << escape_xml(panel.title) << "</text>\n";
    out << "<rect x=\"" << kLeft << "\" y=\"" << top << "\" width=\"" << plot_w
        << "\" height=\"" << kPanelHeight << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int k = 0; k <= 4; ++k) {
      const double v = lo + (hi - lo) * k / 4.0;
      const double y = sy(v);
      out << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + plot_w << "\" y1=\"" << y
          << "\" y2=\"" << y << "\" stroke=\"#ddd\"/>\n";
      out << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
          << tick_label(v) << "</text>\n";
      const double t = t0 + (t1 - t0) * k / 4.0;
      out << "<text x=\"" << sx(t) << "\" y=\"" << top + kPanelHeight + 15
          << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    }
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << top + kPanelHeight + 30
        << "\" text-anchor=\"middle\">t (s)</text>\n";
    out << "<text transform=\"translate(" << 16 << "," << top + kPanelHeight / 2
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape_xml(panel.y_label) << "</text>\n";

    for (std::size_t si = 0; si < panel.series.size(); ++si) {
      const PlotSeries& s = panel.series[si];
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\"";
      if (s.dashed) out << " stroke-dasharray=\"5,3\"";
      out << " points=\"";
      const std::size_t n = std::min(time.size(), s.values.size());
      for (std::size_t k = 0; k < n; k += stride) {
        if (!std::isfinite(s.values[k])) continue;
        out << sx(time[k]) << ',' << sy(std::clamp(s.values[k], lo, hi)) << ' ';
      }
      out << "\"/>\n";
      const double ly = top + 12.0 + 14.0 * static_cast<double>(si);
      const double lx = kLeft + plot_w + 12.0;
      out << "<line x1=\"" << lx << "\" x2=\"" << lx + 18 << "\" y1=\"" << ly - 4 << "\" y2=\""
          << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
      if (s.dashed) out << " stroke-dasharray=\"5,3\"";
      out << "/>\n<text x=\"" << lx + 24 << "\" y=\"" << ly << "\">" << escape_xml(s.label)
          << "</text>\n";
    }
  }
  out << "</svg>\n";
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string figure_suffix(FigureKind kind) {
  switch (kind) {
    case FigureKind::kTrajectory:
      return "trajectory";
    case FigureKind::kTrackingError:
      return "tracking_error";
    case FigureKind::kControlEffort:
      return "control";
    case FigureKind::kWeights:
      return "weights";
  }
  return "figure";
}

void write_figure(const SimulationTrace& trace, FigureKind kind, const fs::path& path) {
  std::vector<double> time;
  time.reserve(trace.samples.size());
  for (const TraceSample& s : trace.samples) time.push_back(s.t);

  auto column = [&trace](auto&& get) {
    std::vector<double> v;
    v.reserve(trace.samples.size());
    for (const TraceSample& s : trace.samples) v.push_back(get(s));
    return v;
  };

  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                   "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  const std::string name = trace.variant.label();
  std::vector<PlotPanel> panels;
  std::string title;
  for (int i = 0; i < kAxes; ++i) {
    const std::string axis = std::to_string(i + 1);
    PlotPanel panel;
    switch (kind) {
      case FigureKind::kTrajectory:
        title = name + ": trajectory and workspace bounds";
        panel.title = "axis " + axis;
        panel.y_label = "x" + axis + " (m)";
        panel.series = {
            {"x", column([i](const TraceSample& s) { return s.x(i); }), "#1f77b4", false},
            {"x_r", column([i](const TraceSample& s) { return s.xr(i); }), "#ff7f0e", true},
            {"x_d", column([i](const TraceSample& s) { return s.xd(i); }), "#2ca02c", true},
            {"+bound", column([i](const TraceSample& s) { return s.bound(i); }), "#d62728", false},
            {"-bound", column([i](const TraceSample& s) { return -s.bound(i); }), "#d62728",
             false}};
        break;
      case FigureKind::kTrackingError:
        title = name + ": tracking error x - x_r";
        panel.title = "axis " + axis;
        panel.y_label = "z1_" + axis + " (m)";
        panel.series = {
            {"x - x_r", column([i](const TraceSample& s) { return s.z1(i); }), "#1f77b4", false}};
        break;
      case FigureKind::kControlEffort:
        title = name + ": Cartesian control force";
        panel.title = "axis " + axis;
        panel.y_label = "u" + axis + " (N)";
        panel.series = {
            {"u", column([i](const TraceSample& s) { return s.u(i); }), "#1f77b4", false},
            {"f_e", column([i](const TraceSample& s) { return s.fe(i); }), "#ff7f0e", true}};
        break;
      case FigureKind::kWeights:
        title = name + ": network weights";
        panel.title = "axis " + axis;
        panel.y_label = "W" + axis;
        for (int j = 0; j < trace.nodes; ++j) {
          const Eigen::Index k = static_cast<Eigen::Index>(i * trace.nodes + j);
          panel.series.push_back(
              {"w" + axis + "_" + std::to_string(j + 1),
               column([k](const TraceSample& s) { return k < s.weights.size() ? s.weights(k) : 0.0; }),
               kPalette[j % 8], false});
        }
        break;
    }
    panels.push_back(std::move(panel));
  }
  write_svg_plot(path, title, time, panels);
}

std::string variant_stem(const ControllerVariant& v) {
  std::string s(to_string(v.kind));
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v.model_free) s += "_nn";
  return s;
}

std::vector<fs::path> write_run_outputs(const SimulationTrace& trace, const fs::path& dir,
                                        const std::string& stem) {
  std::vector<fs::path> written;
  written.push_back(dir / (stem + ".csv"));
  write_trace_csv(trace, written.back());
  for (FigureKind k : {FigureKind::kTrajectory, FigureKind::kTrackingError,
                       FigureKind::kControlEffort, FigureKind::kWeights}) {
    written.push_back(dir / (stem + "_" + figure_suffix(k) + ".svg"));
    write_figure(trace, k, written.back());
  }
  return written;
}

std::vector<fs::path> write_comparison_outputs(const ComparisonMatrix& matrix,
                                               const fs::path& dir) {
  std::vector<fs::path> written;
  written.push_back(dir / "comparison.csv");
  write_comparison_table(matrix, written.back());
  for (const ComparisonRow& r : matrix.rows) {
    for (fs::path& p : write_run_outputs(r.trace, dir, variant_stem(r.variant))) {
      written.push_back(std::move(p));
    }
  }
  return written;
}

}  // namespace fxtblf
