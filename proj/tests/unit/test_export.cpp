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

#include <filesystem>
#include <fstream>
#include <string>

#include "fxtblf/errors.hpp"
#include "fxtblf/export.hpp"

using namespace fxtblf;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fxtblf_export_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_SUITE("export") {
  TEST_CASE("trace header") {
    const auto h = trace_csv_header(8);
    REQUIRE(h.size() == 38);
    CHECK(h.front() == "t");
    CHECK(h[21] == "V1");
    CHECK(h[22] == "w1_1");
    CHECK(h.back() == "w2_8");
    CHECK(trace_csv_header(0).size() == 22);
  }

  TEST_CASE("empty trace writes only the header") {
    SimulationTrace tr;
    tr.nodes = 8;
    const fs::path p = scratch("empty.csv");
    write_trace_csv(tr, p);
    std::ifstream in(p);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 1);
    CHECK(read_trace_csv(p).samples.empty());
  }

  TEST_CASE("trace round trip is exact") {
    ScenarioConfig cfg;
    cfg.horizon = 0.5;
    cfg.variant.model_free = true;
    const SimulationTrace tr = run_scenario(cfg);
    const fs::path p = scratch("roundtrip.csv");
    write_trace_csv(tr, p);
    const SimulationTrace back = read_trace_csv(p);
    CHECK(back.nodes == tr.nodes);
    REQUIRE(back.samples.size() == tr.samples.size());
    for (std::size_t k = 0; k < tr.samples.size(); ++k) {
      const TraceSample& a = tr.samples[k];
      const TraceSample& b = back.samples[k];
      CHECK(a.t == b.t);
      CHECK(a.q == b.q);
      CHECK(a.qd == b.qd);
      CHECK(a.x == b.x);
      CHECK(a.xd == b.xd);
      CHECK(a.xr == b.xr);
      CHECK(a.z1 == b.z1);
      CHECK(a.z2 == b.z2);
      CHECK(a.u == b.u);
      CHECK(a.fe == b.fe);
      CHECK(a.bound == b.bound);
      CHECK(a.v1 == b.v1);
      CHECK(a.weights == b.weights);
    }
  }

  TEST_CASE("comparison outputs") {
    ScenarioConfig cfg;
    cfg.horizon = 0.2;
    cfg.trace_decimation = 20;
    const ComparisonMatrix m = run_comparison(cfg, {}, 2);
    const fs::path dir = scratch("cmp");
    fs::remove_all(dir);
    const auto written = write_comparison_outputs(m, dir);
    int csv = 0;
    int svg = 0;
    for (const fs::path& p : written) {
      CHECK(fs::exists(p));
      CHECK(fs::file_size(p) > 0);
      if (p.extension() == ".csv") ++csv;
      if (p.extension() == ".svg") ++svg;
    }
    CHECK(csv == 7);
    CHECK(svg == 24);
    CHECK(first_line(dir / "comparison.csv").rfind("variant,rmse1,rmse2", 0) == 0);
    std::ifstream svg_in(dir / (variant_stem({ControllerKind::kFxtTviblf, true}) + "_" +
                                figure_suffix(FigureKind::kWeights) + ".svg"));
    std::string head;
    std::getline(svg_in, head);
    CHECK(head.find("<svg") != std::string::npos);
  }

  TEST_CASE("variant stems") {
    CHECK(variant_stem({ControllerKind::kIblf, false}) == "iblf");
    CHECK(variant_stem({ControllerKind::kFxtTviblf, true}) == "fxt_tviblf_nn");
  }

  TEST_CASE("i/o failures") {
    SimulationTrace tr;
    const fs::path blocker = scratch("blocker");
    write_text(blocker, "x");
    CHECK_THROWS_AS(write_trace_csv(tr, blocker / "sub" / "t.csv"), IoError);
    CHECK_THROWS_AS(read_trace_csv(scratch("does_not_exist.csv")), IoError);

    const fs::path bad_header = scratch("bad_header.csv");
    write_text(bad_header, "a,b,c\n1,2,3\n");
    CHECK_THROWS_AS(read_trace_csv(bad_header), IoError);

    std::string header;
    for (const auto& h : trace_csv_header(0)) header += (header.empty() ? "" : ",") + h;
    const fs::path ragged = scratch("ragged.csv");
    write_text(ragged, header + "\n1,2\n");
    CHECK_THROWS_AS(read_trace_csv(ragged), IoError);

    std::string row = "x";
    for (int k = 1; k < 22; ++k) row += ",0";
    const fs::path garbage = scratch("garbage.csv");
    write_text(garbage, header + "\n" + row + "\n");
    CHECK_THROWS_AS(read_trace_csv(garbage), IoError);

    const fs::path empty = scratch("zero_bytes.csv");
    write_text(empty, "");
    CHECK_THROWS_AS(read_trace_csv(empty), IoError);
  }
}
