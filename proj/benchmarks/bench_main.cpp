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
#include <benchmark/benchmark.h>

#include "fxtblf/control.hpp"
#include "fxtblf/nn.hpp"
#include "fxtblf/simulator.hpp"

using namespace fxtblf;

namespace {

void BM_ClosedLoopStep(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.variant.model_free = state.range(0) != 0;
  cfg.horizon = 1e6 * cfg.dt;
  ClosedLoopSimulation sim(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
}
BENCHMARK(BM_ClosedLoopStep)->Arg(0)->Arg(1);

void BM_RbfBasis(benchmark::State& state) {
  const RbfNetwork net = RbfNetwork::replicated(ScenarioConfig{}.network.centers, 8, 40.0);
  Eigen::VectorXd z(8);
  z << 0.5, 2.0, 0.1, -0.1, 0.05, 0.02, 0.3, -0.4;
  for (auto _ : state) benchmark::DoNotOptimize(net.basis(z));
}
BENCHMARK(BM_RbfBasis);

void BM_StabilizingAlpha(benchmark::State& state) {
  const FixedTimeGains g;
  const ConstraintSample c = ConstraintProfile::workspace_default().at(3.0);
  const Vec2 z1(0.01, -0.02);
  const Vec2 xr(0.15, 0.05);
  const Vec2 xr_dot(-0.02, 0.08);
  for (auto _ : state) benchmark::DoNotOptimize(stabilizing_alpha(z1, xr, xr_dot, c, g));
}
BENCHMARK(BM_StabilizingAlpha);

}  // namespace

BENCHMARK_MAIN();
