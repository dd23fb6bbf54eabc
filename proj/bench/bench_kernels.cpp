// Copyright 2026 The epirisk Authors
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

// Serial reference vs OpenMP path for each parallel kernel. Results are
// identical by construction; only the wall time differs.

#include <benchmark/benchmark.h>

#include <vector>

#include "epirisk/game.hpp"
#include "epirisk/netgen.hpp"
#include "epirisk/sim.hpp"

namespace {

using epirisk::Execution;

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

epirisk::EpidemicParams reference_params(double q_minus) {
  epirisk::EpidemicParams p;
  p.p_plus = 0.01;
  p.q_plus = 0.5;
  p.q_minus = q_minus;
  p.degree = epirisk::DegreeDist::poisson(10);
  return p;
}

void BM_MonteCarloTrials(benchmark::State& state) {
  const epirisk::Graph g = epirisk::gen_er(10000, 10.0, 1);
  epirisk::SimConfig cfg;
  cfg.params = reference_params(0.0);
  cfg.gamma = 0.5;
  cfg.trials = 64;
  for (auto _ : state) {
    benchmark::DoNotOptimize(epirisk::run_epidemic(g, cfg, exec_of(state)).mean_infected);
  }
}
BENCHMARK(BM_MonteCarloTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExactEnumeration(benchmark::State& state) {
  // 7 nodes, 8 edges: 7 + 2 * 8 = 23 outcome bits
  std::vector<epirisk::Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {0, 6}, {1, 4}};
  const epirisk::Graph g = epirisk::Graph::from_edges(7, edges);
  const std::vector<std::uint8_t> d = {0, 1, 0, 1, 0, 1, 0};
  epirisk::ExactOptions opts;
  opts.execution = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(epirisk::exact_tiny(g, reference_params(0.1), d, opts));
  }
}
BENCHMARK(BM_ExactEnumeration)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CriticalCostGrid(benchmark::State& state) {
  for (auto _ : state) {
    const epirisk::CriticalCostCurve curve(reference_params(0.25), epirisk::AgentEconomy{}, 1024,
                                           exec_of(state));
    benchmark::DoNotOptimize(curve.max_critical_cost());
  }
}
BENCHMARK(BM_CriticalCostGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_AdoptionCells(benchmark::State& state) {
  const std::vector<double> qs = {0.0, 0.25, 0.5};
  std::vector<double> ratios;
  for (int k = 0; k < 100; ++k) ratios.push_back(k / 99.0);
  epirisk::GameOptions opts;
  opts.execution = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        epirisk::adoption_curve(reference_params(0.0), epirisk::AgentEconomy{}, qs, ratios, opts));
  }
}
BENCHMARK(BM_AdoptionCells)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
