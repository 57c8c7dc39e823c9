// Copyright 2026 The qsync Authors
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

#include "qsync/causal.hpp"
#include "qsync/distill.hpp"
#include "qsync/estimation.hpp"
#include "qsync/protocols.hpp"
#include "qsync/qec.hpp"

namespace {

using namespace qsync;

void BM_RunQcs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(protocols::run_qcs(n, {0.7, 0.0, 0.0}, 1.0, 1.0, 0.9, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunQcs)->Arg(4096)->Arg(40000)->Arg(400000);

void BM_EstimateOffset(benchmark::State& state) {
  const auto samples = protocols::run_qcs(40000, {0.7, 0.0, 0.0}, 1.0, 1.0, 0.9, 7);
  for (auto _ : state) benchmark::DoNotOptimize(protocols::estimate_offset(samples, 1.0, protocols::QcsModel{1.0, 0.9}));
}
BENCHMARK(BM_EstimateOffset);

void BM_RecurrenceRoundCircuit(benchmark::State& state) {
  const auto path = state.range(0) == 0 ? distill::CircuitPath::projective : distill::CircuitPath::gates;
  const DensityMatrix pair = distill::ensemble_state({1.0, 0.8, 0.0, 0.3}, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(distill::recurrence_round_circuit(pair, 0.3, 1.0, path));
}
BENCHMARK(BM_RecurrenceRoundCircuit)->Arg(0)->Arg(1);

void BM_CausalityCheck(benchmark::State& state) {
  const auto superop = causal::sorkin_superop();
  for (auto _ : state) benchmark::DoNotOptimize(causal::causality_check(superop));
}
BENCHMARK(BM_CausalityCheck);

void BM_CausalityCheckFourQubits(benchmark::State& state) {
  const auto superop = causal::stabilizer_superop({"XXXX", "ZZZZ"});
  for (auto _ : state) benchmark::DoNotOptimize(causal::causality_check(superop, {1e-9, 2026, 4}));
}
BENCHMARK(BM_CausalityCheckFourQubits)->Unit(benchmark::kMillisecond);

void BM_PhaseLock(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(qec::phase_lock_run(1.1, 10000, {qec::CollectiveNoise::uniform, 0.0}, 2026));
}
BENCHMARK(BM_PhaseLock)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
