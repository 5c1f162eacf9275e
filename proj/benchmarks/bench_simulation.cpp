// Copyright 2026 The eolpay Authors
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

#include "eolpay/contract_solvers.hpp"
#include "eolpay/simulation.hpp"

using namespace eolpay;

static void BM_SimulatePolicy(benchmark::State& state) {
  const ModelParams p = ModelParams::table_one();
  const Policy policy{PolicyKind::matched_optimal, solve_non_negative(p).contract, std::nullopt};
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_policy(p, policy, n, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulatePolicy)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_ComparePolicies(benchmark::State& state) {
  const ModelParams p = ModelParams::table_one();
  const Contract c = solve_non_negative(p).contract;
  for (auto _ : state) benchmark::DoNotOptimize(compare_policies(p, c, 1'000'000, 1));
}
BENCHMARK(BM_ComparePolicies)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
