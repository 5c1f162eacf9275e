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
#include "eolpay/lp_oracle.hpp"
#include "eolpay/verification.hpp"

using namespace eolpay;

static void BM_EnumerateNonNegative(benchmark::State& state) {
  const ModelParams p = ModelParams::table_one();
  const StandardFormLP lp = non_negative_lp(p, build_normalized_system(p).c0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(lp));
}
BENCHMARK(BM_EnumerateNonNegative);

static void BM_OracleChecks(benchmark::State& state) {
  const auto trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_oracle_checks(trials, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OracleChecks)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
