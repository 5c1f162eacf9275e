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

using namespace eolpay;

static void BM_NonNegative(benchmark::State& state) {
  const ModelParams p = ModelParams::table_one();
  for (auto _ : state) benchmark::DoNotOptimize(solve_non_negative(p, 0.0));
}
BENCHMARK(BM_NonNegative);

static void BM_FreePayment(benchmark::State& state) {
  const ModelParams p = ModelParams::table_one();
  for (auto _ : state) benchmark::DoNotOptimize(solve_free_payment(p, 1.0));
}
BENCHMARK(BM_FreePayment);

static void BM_Misclassified(benchmark::State& state) {
  ModelParams p = ModelParams::table_one();
  p.w0 = 0.1;
  p.w1 = 0.2;
  for (auto _ : state) benchmark::DoNotOptimize(solve_non_negative_misclassified(p));
}
BENCHMARK(BM_Misclassified);

static void BM_RiskAverse(benchmark::State& state) {
  const ModelParams p = ModelParams::table_one();
  const UtilityTransform g = UtilityTransform::power(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(solve_risk_averse(p, g));
}
BENCHMARK(BM_RiskAverse);

static void BM_VerifyContract(benchmark::State& state) {
  const ModelParams p = ModelParams::table_one();
  const Contract c = solve_non_negative(p, 0.5).contract;
  for (auto _ : state) benchmark::DoNotOptimize(verify_contract(p, c, ModelKind::non_negative));
}
BENCHMARK(BM_VerifyContract);

BENCHMARK_MAIN();
