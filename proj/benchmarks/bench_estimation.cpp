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

#include "eolpay/estimation.hpp"
#include "eolpay/fixture.hpp"

using namespace eolpay;

namespace {

Cohort fixture_cohort(std::size_t n) {
  FixtureOptions fo;
  fo.n = n;
  return make_fixture(fo).cohort;
}

}  // namespace

static void BM_Propensity(benchmark::State& state) {
  const Cohort c = fixture_cohort(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_propensity(c));
}
BENCHMARK(BM_Propensity)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Cox(benchmark::State& state) {
  const Cohort c = make_cox_cohort(static_cast<std::size_t>(state.range(0)), {0.5, -0.3}, 0.2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fit_cox(c));
}
BENCHMARK(BM_Cox)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Pipeline(benchmark::State& state) {
  const Cohort c = fixture_cohort(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(c));
}
BENCHMARK(BM_Pipeline)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
