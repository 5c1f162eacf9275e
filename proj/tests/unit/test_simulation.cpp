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

#include <doctest.h>

#include <cmath>

#include "eolpay/contract_solvers.hpp"
#include "eolpay/error.hpp"
#include "eolpay/random.hpp"
#include "eolpay/sampling.hpp"
#include "eolpay/simulation.hpp"

using namespace eolpay;

namespace {

const Contract kGapContract{0, 0, 0, 1 / 0.85};

}  // namespace

TEST_CASE("table one policies at one million patients") {
  const ModelParams p = ModelParams::table_one();
  const PolicyComparison cmp = compare_policies(p, kGapContract, 1000000, 20240601);
  const PolicyReport& m = cmp.reports[0];
  const PolicyReport& h = cmp.reports[1];
  const PolicyReport& l = cmp.reports[2];
  CHECK(m.policy == "matched-optimal");
  CHECK(std::abs(m.survival_rate - 0.6596) < 0.001 + 1e-12);
  CHECK(std::abs(m.mean_payment - 0.44) < 0.002);
  CHECK(std::abs(h.survival_rate - 0.794) < 0.001 + 1e-12);
  CHECK(std::abs(h.mean_payment - 0.794 / 0.85) < 0.002);
  CHECK(std::abs(l.survival_rate - 0.576) < 0.001 + 1e-12);
  CHECK(l.mean_payment == 0.0);
  CHECK_FALSE(l.avg_ratio.has_value());
  CHECK_FALSE(l.marginal_ratio.has_value());
  CHECK(cmp.avg_ratio_dominates);
  CHECK(m.survival_ci95 == doctest::Approx(1.96 * std::sqrt(0.6596 * 0.3404 / 1e6)).epsilon(0.01));
  CHECK(cmp.ranking.front() == "matched-optimal");
  CHECK(cmp.ranking.back() == "pure-low");
}

TEST_CASE("closed-form expectations") {
  const ModelParams p = ModelParams::table_one();
  const PolicyExpectation m = expected_outcome(p, {PolicyKind::matched_optimal, kGapContract, std::nullopt});
  CHECK(m.survival == doctest::Approx(0.6596).epsilon(1e-14));
  CHECK(m.payment == doctest::Approx(0.44).epsilon(1e-14));
  const PolicyExpectation h = expected_outcome(p, {PolicyKind::pure_high, kGapContract, std::nullopt});
  CHECK(h.payment == doctest::Approx(0.794 / 0.85).epsilon(1e-14));
}

TEST_CASE("estimates stay within four standard errors across seeds") {
  const ModelParams p = ModelParams::table_one();
  constexpr std::size_t n = 100000;
  for (PolicyKind kind : {PolicyKind::matched_optimal, PolicyKind::pure_high, PolicyKind::pure_low}) {
    const Policy policy{kind, kGapContract, std::nullopt};
    const double expected = expected_outcome(p, policy).survival;
    const double bound = 4.0 * std::sqrt(expected * (1 - expected) / n);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      CHECK(std::abs(simulate_policy(p, policy, n, seed).survival_rate - expected) <= bound);
    }
  }
}

TEST_CASE("matched payment equals gamma for any optimal contract") {
  Rng rng(8);
  constexpr std::size_t n = 200000;
  for (int i = 0; i < 10; ++i) {
    const ModelParams p = sample_valid_params(rng);
    const double t = rng.uniform();
    const Policy policy{PolicyKind::matched_optimal, solve_non_negative(p, t).contract, std::nullopt};
    const PolicyReport r = simulate_policy(p, policy, n, 100 + i);
    CHECK(std::abs(r.mean_payment - p.gamma) <= 4.0 * r.payment_ci95 / 1.96 + 1e-12);
  }
}

TEST_CASE("misclassification shifts matched survival by the cell-probability amount") {
  const ModelParams p = ModelParams::table_one();
  const ResponderNoise noise{0.1, 0.2};
  const double shift = -p.gamma * noise.w0 * (p.pi11 - p.pi10) + (1 - p.gamma) * noise.w1 * (p.pi01 - p.pi00);
  const Policy clean{PolicyKind::matched_optimal, kGapContract, std::nullopt};
  const Policy noisy{PolicyKind::matched_optimal, kGapContract, noise};
  CHECK(expected_outcome(p, noisy).survival - expected_outcome(p, clean).survival ==
        doctest::Approx(shift).epsilon(1e-12));
  constexpr std::size_t n = 1000000;
  const double diff = simulate_policy(p, noisy, n, 3).survival_rate - simulate_policy(p, clean, n, 3).survival_rate;
  // Common random numbers: the difference is far tighter than either estimate.
  CHECK(std::abs(diff - shift) < 0.002);
}

TEST_CASE("same seed gives identical reports") {
  const ModelParams p = ModelParams::table_one();
  const PolicyComparison a = compare_policies(p, kGapContract, 50000, 9);
  const PolicyComparison b = compare_policies(p, kGapContract, 50000, 9);
  CHECK(a.reports == b.reports);
  const PolicyComparison c = compare_policies(p, kGapContract, 50000, 10);
  CHECK_FALSE(a.reports == c.reports);
}

TEST_CASE("rankings do not depend on phi") {
  ModelParams p = ModelParams::table_one();
  const PolicyComparison base = compare_policies(p, kGapContract, 50000, 4);
  p.phi = 7.5;
  const PolicyComparison scaled = compare_policies(p, kGapContract, 50000, 4);
  CHECK(base.ranking == scaled.ranking);
  CHECK(base.reports == scaled.reports);
}

TEST_CASE("nearly everyone a good responder") {
  ModelParams p = ModelParams::table_one();
  p.gamma = 0.999;
  const PolicyComparison cmp = compare_policies(p, kGapContract, 1000000, 2);
  const PolicyReport& m = cmp.reports[0];
  const PolicyReport& h = cmp.reports[1];
  CHECK(std::abs(m.survival_rate - h.survival_rate) <= m.survival_ci95 + h.survival_ci95);
}

TEST_CASE("invalid inputs") {
  const ModelParams p = ModelParams::table_one();
  CHECK_THROWS_AS(simulate_policy(p, {}, 0), Error);
  Policy bad{PolicyKind::matched_optimal, kGapContract, ResponderNoise{1.0, 0.0}};
  CHECK_THROWS_AS(simulate_policy(p, bad, 10), Error);
  CHECK(parse_policy_kind("pure-high") == PolicyKind::pure_high);
  CHECK_THROWS_AS(parse_policy_kind("mixed"), Error);
}
