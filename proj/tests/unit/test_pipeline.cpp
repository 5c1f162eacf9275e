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
#include <string>

#include <json.hpp>

#include "eolpay/error.hpp"
#include "eolpay/estimation.hpp"
#include "eolpay/fixture.hpp"

using namespace eolpay;

namespace {

const PipelineResult& table_one_run() {
  static const PipelineResult result = [] {
    FixtureOptions fo;
    return run_pipeline(make_fixture(fo).cohort);
  }();
  return result;
}

}  // namespace

TEST_CASE("response score arithmetic") {
  CoxFit f0;
  CoxFit f1;
  f0.beta = {0.5, 0.5};
  f1.beta = {1.5, -0.5};
  Cohort c(1);
  c[0].covariates = {2.0, 1.0};
  const ResponseScoreTable t = response_scores(f0, f1, c);
  CHECK(t.scores[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.classes[0] == 1);

  const ResponseScoreTable same = response_scores(f0, f0, c);
  CHECK(same.scores[0] == 0.0);
  CHECK(same.classes[0] == 0);

  CoxFit short_fit;
  short_fit.beta = {1.0};
  CHECK_THROWS_AS(response_scores(f0, short_fit, c), Error);
}

TEST_CASE("outcome rates from planted Bernoulli cells") {
  // Classes planted directly; rates within 0.01 of the generating probabilities.
  FixtureOptions fo;
  fo.seed = 17;
  const Fixture fx = make_fixture(fo);
  ResponseScoreTable table;
  table.classes = fx.true_class;
  table.scores.assign(fx.true_class.begin(), fx.true_class.end());
  const OutcomeRateTable rates = outcome_rates(table, fx.cohort, OutcomeCriterion{});
  const ModelParams p = ModelParams::table_one();
  for (int r = 0; r < 2; ++r) {
    for (int e = 0; e < 2; ++e) CHECK(std::abs(rates.rate[r][e] - p.pi(r, e)) < 0.01);
  }
  std::size_t total = 0;
  for (const auto& row : rates.counts) total += row[0] + row[1];
  CHECK(total == fx.cohort.size());
  const std::size_t zero_class = rates.counts[0][0] + rates.counts[0][1];
  CHECK(rates.gamma_hat + static_cast<double>(zero_class) / static_cast<double>(total) == 1.0);
}

TEST_CASE("cell with no deaths and empty cells") {
  Cohort c(3);
  for (auto& r : c) {
    r.covariates = {0.0};
    r.event_time = 10;
    r.los = 2.0;  // discharged before death
  }
  c[2].treatment = 1;
  ResponseScoreTable t;
  t.classes = {0, 0, 0};
  t.scores = {0, 0, 0};
  const OutcomeRateTable rates = outcome_rates(t, c, OutcomeCriterion{});
  CHECK(rates.f_rate[0][0] == 0.0);
  CHECK(rates.rate[0][0] == 1.0);
  CHECK_FALSE(rates.defined[1][0]);
  CHECK(std::isnan(rates.rate[1][0]));
  CHECK(rates.counts[1][1] == 0);

  const OutcomeRateTable mort = outcome_rates(t, c, OutcomeCriterion{}, OutcomeOrientation::mortality);
  CHECK(mort.rate[0][0] == 0.0);
}

TEST_CASE("outcome criteria") {
  PatientRecord r;
  r.event_time = 5;
  r.los = 7;
  CHECK(OutcomeCriterion{}.evaluate(r));
  CHECK(OutcomeCriterion::parse("death-within:5").evaluate(r));
  CHECK_FALSE(OutcomeCriterion::parse("death-within:4").evaluate(r));
  r.event_observed = false;
  CHECK_FALSE(OutcomeCriterion{}.evaluate(r));
  CHECK(OutcomeCriterion::parse("death-within:30").to_string() == "death-within:30");
  CHECK_THROWS_AS(OutcomeCriterion::parse("death-within:x"), Error);
  CHECK_THROWS_AS(OutcomeCriterion::parse("alive"), Error);
}

TEST_CASE("fixture estimates recover the planted table") {
  const PipelineResult& res = table_one_run();
  const ModelParams truth = ModelParams::table_one();
  CHECK(std::abs(res.params.pi00 - truth.pi00) < 0.02);
  CHECK(std::abs(res.params.pi01 - truth.pi01) < 0.02);
  CHECK(std::abs(res.params.pi10 - truth.pi10) < 0.02);
  CHECK(std::abs(res.params.pi11 - truth.pi11) < 0.02);
  CHECK(std::abs(res.params.gamma - truth.gamma) < 0.02);
  CHECK(res.diagnostics.warnings.empty());
  CHECK(res.diagnostics.matched_pairs == res.diagnostics.treated);
  std::size_t total = 0;
  for (const auto& row : res.rates.counts) total += row[0] + row[1];
  CHECK(total == 2 * res.diagnostics.matched_pairs);
  // Greedy matching without a caliper shrinks, but cannot remove, the z3 imbalance.
  for (const BalanceRow& b : res.diagnostics.balance) CHECK(std::abs(b.smd_after) <= std::abs(b.smd_before) + 0.02);
  CHECK(std::abs(res.diagnostics.balance[2].smd_after) < 0.25 * std::abs(res.diagnostics.balance[2].smd_before));
}

TEST_CASE("class agreement with the planted responder labels") {
  FixtureOptions fo;
  fo.n = 5000;
  fo.seed = 5;
  const Fixture fx = make_fixture(fo);
  const PipelineResult res = run_pipeline(fx.cohort);
  const ResponseScoreTable all = response_scores(res.diagnostics.control_fit, res.diagnostics.treated_fit, fx.cohort);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < fx.cohort.size(); ++i) agree += all.classes[i] == fx.true_class[i];
  CHECK(static_cast<double>(agree) / static_cast<double>(fx.cohort.size()) >= 0.95);
}

TEST_CASE("assumption-violating estimates produce warnings") {
  FixtureOptions fo;
  fo.n = 20000;
  fo.planted.pi00 = 0.75;
  fo.planted.pi01 = 0.51;
  const PipelineResult res = run_pipeline(make_fixture(fo).cohort);
  bool warned = false;
  for (const std::string& w : res.diagnostics.warnings) warned |= w.find("pi01 >= pi00") != std::string::npos;
  CHECK(warned);
  CHECK_THROWS_AS(validate(res.params), Error);
}

TEST_CASE("empty cohort fails at the propensity stage") {
  try {
    run_pipeline(Cohort{});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::insufficient_data);
    CHECK(std::string(e.what()).find("fit_propensity") != std::string::npos);
  }
}

TEST_CASE("pipeline is deterministic") {
  FixtureOptions fo;
  fo.n = 4000;
  const Cohort c = make_fixture(fo).cohort;
  const PipelineResult a = run_pipeline(c);
  const PipelineResult b = run_pipeline(c);
  CHECK(diagnostics_to_json(a) == diagnostics_to_json(b));
  for (int r = 0; r < 2; ++r) {
    for (int e = 0; e < 2; ++e) {
      CHECK(a.rates.rate[r][e] == b.rates.rate[r][e]);
      CHECK(a.rates.counts[r][e] == b.rates.counts[r][e]);
    }
  }
}

TEST_CASE("diagnostics and histogram schemas") {
  const PipelineResult& res = table_one_run();
  const auto doc = nlohmann::json::parse(diagnostics_to_json(res));
  for (const char* key : {"cohort", "propensity", "balance", "cox", "response_score", "outcome_rates", "warnings"}) {
    CHECK(doc.contains(key));
  }
  CHECK(doc["outcome_rates"]["cells"].size() == 4);
  const std::string csv = histogram_to_csv(res.diagnostics.histogram);
  CHECK(csv.rfind("bin_lo,bin_hi,treated,control\n", 0) == 0);
  std::size_t counted = 0;
  for (const HistogramBin& b : res.diagnostics.histogram) counted += b.treated + b.control;
  CHECK(counted == 2 * res.diagnostics.matched_pairs);
}
