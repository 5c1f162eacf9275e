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
#include <filesystem>
#include <fstream>
#include <numeric>

#include "eolpay/domain.hpp"
#include "eolpay/error.hpp"
#include "eolpay/io.hpp"
#include "eolpay/random.hpp"
#include "eolpay/sampling.hpp"

using namespace eolpay;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an eolpay::Error");
  return ErrorKind::io;
}

}  // namespace

TEST_CASE("table one objective coefficients") {
  const NormalizedSystem sys = build_normalized_system(ModelParams::table_one());
  const Vec4 expected{0.2744, 0.066, 0.2856, 0.374};
  for (std::size_t k = 0; k < 4; ++k) CHECK(sys.c0[k] == doctest::Approx(expected[k]).epsilon(1e-12));
  CHECK(std::accumulate(sys.c0.begin(), sys.c0.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sys.b1 == 1.0);
  CHECK(sys.b2 == -1.0);
}

TEST_CASE("c1 and c2 are the provider's incentive differences") {
  const ModelParams p = ModelParams::table_one();
  const NormalizedSystem sys = build_normalized_system(p);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Contract c{rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(0, 3)};
    const double good_gain = provider_utility(p, c, 1, 1) - provider_utility(p, c, 1, 0);
    const double bad_gain = provider_utility(p, c, 0, 0) - provider_utility(p, c, 0, 1);
    CHECK(dot(sys.c1, c.as_vector()) - sys.b1 == doctest::Approx(good_gain).epsilon(1e-12));
    CHECK(dot(sys.c2, c.as_vector()) - sys.b2 == doctest::Approx(bad_gain).epsilon(1e-12));
  }
}

TEST_CASE("survival summaries") {
  const ModelParams p = ModelParams::table_one();
  const SurvivalSummary s = survival_summary(p);
  CHECK(s.s0 == doctest::Approx(0.576).epsilon(1e-12));
  CHECK(s.s1 == doctest::Approx(0.794).epsilon(1e-12));
  CHECK(expected_survival(p, AssignmentRule::matched) == doctest::Approx(0.6596).epsilon(1e-12));
  CHECK(expected_survival(p, AssignmentRule::pure_low) == doctest::Approx(0.576).epsilon(1e-12));
  CHECK(expected_survival(p, AssignmentRule::pure_high) == doctest::Approx(0.794).epsilon(1e-12));
}

TEST_CASE("matched expected payment equals c0 . P") {
  const ModelParams p = ModelParams::table_one();
  const NormalizedSystem sys = build_normalized_system(p);
  const Contract c{0.1, 0.2, 0.3, 1.0 / 0.85};
  CHECK(expected_payment(p, c, AssignmentRule::matched) == doctest::Approx(dot(sys.c0, c.as_vector())).epsilon(1e-14));
  CHECK(payer_utility(p, c, AssignmentRule::matched) ==
        doctest::Approx(0.6596 - dot(sys.c0, c.as_vector())).epsilon(1e-14));
  const Contract zero_low{0, 0, 0, 1.0 / 0.85};
  CHECK(expected_payment(p, zero_low, AssignmentRule::pure_low) == 0.0);
  CHECK(expected_payment(p, zero_low, AssignmentRule::pure_high) == doctest::Approx(0.794 / 0.85).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
  ModelParams p = ModelParams::table_one();
  CHECK_NOTHROW(validate(p));
  p.pi00 = 0.0;
  CHECK(kind_of([&] { validate(p); }) == ErrorKind::invalid_params);
  p = ModelParams::table_one();
  p.pi01 = 0.4;  // below pi00
  CHECK(kind_of([&] { validate(p); }) == ErrorKind::invalid_params);
  p = ModelParams::table_one();
  p.gamma = 1.0;
  CHECK(kind_of([&] { validate(p); }) == ErrorKind::invalid_params);
  p = ModelParams::table_one();
  p.w0 = 1.0;
  CHECK(kind_of([&] { validate(p); }) == ErrorKind::invalid_params);
  p = ModelParams::table_one();
  p.phi = 0.0;
  CHECK(kind_of([&] { validate(p); }) == ErrorKind::invalid_params);
}

TEST_CASE("assumption 2 detects proportional columns") {
  CHECK(satisfies_assumption2(ModelParams::table_one()));
  ModelParams p;
  p.pi00 = 0.2;
  p.pi01 = 0.4;
  p.pi10 = 0.3;
  p.pi11 = 0.6;
  CHECK_FALSE(satisfies_assumption2(p));
}

TEST_CASE("misclassified objective") {
  ModelParams p = ModelParams::table_one();
  const Vec4 clean = misclassified_objective(p);
  const Vec4 c0 = build_normalized_system(p).c0;
  for (std::size_t k = 0; k < 4; ++k) CHECK(clean[k] == doctest::Approx(c0[k]).epsilon(1e-15));
  p.w0 = 0.1;
  p.w1 = 0.2;
  const Vec4 noisy = misclassified_objective(p);
  CHECK(std::accumulate(noisy.begin(), noisy.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sampled parameters satisfy the assumptions") {
  Rng rng(11);
  SamplingOptions opts;
  opts.max_misclassification = 0.3;
  for (int i = 0; i < 500; ++i) {
    const ModelParams p = sample_valid_params(rng, opts);
    CHECK_NOTHROW(validate(p));
    CHECK(satisfies_assumption2(p, 1e-4));
    CHECK(p.w0 <= 0.3);
    CHECK(p.w1 <= 0.3);
  }
}

TEST_CASE("parameter json round trip") {
  ModelParams p = ModelParams::table_one();
  p.phi = 2.5;
  p.w0 = 0.125;
  const ModelParams q = params_from_json(params_to_json(p));
  CHECK(q.pi00 == p.pi00);
  CHECK(q.pi01 == p.pi01);
  CHECK(q.pi10 == p.pi10);
  CHECK(q.pi11 == p.pi11);
  CHECK(q.gamma == p.gamma);
  CHECK(q.phi == p.phi);
  CHECK(q.w0 == p.w0);
  CHECK(q.w1 == 0.0);
}

TEST_CASE("parameter json errors") {
  CHECK(kind_of([] { params_from_json(R"({"pi": {"00": 0.5, "01": 0.6, "10": 0.6}, "gamma": 0.4})"); }) ==
        ErrorKind::parse);
  CHECK(kind_of([] { params_from_json(R"({"pi": {"00": 0.5, "01": 0.6, "10": 0.6, "11": 0.7}})"); }) ==
        ErrorKind::parse);
  CHECK(kind_of([] { params_from_json("{not json"); }) == ErrorKind::parse);
  try {
    load_params("/nonexistent/params.json");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
    CHECK(std::string(e.what()).find("/nonexistent/params.json") != std::string::npos);
  }
}

TEST_CASE("bundled table one file") {
  const ModelParams p = load_params(std::filesystem::path(EOLPAY_DATA_DIR) / "tableI.json");
  CHECK(p.pi00 == 0.51);
  CHECK(p.pi11 == 0.85);
  CHECK(p.gamma == 0.44);
}

TEST_CASE("contract json accepts solver output") {
  const Contract c = contract_from_json(R"({"model": "nonneg", "contract": {"p00": 0, "p01": 0, "p10": 0, "p11": 1.25}})");
  CHECK(c == Contract{0, 0, 0, 1.25});
  CHECK(contract_from_json(contract_to_json(c)) == c);
}
