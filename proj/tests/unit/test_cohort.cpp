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

#include <string>

#include "eolpay/cohort.hpp"
#include "eolpay/error.hpp"
#include "eolpay/fixture.hpp"

using namespace eolpay;

namespace {

std::string parse_error(std::string_view text) {
  try {
    parse_cohort_csv(text, "cohort.csv");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    return e.what();
  }
  FAIL("expected a parse error");
  return {};
}

}  // namespace

TEST_CASE("parse a small cohort") {
  const Cohort c = parse_cohort_csv(
      "id,e,t,los,event,z1,z2\n"
      "a,1,10,3.5,1,0.5,-1\n"
      "b,0,4,6,0,1e-3,2\n");
  REQUIRE(c.size() == 2);
  CHECK(c[0].id == "a");
  CHECK(c[0].treatment == 1);
  CHECK(c[0].event_time == 10);
  CHECK(c[0].los == 3.5);
  CHECK(c[0].event_observed);
  CHECK(c[1].covariates == std::vector<double>{1e-3, 2});
  CHECK_FALSE(c[1].event_observed);
  CHECK(covariate_dimension(c) == 2);
}

TEST_CASE("csv round trip") {
  FixtureOptions fo;
  fo.n = 200;
  const Cohort c = make_fixture(fo).cohort;
  const Cohort back = parse_cohort_csv(cohort_to_csv(c));
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(back[i].id == c[i].id);
    CHECK(back[i].treatment == c[i].treatment);
    CHECK(back[i].event_time == c[i].event_time);
    CHECK(back[i].los == c[i].los);
    CHECK(back[i].covariates == c[i].covariates);
  }
}

TEST_CASE("malformed lines name the file and line") {
  CHECK(parse_error("id,e,t,los,event,z1\na,2,10,3,1,0\n").find("cohort.csv:2:") != std::string::npos);
  CHECK(parse_error("id,e,t,los,event,z1\na,1,10,3,1,0\nb,1,x,3,1,0\n").find("cohort.csv:3:") != std::string::npos);
  CHECK(parse_error("id,e,t,los,event,z1\na,1,10,3,1\n").find("cohort.csv:2:") != std::string::npos);
  CHECK(parse_error("id,e,t,los,event,z1\na,1,0,3,1,0.1\n").find("cohort.csv:2:") != std::string::npos);
  CHECK(parse_error("id,e,t,los,event,z1\na,1,4,3,1,nan\n").find("cohort.csv:2:") != std::string::npos);
  CHECK(parse_error("id,treat,t,los,event,z1\n").find("cohort.csv:1:") != std::string::npos);
  CHECK(parse_error("").find("cohort.csv") != std::string::npos);
}

TEST_CASE("missing cohort file is an io error") {
  try {
    load_cohort_csv("/nonexistent/cohort.csv");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}

TEST_CASE("ragged cohort") {
  Cohort c(2);
  c[0].covariates = {1, 2};
  c[1].covariates = {1};
  CHECK_THROWS_AS(covariate_dimension(c), Error);
}
