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

#include <algorithm>
#include <cmath>
#include <set>

#include "eolpay/error.hpp"
#include "eolpay/estimation.hpp"
#include "eolpay/random.hpp"

using namespace eolpay;

namespace {

Cohort arms(const std::vector<int>& treatment) {
  Cohort c(treatment.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i].id = std::to_string(i);
    c[i].treatment = treatment[i];
    c[i].covariates = {0.0};
  }
  return c;
}

}  // namespace

TEST_CASE("unique nearest neighbours") {
  const Cohort c = arms({1, 1, 0, 0});
  const std::vector<double> scores{0.2, 0.8, 0.21, 0.79};
  const MatchResult m = match_one_to_one(c, scores);
  REQUIRE(m.pairs.size() == 2);
  CHECK(m.pairs[0] == std::pair<std::size_t, std::size_t>{1, 3});
  CHECK(m.pairs[1] == std::pair<std::size_t, std::size_t>{0, 2});
  CHECK(m.matched.size() == 4);
}

TEST_CASE("caliper drops distant treated records") {
  const Cohort c = arms({1, 0});
  const std::vector<double> scores{0.5, 0.55};
  MatchOptions opts;
  opts.caliper = 0.01;
  const MatchResult m = match_one_to_one(c, scores, opts);
  CHECK(m.pairs.empty());
  CHECK(m.dropped_treated == std::vector<std::size_t>{0});
}

TEST_CASE("insufficient controls without a caliper") {
  const Cohort c = arms({1, 1, 0});
  try {
    match_one_to_one(c, std::vector<double>{0.1, 0.2, 0.3});
    FAIL("expected insufficient-controls");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::insufficient_controls);
  }
}

TEST_CASE("matched cohort size at realistic scale") {
  std::vector<int> t(25934, 0);
  for (std::size_t i = 0; i < 728; ++i) t[i * 35] = 1;
  const Cohort c = arms(t);
  Rng rng(6);
  std::vector<double> scores(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) scores[i] = c[i].treatment ? rng.uniform(0.02, 0.2) : rng.uniform(0.0, 0.1);
  const MatchResult m = match_one_to_one(c, scores);
  CHECK(m.matched.size() == 1456);
  std::set<std::size_t> used;
  for (const auto& [tr, ctl] : m.pairs) {
    CHECK(c[tr].treatment == 1);
    CHECK(c[ctl].treatment == 0);
    CHECK(used.insert(ctl).second);
  }
}

TEST_CASE("greedy order property") {
  // Each treated record's control is no farther than any control taken later.
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> t(300);
    for (int& x : t) x = rng.bernoulli(0.3) ? 1 : 0;
    const Cohort c = arms(t);
    std::vector<double> scores(c.size());
    for (double& s : scores) s = rng.uniform();
    if (std::count(t.begin(), t.end(), 1) > std::count(t.begin(), t.end(), 0)) continue;
    const MatchResult m = match_one_to_one(c, scores);
    for (std::size_t a = 0; a < m.pairs.size(); ++a) {
      const double own = std::abs(scores[m.pairs[a].first] - scores[m.pairs[a].second]);
      for (std::size_t b = a + 1; b < m.pairs.size(); ++b) {
        CHECK(own <= std::abs(scores[m.pairs[a].first] - scores[m.pairs[b].second]) + 1e-15);
      }
    }
  }
}
