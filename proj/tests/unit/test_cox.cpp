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

#include "eolpay/error.hpp"
#include "eolpay/estimation.hpp"
#include "eolpay/fixture.hpp"
#include "eolpay/random.hpp"

using namespace eolpay;

TEST_CASE("recovers planted coefficients with censoring") {
  const Cohort c = make_cox_cohort(10000, {0.5, -0.3}, 0.2, 99);
  std::size_t censored = 0;
  for (const PatientRecord& r : c) censored += r.event_observed ? 0 : 1;
  CHECK(censored > 1000);
  CHECK(censored < 3500);
  const CoxFit fit = fit_cox(c);
  CHECK(std::abs(fit.beta[0] - 0.5) < 0.05);
  CHECK(std::abs(fit.beta[1] + 0.3) < 0.05);
  CHECK(fit.gradient_norm <= 1e-8);
  for (double se : fit.standard_errors) CHECK((se > 0.0 && se < 0.1));
}

TEST_CASE("likelihood never decreases along the Newton path") {
  const CoxFit fit = fit_cox(make_cox_cohort(3000, {1.2, -0.8, 0.4}, 0.3, 5));
  REQUIRE(fit.likelihood_trace.size() >= 2);
  for (std::size_t i = 1; i < fit.likelihood_trace.size(); ++i) {
    CHECK(fit.likelihood_trace[i] >= fit.likelihood_trace[i - 1] - 1e-9);
  }
}

TEST_CASE("analytic gradient matches central differences") {
  const Cohort c = make_cox_cohort(2000, {0.5, -0.3, 0.2}, 0.2, 13);
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> beta{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const std::vector<double> grad = cox_gradient(c, beta);
    for (std::size_t k = 0; k < beta.size(); ++k) {
      const double h = 1e-5;
      std::vector<double> up = beta;
      std::vector<double> down = beta;
      up[k] += h;
      down[k] -= h;
      const double fd = (cox_log_partial_likelihood(c, up) - cox_log_partial_likelihood(c, down)) / (2 * h);
      CHECK(std::abs(fd - grad[k]) <= 1e-6 * std::max(1.0, std::abs(grad[k])));
    }
  }
}

TEST_CASE("constant covariate is not estimable") {
  Cohort c = make_cox_cohort(500, {0.5, 0.0}, 0.1, 3);
  for (PatientRecord& r : c) r.covariates[1] = 2.0;
  try {
    fit_cox(c);
    FAIL("expected collinear");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::collinear);
  }
}

TEST_CASE("perfectly ordered deaths give a monotone likelihood") {
  Cohort c = make_cox_cohort(200, {0.0}, 0.0, 4);
  // Death order follows the covariate exactly: beta -> +infinity.
  std::sort(c.begin(), c.end(), [](const PatientRecord& a, const PatientRecord& b) { return a.covariates[0] > b.covariates[0]; });
  for (std::size_t i = 0; i < c.size(); ++i) c[i].event_time = static_cast<int>(i) + 1;
  try {
    fit_cox(c);
    FAIL("expected monotone likelihood");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::monotone_likelihood || e.kind() == ErrorKind::non_convergence));
  }
}

TEST_CASE("too few events") {
  Cohort c = make_cox_cohort(50, {0.5}, 0.0, 8);
  for (PatientRecord& r : c) r.event_observed = false;
  c[0].event_observed = true;
  try {
    fit_cox(c);
    FAIL("expected insufficient-data");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::insufficient_data);
  }
}
