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

#include "eolpay/fixture.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "eolpay/error.hpp"

namespace eolpay {

namespace {

// Stream ids keep every quantity on its own generator, so changing one part
// of the design does not reshuffle the others.
enum Stream : std::uint64_t { kCovariates = 1, kTreatment, kDeath, kOutcome, kStay, kCensor };

double logistic(double eta) { return 1.0 / (1.0 + std::exp(-eta)); }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

int whole_days(double t) { return std::max(1, static_cast<int>(std::ceil(t))); }

std::string record_id(std::size_t i) { return fmt::format("p{:07d}", i + 1); }

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::out_of_range, "quantile needs p in (0, 1)");
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(-mid / std::sqrt(2.0)) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Fixture make_fixture(const FixtureOptions& options) {
  const ModelParams& planted = options.planted;
  for (double v : {planted.pi00, planted.pi01, planted.pi10, planted.pi11}) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::invalid_params, "planted rates must lie in [0, 1]");
  }
  const std::size_t p = options.control_beta.size();
  if (p != 3 || options.score_direction.size() != p) {
    throw Error(ErrorKind::dimension_mismatch, "fixture uses exactly three covariates");
  }
  const double norm = std::sqrt(dot(options.score_direction, options.score_direction));
  if (std::abs(norm - 1.0) > 1e-12) {
    throw Error(ErrorKind::invalid_params, "score_direction must have unit norm");
  }
  if (options.n == 0) throw Error(ErrorKind::insufficient_data, "fixture size must be positive");

  // direction . z ~ N(k, 1) when m = k * direction, so Pr(class 1) = Phi(k).
  const double k = normal_quantile(planted.gamma);
  std::vector<double> mean(p);
  for (std::size_t j = 0; j < p; ++j) mean[j] = k * options.score_direction[j];

  Fixture fx;
  fx.treated_beta.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    fx.treated_beta[j] = options.control_beta[j] + options.score_direction[j];
  }

  const Rng master(options.seed);
  Rng covariates = master.split(kCovariates);
  Rng treatment = master.split(kTreatment);
  Rng death = master.split(kDeath);
  Rng outcome = master.split(kOutcome);
  Rng stay = master.split(kStay);

  fx.cohort.reserve(options.n);
  fx.true_class.reserve(options.n);
  for (std::size_t i = 0; i < options.n; ++i) {
    PatientRecord r;
    r.id = record_id(i);
    r.covariates.resize(p);
    for (std::size_t j = 0; j < p; ++j) r.covariates[j] = mean[j] + covariates.normal();
    r.treatment = treatment.bernoulli(
                      logistic(options.propensity_intercept + options.propensity_slope * r.covariates[2]))
                      ? 1
                      : 0;
    const auto& beta = r.treatment == 1 ? fx.treated_beta : options.control_beta;
    const double t = death.exponential(options.baseline_hazard * std::exp(dot(beta, r.covariates)));
    r.event_time = whole_days(t);
    r.event_observed = true;

    const int s = dot(options.score_direction, r.covariates) > 0.0 ? 1 : 0;
    const bool survives = outcome.bernoulli(planted.pi(s, r.treatment));
    if (survives) {
      r.los = stay.uniform(0.05, 0.95) * r.event_time;  // discharged alive
    } else {
      r.los = r.event_time + 1.0 + stay.exponential(0.2);  // dies in the ICU
    }
    fx.true_class.push_back(s);
    fx.cohort.push_back(std::move(r));
  }
  return fx;
}

Cohort make_logistic_cohort(std::size_t n, const std::vector<double>& coef, std::uint64_t seed) {
  if (coef.empty()) throw Error(ErrorKind::dimension_mismatch, "need an intercept");
  const std::size_t p = coef.size() - 1;
  const Rng master(seed);
  Rng covariates = master.split(kCovariates);
  Rng treatment = master.split(kTreatment);
  Cohort cohort(n);
  for (std::size_t i = 0; i < n; ++i) {
    PatientRecord& r = cohort[i];
    r.id = record_id(i);
    r.covariates.resize(p);
    double eta = coef[0];
    for (std::size_t j = 0; j < p; ++j) {
      r.covariates[j] = covariates.normal();
      eta += coef[j + 1] * r.covariates[j];
    }
    r.treatment = treatment.bernoulli(logistic(eta)) ? 1 : 0;
    r.event_time = 1;
    r.los = 2.0;
  }
  return cohort;
}

Cohort make_cox_cohort(std::size_t n, const std::vector<double>& beta, double censor_share,
                       std::uint64_t seed) {
  if (!(censor_share >= 0.0 && censor_share < 1.0)) {
    throw Error(ErrorKind::out_of_range, "censor_share must lie in [0, 1)");
  }
  constexpr double kBaseline = 0.01;
  // Independent exponential censoring; exact share at beta . z = 0.
  const double censor_rate = kBaseline * censor_share / (1.0 - censor_share);
  const Rng master(seed);
  Rng covariates = master.split(kCovariates);
  Rng death = master.split(kDeath);
  Rng censor = master.split(kCensor);
  Cohort cohort(n);
  for (std::size_t i = 0; i < n; ++i) {
    PatientRecord& r = cohort[i];
    r.id = record_id(i);
    r.covariates.resize(beta.size());
    for (double& z : r.covariates) z = covariates.normal();
    const double t = death.exponential(kBaseline * std::exp(dot(beta, r.covariates)));
    const double c = censor_rate > 0.0 ? censor.exponential(censor_rate) : std::numeric_limits<double>::infinity();
    r.event_observed = t <= c;
    r.event_time = whole_days(std::min(t, c));
    r.los = r.event_time + 1.0;
  }
  return cohort;
}

}  // namespace eolpay
