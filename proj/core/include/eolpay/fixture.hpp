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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "eolpay/cohort.hpp"
#include "eolpay/domain.hpp"
#include "eolpay/random.hpp"

namespace eolpay {

/// Synthetic cohort with a planted response structure.
///
/// Covariates are z ~ N(m, I) in three dimensions. Treatment follows a logistic
/// model in z3 only, so matching on the propensity score leaves the responder
/// share untouched. Death times are exponential with a Cox hazard whose control
/// and treated coefficients differ by `score_direction`; the true responder class
/// is 1(score_direction . z > 0) and m is placed so that class 1 has probability
/// `planted.gamma`. Survival to discharge is drawn per (class, treatment) cell
/// from `planted.pi(s, e)`, and length of stay is set on the right side of the
/// death time.
struct FixtureOptions {
  std::size_t n = 100000;
  std::uint64_t seed = kDefaultSeed;
  ModelParams planted = ModelParams::table_one();
  double propensity_intercept = -1.0;
  double propensity_slope = 1.0;
  std::vector<double> control_beta{0.3, 0.2, 0.1};
  /// Unit-norm direction; beta_treated = control_beta + score_direction.
  std::vector<double> score_direction{0.8, -0.6, 0.0};
  double baseline_hazard = 0.002;
};

struct Fixture {
  Cohort cohort;
  /// True responder class per record.
  std::vector<int> true_class;
  std::vector<double> treated_beta;
};

Fixture make_fixture(const FixtureOptions& options = {});

/// Standard normal quantile (bisection on erfc; |error| < 1e-14).
double normal_quantile(double p);

/// Cohort for propensity tests: z ~ N(0, I), Pr(e = 1 | z) = logistic(coef . [1, z]).
/// Covariate dimension is coef.size() - 1. Survival fields are placeholders.
Cohort make_logistic_cohort(std::size_t n, const std::vector<double>& coef, std::uint64_t seed);

/// Cohort for Cox tests: z ~ N(0, I), T ~ Exp(rate exp(beta . z)) rounded up to whole
/// days, and independent uniform censoring tuned so roughly `censor_share` of
/// records are censored. All records have e = 0.
Cohort make_cox_cohort(std::size_t n, const std::vector<double>& beta, double censor_share,
                       std::uint64_t seed);

}  // namespace eolpay
