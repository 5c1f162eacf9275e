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

#include <charconv>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "eolpay/error.hpp"
#include "eolpay/estimation.hpp"

namespace eolpay {

ResponseScoreTable response_scores(const CoxFit& control_fit, const CoxFit& treated_fit,
                                   const Cohort& cohort, double cutoff) {
  const std::size_t p = control_fit.beta.size();
  if (treated_fit.beta.size() != p) {
    throw Error(ErrorKind::dimension_mismatch,
                fmt::format("control fit has {} coefficients, treated fit has {}", p,
                            treated_fit.beta.size()));
  }
  ResponseScoreTable table;
  table.cutoff = cutoff;
  table.coefficient_difference.resize(p);
  for (std::size_t k = 0; k < p; ++k) {
    table.coefficient_difference[k] = treated_fit.beta[k] - control_fit.beta[k];
  }
  table.scores.reserve(cohort.size());
  table.classes.reserve(cohort.size());
  for (const PatientRecord& r : cohort) {
    if (r.covariates.size() != p) {
      throw Error(ErrorKind::dimension_mismatch,
                  fmt::format("record {} has {} covariates, fits have {}", r.id,
                              r.covariates.size(), p));
    }
    double d = 0.0;
    for (std::size_t k = 0; k < p; ++k) d += table.coefficient_difference[k] * r.covariates[k];
    table.scores.push_back(d);
    table.classes.push_back(d > cutoff ? 1 : 0);
  }
  return table;
}

bool OutcomeCriterion::evaluate(const PatientRecord& record) const {
  if (!record.event_observed) return false;
  switch (kind) {
    case Kind::death_before_discharge: return record.event_time < record.los;
    case Kind::death_within: return record.event_time <= days;
  }
  return false;
}

std::string OutcomeCriterion::to_string() const {
  if (kind == Kind::death_within) return fmt::format("death-within:{}", days);
  return "death-before-discharge";
}

OutcomeCriterion OutcomeCriterion::parse(std::string_view text) {
  if (text == "death-before-discharge") return {};
  constexpr std::string_view prefix = "death-within:";
  if (text.starts_with(prefix)) {
    const std::string_view number = text.substr(prefix.size());
    int days = 0;
    const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), days);
    if (ec == std::errc{} && end == number.data() + number.size() && days > 0) {
      return {Kind::death_within, days};
    }
  }
  throw Error(ErrorKind::parse,
              fmt::format("unknown criterion \"{}\" (expected death-before-discharge or "
                          "death-within:<days>)",
                          text));
}

std::string_view to_string(OutcomeOrientation orientation) {
  return orientation == OutcomeOrientation::survival ? "survival" : "mortality";
}

OutcomeOrientation parse_orientation(std::string_view text) {
  if (text == "survival") return OutcomeOrientation::survival;
  if (text == "mortality") return OutcomeOrientation::mortality;
  throw Error(ErrorKind::parse,
              fmt::format("unknown orientation \"{}\" (expected survival or mortality)", text));
}

OutcomeRateTable outcome_rates(const ResponseScoreTable& table, const Cohort& cohort,
                               const OutcomeCriterion& criterion, OutcomeOrientation orientation) {
  if (table.classes.size() != cohort.size()) {
    throw Error(ErrorKind::dimension_mismatch,
                fmt::format("{} classes for {} records", table.classes.size(), cohort.size()));
  }
  OutcomeRateTable rates;
  rates.orientation = orientation;
  rates.total = cohort.size();
  std::size_t good = 0;
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    const int r = table.classes[i];
    const int e = cohort[i].treatment;
    ++rates.counts[r][e];
    if (criterion.evaluate(cohort[i])) ++rates.f_counts[r][e];
    good += static_cast<std::size_t>(r);
  }
  for (int r = 0; r < 2; ++r) {
    for (int e = 0; e < 2; ++e) {
      rates.defined[r][e] = rates.counts[r][e] > 0;
      if (!rates.defined[r][e]) {
        rates.f_rate[r][e] = std::numeric_limits<double>::quiet_NaN();
        rates.rate[r][e] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      rates.f_rate[r][e] =
          static_cast<double>(rates.f_counts[r][e]) / static_cast<double>(rates.counts[r][e]);
      rates.rate[r][e] = orientation == OutcomeOrientation::survival ? 1.0 - rates.f_rate[r][e]
                                                                      : rates.f_rate[r][e];
    }
  }
  rates.gamma_hat =
      cohort.empty() ? std::numeric_limits<double>::quiet_NaN()
                     : static_cast<double>(good) / static_cast<double>(cohort.size());
  return rates;
}

}  // namespace eolpay
