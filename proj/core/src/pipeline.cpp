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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>
#include <json.hpp>

#include "eolpay/error.hpp"
#include "eolpay/estimation.hpp"

namespace eolpay {

namespace {

template <typename Stage>
auto run_stage(const char* name, Stage&& stage) {
  try {
    return stage();
  } catch (const Error& e) {
    throw Error(e.kind(), fmt::format("{}: {}", name, e.message()));
  }
}

double standardized_difference(const Cohort& cohort, std::size_t k) {
  double sum[2] = {0, 0};
  double sq[2] = {0, 0};
  double n[2] = {0, 0};
  for (const PatientRecord& r : cohort) {
    const double z = r.covariates[k];
    sum[r.treatment] += z;
    sq[r.treatment] += z * z;
    n[r.treatment] += 1;
  }
  if (n[0] < 2 || n[1] < 2) return std::numeric_limits<double>::quiet_NaN();
  double mean[2];
  double var[2];
  for (int e = 0; e < 2; ++e) {
    mean[e] = sum[e] / n[e];
    var[e] = std::max(0.0, (sq[e] - n[e] * mean[e] * mean[e]) / (n[e] - 1));
  }
  const double pooled = std::sqrt((var[0] + var[1]) / 2.0);
  return pooled > 0 ? (mean[1] - mean[0]) / pooled : 0.0;
}

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

void check_assumptions(const ModelParams& p, const OutcomeRateTable& rates,
                       std::vector<std::string>& warnings) {
  for (int r = 0; r < 2; ++r) {
    for (int e = 0; e < 2; ++e) {
      if (!rates.defined[r][e]) {
        warnings.push_back(fmt::format("cell (r={}, e={}) is empty; its rate is undefined", r, e));
      }
    }
  }
  const struct {
    double hi, lo;
    const char* text;
  } orderings[] = {{p.pi01, p.pi00, "pi01 >= pi00"},
                   {p.pi11, p.pi10, "pi11 >= pi10"},
                   {p.pi10, p.pi00, "pi10 >= pi00"},
                   {p.pi11, p.pi01, "pi11 >= pi01"}};
  for (const auto& o : orderings) {
    if (!(o.hi >= o.lo)) {
      warnings.push_back(fmt::format("assumption violated: {} ({} < {}); solvers will reject "
                                     "these estimates",
                                     o.text, o.hi, o.lo));
    }
  }
  for (double v : {p.pi00, p.pi01, p.pi10, p.pi11, p.gamma}) {
    if (!(v > kProbabilityEpsilon && v < 1.0 - kProbabilityEpsilon)) {
      warnings.push_back(fmt::format("estimate {} is not strictly inside (0, 1)", v));
      break;
    }
  }
  if (std::abs(p.pi01 * p.pi10 - p.pi00 * p.pi11) <= 1e-12) {
    warnings.push_back("assumption violated: pi01 pi10 == pi00 pi11");
  }
}

}  // namespace

ScoreSummary summarize_scores(std::span<const double> scores) {
  ScoreSummary s;
  s.count = scores.size();
  if (scores.empty()) return s;
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.count);
  double ss = 0.0;
  std::size_t positive = 0;
  for (double v : sorted) {
    ss += (v - s.mean) * (v - s.mean);
    if (v > 0) ++positive;
  }
  s.sd = s.count > 1 ? std::sqrt(ss / static_cast<double>(s.count - 1)) : 0.0;
  s.q25 = quantile(sorted, 0.25);
  s.median = quantile(sorted, 0.5);
  s.q75 = quantile(sorted, 0.75);
  s.positive_share = static_cast<double>(positive) / static_cast<double>(s.count);
  return s;
}

std::vector<HistogramBin> score_histogram(const ResponseScoreTable& table, const Cohort& cohort,
                                          int bins) {
  std::vector<HistogramBin> out;
  if (table.scores.empty() || bins <= 0) return out;
  const auto [mn, mx] = std::minmax_element(table.scores.begin(), table.scores.end());
  double lo = *mn;
  double hi = *mx;
  if (hi <= lo) hi = lo + 1.0;
  const double width = (hi - lo) / bins;
  out.resize(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    out[b].lo = lo + width * b;
    out[b].hi = b + 1 == bins ? hi : lo + width * (b + 1);
  }
  for (std::size_t i = 0; i < table.scores.size(); ++i) {
    auto b = static_cast<std::size_t>((table.scores[i] - lo) / width);
    b = std::min(b, out.size() - 1);
    if (cohort[i].treatment == 1) {
      ++out[b].treated;
    } else {
      ++out[b].control;
    }
  }
  return out;
}

PipelineResult run_pipeline(const Cohort& cohort, const PipelineConfig& config) {
  PipelineResult result;
  PipelineDiagnostics& diag = result.diagnostics;
  diag.cohort_size = cohort.size();

  diag.propensity = run_stage("fit_propensity", [&] {
    if (cohort.empty()) throw Error(ErrorKind::insufficient_data, "cohort is empty");
    return fit_propensity(cohort, config.fit_options);
  });
  for (const PatientRecord& r : cohort) (r.treatment == 1 ? diag.treated : diag.controls)++;
  if (!diag.propensity.converged) {
    diag.warnings.push_back(fmt::format("propensity fit stopped after {} iterations with "
                                        "|score| = {:.3e}",
                                        diag.propensity.iterations, diag.propensity.score_norm));
  }

  const MatchResult match = run_stage("match_one_to_one", [&] {
    return match_one_to_one(cohort, diag.propensity.scores, config.matching);
  });
  diag.matched_pairs = match.pairs.size();
  diag.dropped_treated = match.dropped_treated.size();
  if (diag.dropped_treated > 0) {
    diag.warnings.push_back(
        fmt::format("{} treated records had no control within the caliper", diag.dropped_treated));
  }
  const Cohort& matched = match.matched;
  const std::size_t p = covariate_dimension(cohort);
  for (std::size_t k = 0; k < p; ++k) {
    diag.balance.push_back({k, standardized_difference(cohort, k),
                            matched.empty() ? std::numeric_limits<double>::quiet_NaN()
                                            : standardized_difference(matched, k)});
  }

  Cohort control_group;
  Cohort treated_group;
  for (const PatientRecord& r : matched) (r.treatment == 1 ? treated_group : control_group).push_back(r);
  diag.control_fit = run_stage("fit_cox[control]", [&] { return fit_cox(control_group, config.fit_options); });
  diag.treated_fit = run_stage("fit_cox[treated]", [&] { return fit_cox(treated_group, config.fit_options); });

  result.scores = run_stage("response_scores", [&] {
    return response_scores(diag.control_fit, diag.treated_fit, matched, config.cutoff);
  });
  diag.score_summary = summarize_scores(result.scores.scores);
  diag.histogram = score_histogram(result.scores, matched, config.histogram_bins);

  result.rates = run_stage("outcome_rates", [&] {
    return outcome_rates(result.scores, matched, config.criterion, config.orientation);
  });

  ModelParams& params = result.params;
  params.pi00 = result.rates.rate[0][0];
  params.pi01 = result.rates.rate[0][1];
  params.pi10 = result.rates.rate[1][0];
  params.pi11 = result.rates.rate[1][1];
  params.gamma = result.rates.gamma_hat;
  params.phi = config.phi;
  params.disutility_f = config.disutility_f;
  params.w0 = config.w0;
  params.w1 = config.w1;
  if (config.orientation == OutcomeOrientation::mortality) {
    diag.warnings.push_back("rates are in mortality orientation; solvers expect survival "
                            "probabilities");
  }
  check_assumptions(params, result.rates, diag.warnings);
  return result;
}

namespace {

nlohmann::json fit_json(const CoxFit& fit) {
  return {{"beta", fit.beta},
          {"standard_errors", fit.standard_errors},
          {"log_partial_likelihood", fit.log_partial_likelihood},
          {"iterations", fit.iterations},
          {"gradient_norm", fit.gradient_norm},
          {"events", fit.events}};
}

nlohmann::json nullable(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

}  // namespace

std::string diagnostics_to_json(const PipelineResult& result, int indent) {
  using nlohmann::json;
  const PipelineDiagnostics& d = result.diagnostics;
  json doc;
  doc["cohort"] = {{"size", d.cohort_size},
                   {"treated", d.treated},
                   {"controls", d.controls},
                   {"matched_pairs", d.matched_pairs},
                   {"matched_size", 2 * d.matched_pairs},
                   {"dropped_treated", d.dropped_treated}};
  doc["propensity"] = {{"coefficients", d.propensity.coefficients},
                       {"standard_errors", d.propensity.standard_errors},
                       {"iterations", d.propensity.iterations},
                       {"score_norm", d.propensity.score_norm},
                       {"converged", d.propensity.converged}};
  json balance = json::array();
  for (const BalanceRow& b : d.balance) {
    balance.push_back({{"covariate", fmt::format("z{}", b.covariate + 1)},
                       {"smd_before", nullable(b.smd_before)},
                       {"smd_after", nullable(b.smd_after)}});
  }
  doc["balance"] = balance;
  doc["cox"] = {{"control", fit_json(d.control_fit)}, {"treated", fit_json(d.treated_fit)}};
  doc["response_score"] = {{"coefficient_difference", result.scores.coefficient_difference},
                           {"cutoff", result.scores.cutoff},
                           {"count", d.score_summary.count},
                           {"min", d.score_summary.min},
                           {"max", d.score_summary.max},
                           {"mean", d.score_summary.mean},
                           {"sd", d.score_summary.sd},
                           {"q25", d.score_summary.q25},
                           {"median", d.score_summary.median},
                           {"q75", d.score_summary.q75},
                           {"positive_share", d.score_summary.positive_share}};
  json cells = json::array();
  const OutcomeRateTable& rates = result.rates;
  for (int r = 0; r < 2; ++r) {
    for (int e = 0; e < 2; ++e) {
      cells.push_back({{"r", r},
                       {"e", e},
                       {"count", rates.counts[r][e]},
                       {"f_count", rates.f_counts[r][e]},
                       {"f_rate", nullable(rates.f_rate[r][e])},
                       {"rate", nullable(rates.rate[r][e])}});
    }
  }
  doc["outcome_rates"] = {{"orientation", std::string(to_string(rates.orientation))},
                          {"gamma_hat", nullable(rates.gamma_hat)},
                          {"cells", cells}};
  doc["warnings"] = d.warnings;
  return doc.dump(indent);
}

std::string histogram_to_csv(std::span<const HistogramBin> bins) {
  std::string out = "bin_lo,bin_hi,treated,control\n";
  for (const HistogramBin& b : bins) {
    out += fmt::format("{},{},{},{}\n", b.lo, b.hi, b.treated, b.control);
  }
  return out;
}

}  // namespace eolpay
