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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eolpay/cohort.hpp"
#include "eolpay/domain.hpp"

namespace eolpay {

struct IterationOptions {
  int max_iterations = 100;
  double gradient_tolerance = 1e-8;
};

// ---------------------------------------------------------------------------
// Propensity scores

struct PropensityModel {
  /// Intercept followed by one slope per covariate.
  std::vector<double> coefficients;
  std::vector<double> standard_errors;
  /// Fitted Pr(e = 1 | Z) for every record, in cohort order.
  std::vector<double> scores;
  double log_likelihood = 0.0;
  double score_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Maximum-likelihood logistic regression of treatment on covariates by
/// Newton/IRLS with step halving. Stops when |score|_inf <= tolerance or after
/// max_iterations.
/// Errors: insufficient_data (empty cohort or fewer than p + 1 records in an arm),
/// collinear (rank-deficient design), separation (fitted score leaves (1e-12, 1 - 1e-12)).
PropensityModel fit_propensity(const Cohort& cohort, const IterationOptions& options = {});

// ---------------------------------------------------------------------------
// 1-1 matching

struct MatchOptions {
  std::optional<double> caliper;
};

struct MatchResult {
  /// (treated index, control index) into the input cohort, in processing order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> dropped_treated;
  /// Treated and matched control records, pair by pair.
  Cohort matched;
};

/// Greedy nearest-neighbour matching on the propensity score without replacement.
/// Treated records are processed in descending score order (ties by index).
/// Without a caliper, throws Error(insufficient_controls) when controls < treated.
MatchResult match_one_to_one(const Cohort& cohort, std::span<const double> scores,
                             const MatchOptions& options = {});

// ---------------------------------------------------------------------------
// Cox proportional hazards

struct CoxFit {
  std::vector<double> beta;
  std::vector<double> standard_errors;
  double log_partial_likelihood = 0.0;
  /// Log partial likelihood after every accepted Newton step (first entry at beta = 0).
  std::vector<double> likelihood_trace;
  int iterations = 0;
  double gradient_norm = 0.0;
  std::size_t events = 0;
};

/// Breslow log partial likelihood; censored records only enter risk sets.
double cox_log_partial_likelihood(const Cohort& group, std::span<const double> beta);
std::vector<double> cox_gradient(const Cohort& group, std::span<const double> beta);

inline constexpr double kMaxCoxCoefficient = 50.0;

/// Newton-Raphson with step halving on the Breslow partial likelihood. Baseline
/// hazards are not estimated.
/// Errors: insufficient_data (< 2 distinct event times or < p + 1 events),
/// collinear (constant or linearly dependent covariates), monotone_likelihood
/// (|beta|_inf > 50), non_convergence.
CoxFit fit_cox(const Cohort& group, const IterationOptions& options = {});

// ---------------------------------------------------------------------------
// Response scores and outcome rates

struct ResponseScoreTable {
  /// beta_treated - beta_control.
  std::vector<double> coefficient_difference;
  std::vector<double> scores;
  /// 1 when score > cutoff.
  std::vector<int> classes;
  double cutoff = 0.0;
};

ResponseScoreTable response_scores(const CoxFit& control_fit, const CoxFit& treated_fit,
                                   const Cohort& cohort, double cutoff = 0.0);

/// Outcome indicator f(t_i). Censored records never count as deaths.
struct OutcomeCriterion {
  enum class Kind { death_before_discharge, death_within };
  Kind kind = Kind::death_before_discharge;
  int days = 0;

  bool evaluate(const PatientRecord& record) const;
  std::string to_string() const;
  /// "death-before-discharge" or "death-within:<days>".
  static OutcomeCriterion parse(std::string_view text);
};

enum class OutcomeOrientation { survival, mortality };

std::string_view to_string(OutcomeOrientation orientation);
OutcomeOrientation parse_orientation(std::string_view text);

using CellTable = std::array<std::array<double, 2>, 2>;
using CountTable = std::array<std::array<std::size_t, 2>, 2>;

/// Per (responder class r, treatment e) cell.
struct OutcomeRateTable {
  /// Rate in the requested orientation (1 - f-rate for survival); NaN for empty cells.
  CellTable rate{};
  /// Share of the cell with f = 1; NaN for empty cells.
  CellTable f_rate{};
  CountTable counts{};
  CountTable f_counts{};
  std::array<std::array<bool, 2>, 2> defined{};
  OutcomeOrientation orientation = OutcomeOrientation::survival;
  double gamma_hat = 0.0;
  std::size_t total = 0;
};

OutcomeRateTable outcome_rates(const ResponseScoreTable& table, const Cohort& cohort,
                               const OutcomeCriterion& criterion,
                               OutcomeOrientation orientation = OutcomeOrientation::survival);

// ---------------------------------------------------------------------------
// Pipeline

struct PipelineConfig {
  double cutoff = 0.0;
  MatchOptions matching;
  OutcomeCriterion criterion;
  OutcomeOrientation orientation = OutcomeOrientation::survival;
  double phi = 1.0;
  double disutility_f = 1.0;
  double w0 = 0.0;
  double w1 = 0.0;
  IterationOptions fit_options;
  int histogram_bins = 40;
};

struct BalanceRow {
  std::size_t covariate = 0;
  double smd_before = 0.0;
  double smd_after = 0.0;
};

struct ScoreSummary {
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double positive_share = 0.0;
};

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t treated = 0;
  std::size_t control = 0;
};

struct PipelineDiagnostics {
  std::size_t cohort_size = 0;
  std::size_t treated = 0;
  std::size_t controls = 0;
  std::size_t matched_pairs = 0;
  std::size_t dropped_treated = 0;
  PropensityModel propensity;
  std::vector<BalanceRow> balance;
  CoxFit control_fit;
  CoxFit treated_fit;
  ScoreSummary score_summary;
  std::vector<HistogramBin> histogram;
  std::vector<std::string> warnings;
};

struct PipelineResult {
  ModelParams params;
  OutcomeRateTable rates;
  ResponseScoreTable scores;
  PipelineDiagnostics diagnostics;
};

/// propensity -> matching -> two Cox fits -> response scores -> outcome rates.
/// Errors from a stage are rethrown with the same kind and a "<stage>: " prefix.
/// Estimates that break the model assumptions are returned with warnings.
PipelineResult run_pipeline(const Cohort& cohort, const PipelineConfig& config = {});

ScoreSummary summarize_scores(std::span<const double> scores);
std::vector<HistogramBin> score_histogram(const ResponseScoreTable& table, const Cohort& cohort,
                                          int bins);

std::string diagnostics_to_json(const PipelineResult& result, int indent = 2);
/// `bin_lo,bin_hi,treated,control`
std::string histogram_to_csv(std::span<const HistogramBin> bins);

}  // namespace eolpay
