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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eolpay/domain.hpp"
#include "eolpay/random.hpp"

namespace eolpay {

enum class PolicyKind { matched_optimal, pure_high, pure_low };

std::string_view to_string(PolicyKind kind);
PolicyKind parse_policy_kind(std::string_view text);

/// Misclassification of the observed responder class.
/// w0 = Pr(observed 0 | S = 1), w1 = Pr(observed 1 | S = 0).
struct ResponderNoise {
  double w0 = 0.0;
  double w1 = 0.0;
};

struct Policy {
  PolicyKind kind = PolicyKind::matched_optimal;
  Contract contract;
  std::optional<ResponderNoise> noise;
};

struct PolicyReport {
  std::string policy;
  std::size_t n = 0;
  double survival_rate = 0.0;
  double mean_payment = 0.0;
  /// survival / payment; empty when nothing is paid.
  std::optional<double> avg_ratio;
  /// (survival - baseline survival) / payment; empty without a baseline or payment.
  std::optional<double> marginal_ratio;
  /// 95% confidence half-widths.
  double survival_ci95 = 0.0;
  double payment_ci95 = 0.0;

  bool operator==(const PolicyReport&) const = default;
};

/// Closed-form survival and mean payment of a policy (what the simulation estimates).
struct PolicyExpectation {
  double survival = 0.0;
  double payment = 0.0;
};
PolicyExpectation expected_outcome(const ModelParams& params, const Policy& policy);

/// Draws S ~ Bern(gamma), the observed class, E from the policy, Q ~ Bern(pi(S, E))
/// and pays p(Q, E). Each quantity uses its own stream split from `seed`, and
/// every arm starts from the same streams (common random numbers).
/// Errors: invalid_params, out_of_range (n == 0 or noise outside [0, 1)).
PolicyReport simulate_policy(const ModelParams& params, const Policy& policy, std::size_t n,
                             std::uint64_t seed = kDefaultSeed,
                             std::optional<double> baseline_survival = std::nullopt);

struct PolicyComparison {
  /// matched-optimal, pure-high, pure-low.
  std::vector<PolicyReport> reports;
  /// Policy names by avg_ratio, best first; policies without a ratio come last.
  std::vector<std::string> ranking;
  bool avg_ratio_dominates = false;       // matched-optimal beats pure-high on avg_ratio
  bool marginal_ratio_dominates = false;  // ... and on marginal_ratio
};

/// Runs the three policies in parallel on common random numbers. The pure-low
/// survival rate is the baseline for marginal ratios.
PolicyComparison compare_policies(const ModelParams& params, const Contract& contract,
                                  std::size_t n, std::uint64_t seed = kDefaultSeed,
                                  std::optional<ResponderNoise> noise = std::nullopt);

// ---------------------------------------------------------------------------
// Export

enum class ReportFormat { csv, json, bars };
ReportFormat parse_report_format(std::string_view text);

/// `policy,n,survival,payment,avg_ratio,marginal_ratio`; undefined ratios are empty fields.
std::string reports_to_csv(std::span<const PolicyReport> reports);
std::vector<PolicyReport> parse_reports_csv(std::string_view text);
std::string reports_to_json(std::span<const PolicyReport> reports, int indent = 2);
std::string comparison_to_json(const PolicyComparison& comparison, int indent = 2);
/// Whitespace-separated bar-chart table (index, policy, survival, payment, CIs) for gnuplot.
std::string reports_to_bars(std::span<const PolicyReport> reports);

std::string render_reports(std::span<const PolicyReport> reports, ReportFormat format);
/// Writes the rendering to `path`. Errors: io.
void export_report(std::span<const PolicyReport> reports, ReportFormat format,
                   const std::filesystem::path& path);

}  // namespace eolpay
