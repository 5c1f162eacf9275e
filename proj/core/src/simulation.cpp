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

#include "eolpay/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include <fmt/format.h>

#include "eolpay/error.hpp"

namespace eolpay {

namespace {

constexpr double kZ95 = 1.959963984540054;

enum Stream : std::uint64_t { kResponder = 11, kClassification, kOutcome };

ResponderNoise effective_noise(const ModelParams& params, const Policy& policy) {
  const ResponderNoise noise = policy.noise.value_or(ResponderNoise{params.w0, params.w1});
  for (double w : {noise.w0, noise.w1}) {
    if (!(w >= 0.0 && w < 1.0)) {
      throw Error(ErrorKind::out_of_range, fmt::format("misclassification rate {} not in [0, 1)", w));
    }
  }
  return noise;
}

int expenditure(PolicyKind kind, int observed) {
  switch (kind) {
    case PolicyKind::matched_optimal: return observed;
    case PolicyKind::pure_high: return 1;
    case PolicyKind::pure_low: return 0;
  }
  return 0;
}

}  // namespace

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::matched_optimal: return "matched-optimal";
    case PolicyKind::pure_high: return "pure-high";
    case PolicyKind::pure_low: return "pure-low";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view text) {
  for (PolicyKind k : {PolicyKind::matched_optimal, PolicyKind::pure_high, PolicyKind::pure_low}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorKind::parse, fmt::format("unknown policy \"{}\"", text));
}

PolicyExpectation expected_outcome(const ModelParams& params, const Policy& policy) {
  validate(params);
  const ResponderNoise noise = effective_noise(params, policy);
  // joint[s][o] = Pr(S = s, observed = o)
  const double g = params.gamma;
  const double joint[2][2] = {{(1 - g) * (1 - noise.w1), (1 - g) * noise.w1},
                              {g * noise.w0, g * (1 - noise.w0)}};
  PolicyExpectation out;
  for (int s = 0; s < 2; ++s) {
    for (int o = 0; o < 2; ++o) {
      const int e = expenditure(policy.kind, o);
      const double pi = params.pi(s, e);
      out.survival += joint[s][o] * pi;
      out.payment += joint[s][o] * ((1 - pi) * policy.contract.payment(0, e) +
                                    pi * policy.contract.payment(1, e));
    }
  }
  return out;
}

PolicyReport simulate_policy(const ModelParams& params, const Policy& policy, std::size_t n,
                             std::uint64_t seed, std::optional<double> baseline_survival) {
  validate(params);
  if (n == 0) throw Error(ErrorKind::out_of_range, "n must be at least 1");
  const ResponderNoise noise = effective_noise(params, policy);

  const Rng master(seed);
  Rng responder = master.split(kResponder);
  Rng classification = master.split(kClassification);
  Rng outcome = master.split(kOutcome);

  const double pay[2][2] = {{policy.contract.p00, policy.contract.p01},
                            {policy.contract.p10, policy.contract.p11}};
  std::size_t survivors = 0;
  double total = 0.0;
  double total_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // One draw per stream per patient keeps arms aligned draw-for-draw.
    const int s = responder.uniform() < params.gamma ? 1 : 0;
    const double u = classification.uniform();
    const int observed = s == 1 ? (u < noise.w0 ? 0 : 1) : (u < noise.w1 ? 1 : 0);
    const int e = expenditure(policy.kind, observed);
    const int q = outcome.uniform() < params.pi(s, e) ? 1 : 0;
    survivors += static_cast<std::size_t>(q);
    const double p = pay[q][e];
    total += p;
    total_sq += p * p;
  }

  PolicyReport report;
  report.policy = std::string(to_string(policy.kind));
  report.n = n;
  const double dn = static_cast<double>(n);
  report.survival_rate = static_cast<double>(survivors) / dn;
  report.mean_payment = total / dn;
  report.survival_ci95 = kZ95 * std::sqrt(report.survival_rate * (1 - report.survival_rate) / dn);
  const double var =
      n > 1 ? std::max(0.0, (total_sq - dn * report.mean_payment * report.mean_payment) / (dn - 1))
            : 0.0;
  report.payment_ci95 = kZ95 * std::sqrt(var / dn);
  if (report.mean_payment > 0.0) {
    report.avg_ratio = report.survival_rate / report.mean_payment;
    if (baseline_survival) {
      report.marginal_ratio = (report.survival_rate - *baseline_survival) / report.mean_payment;
    }
  }
  return report;
}

PolicyComparison compare_policies(const ModelParams& params, const Contract& contract,
                                  std::size_t n, std::uint64_t seed,
                                  std::optional<ResponderNoise> noise) {
  validate(params);
  auto arm = [&](PolicyKind kind) {
    return std::async(std::launch::async, [&, kind] {
      return simulate_policy(params, Policy{kind, contract, noise}, n, seed);
    });
  };
  auto matched = arm(PolicyKind::matched_optimal);
  auto high = arm(PolicyKind::pure_high);
  auto low = arm(PolicyKind::pure_low);

  PolicyComparison out;
  out.reports = {matched.get(), high.get(), low.get()};
  const double baseline = out.reports[2].survival_rate;
  for (PolicyReport& r : out.reports) {
    if (r.mean_payment > 0.0) r.marginal_ratio = (r.survival_rate - baseline) / r.mean_payment;
  }

  std::vector<const PolicyReport*> order;
  for (const PolicyReport& r : out.reports) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const PolicyReport* a, const PolicyReport* b) {
    if (a->avg_ratio.has_value() != b->avg_ratio.has_value()) return a->avg_ratio.has_value();
    return a->avg_ratio && *a->avg_ratio > *b->avg_ratio;
  });
  for (const PolicyReport* r : order) out.ranking.push_back(r->policy);

  const PolicyReport& m = out.reports[0];
  const PolicyReport& h = out.reports[1];
  out.avg_ratio_dominates = m.avg_ratio && h.avg_ratio && *m.avg_ratio > *h.avg_ratio;
  out.marginal_ratio_dominates =
      m.marginal_ratio && h.marginal_ratio && *m.marginal_ratio > *h.marginal_ratio;
  return out;
}

}  // namespace eolpay
