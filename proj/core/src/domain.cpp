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

#include "eolpay/domain.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "eolpay/error.hpp"

namespace eolpay {

double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double ModelParams::pi(int s, int e) const {
  if (s == 0) return e == 0 ? pi00 : pi01;
  return e == 0 ? pi10 : pi11;
}

ModelParams ModelParams::table_one() {
  ModelParams p;
  p.pi00 = 0.51;
  p.pi01 = 0.75;
  p.pi10 = 0.66;
  p.pi11 = 0.85;
  p.gamma = 0.44;
  return p;
}

namespace {

void require_probability(double value, const char* name) {
  if (!std::isfinite(value) || value < kProbabilityEpsilon || value > 1.0 - kProbabilityEpsilon) {
    throw Error(ErrorKind::invalid_params,
                fmt::format("{} = {} is not strictly inside (0, 1)", name, value));
  }
}

void require_ordered(double hi, double lo, const char* hi_name, const char* lo_name) {
  if (hi < lo) {
    throw Error(ErrorKind::invalid_params,
                fmt::format("ordering requires {} >= {} but {} < {}", hi_name, lo_name, hi, lo));
  }
}

}  // namespace

void validate(const ModelParams& params) {
  require_probability(params.pi00, "pi00");
  require_probability(params.pi01, "pi01");
  require_probability(params.pi10, "pi10");
  require_probability(params.pi11, "pi11");
  require_probability(params.gamma, "gamma");
  require_ordered(params.pi01, params.pi00, "pi01", "pi00");
  require_ordered(params.pi11, params.pi10, "pi11", "pi10");
  require_ordered(params.pi10, params.pi00, "pi10", "pi00");
  require_ordered(params.pi11, params.pi01, "pi11", "pi01");
  if (!std::isfinite(params.phi) || params.phi <= 0.0) {
    throw Error(ErrorKind::invalid_params, fmt::format("phi = {} must be positive", params.phi));
  }
  if (!std::isfinite(params.disutility_f) || params.disutility_f <= 0.0) {
    throw Error(ErrorKind::invalid_params,
                fmt::format("F = {} must be positive", params.disutility_f));
  }
  for (auto [w, name] : {std::pair{params.w0, "w0"}, std::pair{params.w1, "w1"}}) {
    if (!std::isfinite(w) || w < 0.0 || w >= 1.0) {
      throw Error(ErrorKind::invalid_params, fmt::format("{} = {} must lie in [0, 1)", name, w));
    }
  }
}

bool satisfies_assumption2(const ModelParams& params, double tolerance) {
  return std::abs(params.pi01 * params.pi10 - params.pi00 * params.pi11) > tolerance;
}

double Contract::payment(int outcome, int expenditure) const {
  if (outcome == 0) return expenditure == 0 ? p00 : p01;
  return expenditure == 0 ? p10 : p11;
}

NormalizedSystem build_normalized_system(const ModelParams& params) {
  validate(params);
  const double g = params.gamma;
  const double f = params.disutility_f;
  NormalizedSystem sys;
  sys.c0 = {(1 - g) * (1 - params.pi00), g * (1 - params.pi11), (1 - g) * params.pi00,
            g * params.pi11};
  sys.c1 = {params.pi10 - 1, 1 - params.pi11, -params.pi10, params.pi11};
  sys.c2 = {1 - params.pi00, params.pi01 - 1, params.pi00, -params.pi01};
  sys.b0 = 0.0;
  sys.b1 = f;
  sys.b2 = -f;
  return sys;
}

Vec4 misclassified_objective(const ModelParams& params) {
  validate(params);
  const double g = params.gamma;
  const double w0 = params.w0;
  const double w1 = params.w1;
  // True bad responders are observed as good with probability w1 and then
  // receive E = 1; true good responders are observed as bad with probability w0.
  return {(1 - w1) * (1 - g) * (1 - params.pi00) + w0 * g * (1 - params.pi10),
          w1 * (1 - g) * (1 - params.pi01) + (1 - w0) * g * (1 - params.pi11),
          (1 - w1) * (1 - g) * params.pi00 + w0 * g * params.pi10,
          w1 * (1 - g) * params.pi01 + (1 - w0) * g * params.pi11};
}

SurvivalSummary survival_summary(const ModelParams& params) {
  const double g = params.gamma;
  return {(1 - g) * params.pi00 + g * params.pi10, (1 - g) * params.pi01 + g * params.pi11};
}

double expected_survival(const ModelParams& params, AssignmentRule rule) {
  switch (rule) {
    case AssignmentRule::matched:
      return (1 - params.gamma) * params.pi00 + params.gamma * params.pi11;
    case AssignmentRule::pure_high: return survival_summary(params).s1;
    case AssignmentRule::pure_low: return survival_summary(params).s0;
  }
  return 0.0;
}

double expected_payment(const ModelParams& params, const Contract& contract,
                        AssignmentRule rule) {
  const double g = params.gamma;
  switch (rule) {
    case AssignmentRule::matched:
      return (1 - g) * provider_expected_payment(params, contract, 0, 0) +
             g * provider_expected_payment(params, contract, 1, 1);
    case AssignmentRule::pure_high:
      return (1 - g) * provider_expected_payment(params, contract, 0, 1) +
             g * provider_expected_payment(params, contract, 1, 1);
    case AssignmentRule::pure_low:
      return (1 - g) * provider_expected_payment(params, contract, 0, 0) +
             g * provider_expected_payment(params, contract, 1, 0);
  }
  return 0.0;
}

double payer_utility(const ModelParams& params, const Contract& contract, AssignmentRule rule) {
  return expected_survival(params, rule) - params.phi * expected_payment(params, contract, rule);
}

double provider_expected_payment(const ModelParams& params, const Contract& contract, int s,
                                 int e) {
  const double survive = params.pi(s, e);
  return (1 - survive) * contract.payment(0, e) + survive * contract.payment(1, e);
}

double provider_utility(const ModelParams& params, const Contract& contract, int s, int e) {
  return provider_expected_payment(params, contract, s, e) - (e == 1 ? params.disutility_f : 0.0);
}

}  // namespace eolpay
