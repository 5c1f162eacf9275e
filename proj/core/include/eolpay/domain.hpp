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

namespace eolpay {

using Vec4 = std::array<double, 4>;

double dot(const Vec4& a, const Vec4& b);

/// Probabilities must lie in [kProbabilityEpsilon, 1 - kProbabilityEpsilon].
inline constexpr double kProbabilityEpsilon = 1e-9;

/// Parameters of the payer/provider model.
///
/// pi(s, e) is the survival probability of a patient with responder status s
/// treated at expenditure level e. Payments are expressed in units of the
/// provider disutility, so `disutility_f` is 1 unless a caller rescales.
struct ModelParams {
  double pi00 = 0.5;
  double pi01 = 0.5;
  double pi10 = 0.5;
  double pi11 = 0.5;
  double gamma = 0.5;
  double phi = 1.0;
  double disutility_f = 1.0;
  double w0 = 0.0;  // Pr(observed S = 0 | true S = 1)
  double w1 = 0.0;  // Pr(observed S = 1 | true S = 0)

  double pi(int s, int e) const;

  /// Reference responder/expenditure survival table used by the examples and fixtures.
  static ModelParams table_one();
};

/// Throws Error(invalid_params) unless every probability is strictly inside (0,1),
/// phi and F are positive, w0/w1 lie in [0,1) and the outcome ordering holds:
/// pi01 >= pi00, pi11 >= pi10, pi10 >= pi00, pi11 >= pi01.
void validate(const ModelParams& params);

/// pi01 * pi10 != pi00 * pi11, compared with an absolute tolerance.
bool satisfies_assumption2(const ModelParams& params, double tolerance = 1e-12);

/// Payments p_ij for outcome Q = i and expenditure E = j, ordered [p00, p01, p10, p11].
struct Contract {
  double p00 = 0.0;
  double p01 = 0.0;
  double p10 = 0.0;
  double p11 = 0.0;

  double payment(int outcome, int expenditure) const;
  Vec4 as_vector() const { return {p00, p01, p10, p11}; }
  static Contract from_vector(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

  bool operator==(const Contract&) const = default;
};

/// Coefficients of the reduced problem: c0 . P is the expected payment under
/// matched care, c1 . P >= b1 and c2 . P >= b2 are the two incentive constraints.
struct NormalizedSystem {
  Vec4 c0{};
  Vec4 c1{};
  Vec4 c2{};
  double b0 = 0.0;
  double b1 = 1.0;
  double b2 = -1.0;
};

NormalizedSystem build_normalized_system(const ModelParams& params);

/// Expected-payment coefficients when the provider acts on an observed class
/// that is wrong with rates (w0, w1). Reduces to c0 when w0 = w1 = 0.
Vec4 misclassified_objective(const ModelParams& params);

struct SurvivalSummary {
  double s0 = 0.0;  // everyone at E = 0
  double s1 = 0.0;  // everyone at E = 1
};

SurvivalSummary survival_summary(const ModelParams& params);

enum class AssignmentRule { matched, pure_high, pure_low };

double expected_survival(const ModelParams& params, AssignmentRule rule);

/// E(P) under the given assignment rule. For `matched` this is c0 . P.
double expected_payment(const ModelParams& params, const Contract& contract, AssignmentRule rule);

/// E(Q) - phi * E(P).
double payer_utility(const ModelParams& params, const Contract& contract, AssignmentRule rule);

/// E(P | S = s, E = e) = (1 - pi_se) p_0e + pi_se p_1e.
double provider_expected_payment(const ModelParams& params, const Contract& contract, int s, int e);

/// Provider utility: expected payment minus F when e = 1.
double provider_utility(const ModelParams& params, const Contract& contract, int s, int e);

}  // namespace eolpay
