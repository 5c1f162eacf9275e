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
#include <string>
#include <string_view>
#include <vector>

#include "eolpay/domain.hpp"
#include "eolpay/linalg.hpp"
#include "eolpay/lp_oracle.hpp"
#include "eolpay/utility_transform.hpp"

namespace eolpay {

enum class ModelKind { free_payment, non_negative, non_negative_misclassified, risk_averse };

/// "free", "nonneg", "nonneg-w", "risk-averse".
std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kKktTolerance = 1e-8;
/// The binding system is treated as solvable only when 1 - s1 exceeds this margin.
inline constexpr double kBindingMargin = 1e-5;

struct BindingCertificate {
  bool solvable = false;
  double s1 = 0.0;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  double min_pivot = 0.0;
  bool ill_conditioned = false;
  /// rref of the stacked [c0; c1; c2] matrix.
  Matrix reduced;
};

/// Whether c0.P = 0, c1.P = F, c2.P = -F has a solution: (1 - g) pi01 + g pi11 < 1,
/// certified by the rank of [c0; c1; c2].
BindingCertificate check_binding_solvability(const ModelParams& params);

struct FreePaymentSolution {
  Contract contract;
  double free_p11 = 0.0;
  /// d p00 / d p11, d p01 / d p11, d p10 / d p11.
  std::array<double, 3> sensitivity{};
  double expected_payment = 0.0;
};

/// Zero-expected-payment contract of the free-payment model with p11 chosen by the caller.
/// Throws Error(degenerate) if pi10 == pi00 or the binding system is not solvable.
FreePaymentSolution solve_free_payment(const ModelParams& params, double p11 = 1.0);

struct NonNegativeSolution {
  Contract contract;
  double t = 0.0;
  double slack_v1 = 0.0;
  double slack_v2 = 0.0;
  double optimal_value = 0.0;
};

/// Member t in [0, 1] of the optimal family
///   p00 = p10 = 0, p01 = t F, p11 = F (1 - t (1 - pi11)) / pi11,
/// whose expected payment is g F for every t.
NonNegativeSolution solve_non_negative(const ModelParams& params, double t = 0.0);

struct MisclassifiedSolution {
  Contract contract;
  double slack_v1 = 0.0;
  double slack_v2 = 0.0;
  /// Closed form g (1 - pi01 w1 / pi11 - w0) + pi01 w1 / pi11 (times F).
  double value = 0.0;
  /// Objective c0^w . P evaluated at the returned contract.
  double objective_at_contract = 0.0;
  /// Optimal value with perfect classification (g F).
  double perfect_value = 0.0;
};

/// Optimum of the non-negative model when responder classes are observed with
/// error rates (params.w0, params.w1).
MisclassifiedSolution solve_non_negative_misclassified(const ModelParams& params);

/// Share of misclassified mass coming from false positives; the perfect-classification
/// value is smaller than the misclassified value iff this exceeds gamma.
double false_positive_share(const ModelParams& params);

struct KktMultipliers {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Vec4 mu{};  // mu00, mu01, mu10, mu11
};

struct KktReport {
  double stationarity = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double complementarity = 0.0;

  bool passed(double tolerance = kKktTolerance) const {
    return stationarity <= tolerance && primal_infeasibility <= tolerance &&
           dual_infeasibility <= tolerance && complementarity <= tolerance;
  }
};

struct RiskAverseSolution {
  Vec4 w_contract{};
  Contract contract;
  KktMultipliers multipliers;
  double optimal_value = 0.0;
  KktReport kkt;
};

/// Optimal contract for a provider with concave utility g: W = [0, F, 0, F],
/// P = g^-1(W), with multipliers obtained from the stationarity system.
RiskAverseSolution solve_risk_averse(const ModelParams& params, const UtilityTransform& g);

/// KKT residuals of the transformed problem  min c0 . g^-1(W)  s.t. c1.W >= b1, c2.W >= b2, W >= 0.
KktReport kkt_residuals(const ModelParams& params, const UtilityTransform& g, const Vec4& w,
                        const KktMultipliers& multipliers);

/// Standard form of the non-negative model with slacks v1, v2:
///   min objective . P  s.t. c1.P - v1 = b1, c2.P - v2 = b2, (P, V) >= 0.
/// Variables are ordered [p00, p01, p10, p11, v1, v2].
StandardFormLP non_negative_lp(const ModelParams& params, const Vec4& objective);

struct ConstraintCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
  bool satisfied = false;
};

struct ContractCertificate {
  ModelKind model = ModelKind::non_negative;
  std::vector<ConstraintCheck> constraints;
  bool feasible = false;
  double expected_payment = 0.0;
  double optimal_value = 0.0;
  double optimality_gap = 0.0;
  bool near_optimal = false;
};

struct VerifyOptions {
  double feasibility_tolerance = kFeasibilityTolerance;
  /// Contracts whose objective is within this of the optimum (relative to max(1, |opt|))
  /// count as near-optimal.
  double near_optimal_tolerance = 5e-3;
};

/// Constraint-by-constraint report for `contract` under the selected model. For the
/// risk-averse model the incentive constraints are evaluated on g(P).
ContractCertificate verify_contract(const ModelParams& params, const Contract& contract,
                                    ModelKind model, const UtilityTransform& g,
                                    const VerifyOptions& options = {});
ContractCertificate verify_contract(const ModelParams& params, const Contract& contract,
                                    ModelKind model, const VerifyOptions& options = {});

}  // namespace eolpay
