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

#include "eolpay/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eolpay/contract_solvers.hpp"
#include "eolpay/lp_oracle.hpp"
#include "eolpay/sampling.hpp"

namespace eolpay {

OracleTrial run_oracle_trial(const ModelParams& params, const OracleTolerances& tol) {
  OracleTrial trial;
  trial.params = params;
  const NormalizedSystem sys = build_normalized_system(params);
  const double f = params.disutility_f;

  // Non-negative model: LP optimum and optimal face vs. the closed-form family.
  {
    const LpOptimum opt = solve_lp_or_throw(non_negative_lp(params, sys.c0));
    trial.nonneg_value_error = std::abs(opt.value - params.gamma * f);
    const NonNegativeSolution at0 = solve_non_negative(params, 0.0);
    const NonNegativeSolution at1 = solve_non_negative(params, 1.0);
    const std::vector<double> end0 = {at0.contract.p00, at0.contract.p01, at0.contract.p10,
                                      at0.contract.p11, at0.slack_v1,     at0.slack_v2};
    const std::vector<double> end1 = {at1.contract.p00, at1.contract.p01, at1.contract.p10,
                                      at1.contract.p11, at1.slack_v1,     at1.slack_v2};
    for (const BasicPoint& v : opt.optimal_vertices) {
      trial.nonneg_segment_distance =
          std::max(trial.nonneg_segment_distance, distance_to_segment(v.solution, end0, end1));
    }
  }

  // Misclassified objective: unique vertex at the t = 0 contract.
  {
    const MisclassifiedSolution closed = solve_non_negative_misclassified(params);
    const LpOptimum opt = solve_lp_or_throw(non_negative_lp(params, misclassified_objective(params)));
    trial.misclassified_value_error = std::abs(opt.value - closed.value);
    trial.misclassified_unique = opt.optimal_vertices.size() == 1;
    const std::vector<double> expected = {0.0, 0.0, 0.0, closed.contract.p11, closed.slack_v1,
                                          closed.slack_v2};
    trial.misclassified_vertex_distance = std::numeric_limits<double>::infinity();
    for (const BasicPoint& v : opt.optimal_vertices) {
      trial.misclassified_vertex_distance = std::min(
          trial.misclassified_vertex_distance, distance_to_segment(v.solution, expected, expected));
    }
  }

  // Free payment: direct solve of the binding system with p11 = F.
  {
    const FreePaymentSolution closed = solve_free_payment(params, f);
    Matrix a(3, 3);
    const Vec4* rows[3] = {&sys.c0, &sys.c1, &sys.c2};
    const double b[3] = {sys.b0, sys.b1, sys.b2};
    std::vector<double> rhs(3);
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) a(r, c) = (*rows[r])[c];
      rhs[r] = b[r] - (*rows[r])[3] * f;
    }
    const std::vector<double> direct = solve_linear_system(a, rhs);
    trial.free_payment_error = std::max({std::abs(direct[0] - closed.contract.p00),
                                         std::abs(direct[1] - closed.contract.p01),
                                         std::abs(direct[2] - closed.contract.p10)});
  }

  {
    const RiskAverseSolution ra = solve_risk_averse(params, UtilityTransform::power(0.5));
    const KktReport& k = ra.kkt;
    trial.risk_averse_kkt =
        std::max({k.stationarity, k.primal_infeasibility, k.dual_infeasibility, k.complementarity});
  }

  trial.agrees = trial.nonneg_value_error <= tol.value &&
                 trial.nonneg_segment_distance <= tol.segment &&
                 trial.misclassified_value_error <= tol.value &&
                 trial.misclassified_vertex_distance <= tol.segment &&
                 trial.free_payment_error <= tol.closed_form && trial.risk_averse_kkt <= tol.kkt;
  return trial;
}

OracleReport run_oracle_checks(std::size_t trials, std::uint64_t seed, const OracleTolerances& tol) {
  Rng rng(seed);
  SamplingOptions sampling;
  sampling.max_misclassification = 0.3;
  OracleReport report;
  report.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const ModelParams params = sample_valid_params(rng, sampling);
    const OracleTrial trial = run_oracle_trial(params, tol);
    report.worst_nonneg_value_error =
        std::max(report.worst_nonneg_value_error, trial.nonneg_value_error);
    report.worst_nonneg_segment_distance =
        std::max(report.worst_nonneg_segment_distance, trial.nonneg_segment_distance);
    report.worst_misclassified_value_error =
        std::max(report.worst_misclassified_value_error, trial.misclassified_value_error);
    report.worst_free_payment_error =
        std::max(report.worst_free_payment_error, trial.free_payment_error);
    report.worst_risk_averse_kkt = std::max(report.worst_risk_averse_kkt, trial.risk_averse_kkt);
    if (trial.agrees) {
      ++report.agreements;
    } else {
      report.disagreements.push_back(trial);
    }
  }
  return report;
}

}  // namespace eolpay
