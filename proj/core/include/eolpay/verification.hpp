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
#include <string>
#include <vector>

#include "eolpay/domain.hpp"

namespace eolpay {

struct OracleTolerances {
  double value = 1e-8;
  double segment = 1e-8;
  double closed_form = 1e-8;
  double kkt = 1e-8;
};

/// Closed-form solver output compared against brute-force references for one parameter set.
struct OracleTrial {
  ModelParams params;
  /// LP optimum of the non-negative model minus g F.
  double nonneg_value_error = 0.0;
  /// Largest distance from an LP argmin vertex to the closed-form optimal segment.
  double nonneg_segment_distance = 0.0;
  /// Misclassified model: |LP optimum - closed form| and distance of the unique LP vertex
  /// from the closed-form contract.
  double misclassified_value_error = 0.0;
  double misclassified_vertex_distance = 0.0;
  bool misclassified_unique = false;
  /// Free payment: closed form vs. a direct 3x3 solve with p11 fixed.
  double free_payment_error = 0.0;
  /// Risk-averse KKT residual for g(x) = sqrt(x).
  double risk_averse_kkt = 0.0;
  bool agrees = false;
};

OracleTrial run_oracle_trial(const ModelParams& params, const OracleTolerances& tol = {});

struct OracleReport {
  std::size_t trials = 0;
  std::size_t agreements = 0;
  double worst_nonneg_value_error = 0.0;
  double worst_nonneg_segment_distance = 0.0;
  double worst_misclassified_value_error = 0.0;
  double worst_free_payment_error = 0.0;
  double worst_risk_averse_kkt = 0.0;
  std::vector<OracleTrial> disagreements;
};

/// Draws `trials` random valid parameter sets (with misclassification rates) and
/// runs run_oracle_trial on each.
OracleReport run_oracle_checks(std::size_t trials, std::uint64_t seed,
                               const OracleTolerances& tol = {});

}  // namespace eolpay
