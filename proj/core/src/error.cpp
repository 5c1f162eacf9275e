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

#include "eolpay/error.hpp"

namespace eolpay {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_params: return "invalid-params";
    case ErrorKind::assumption2_violated: return "assumption-2-violated";
    case ErrorKind::degenerate: return "degenerate-denominator";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::invalid_transform: return "invalid-transform";
    case ErrorKind::singular_matrix: return "singular-matrix";
    case ErrorKind::too_large: return "too-large";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::unbounded: return "unbounded";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::collinear: return "collinear-covariates";
    case ErrorKind::separation: return "separation-detected";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::monotone_likelihood: return "monotone-likelihood";
    case ErrorKind::insufficient_controls: return "insufficient-controls";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::parse: return "parse-error";
    case ErrorKind::io: return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

}  // namespace eolpay
