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

#include "eolpay/domain.hpp"
#include "eolpay/random.hpp"

namespace eolpay {

struct SamplingOptions {
  /// Minimum gap enforced between ordered survival probabilities.
  double min_gap = 0.01;
  /// Minimum |pi01 pi10 - pi00 pi11|.
  double assumption2_margin = 1e-3;
  double pi_lo = 0.05;
  double pi_hi = 0.97;
  double gamma_lo = 0.05;
  double gamma_hi = 0.95;
  /// When positive, w0 and w1 are drawn uniformly from [0, max_misclassification).
  double max_misclassification = 0.0;
};

/// Random parameters with strictly ordered survival probabilities
/// (pi00 < pi01 < pi11, pi00 < pi10 < pi11) satisfying both model assumptions.
ModelParams sample_valid_params(Rng& rng, const SamplingOptions& options = {});

}  // namespace eolpay
