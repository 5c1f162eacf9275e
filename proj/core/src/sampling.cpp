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

#include "eolpay/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace eolpay {

ModelParams sample_valid_params(Rng& rng, const SamplingOptions& options) {
  const double gap = options.min_gap;
  for (;;) {
    ModelParams p;
    p.pi00 = rng.uniform(options.pi_lo, options.pi_hi - 2 * gap);
    p.pi01 = rng.uniform(p.pi00 + gap, options.pi_hi - gap);
    p.pi10 = rng.uniform(p.pi00 + gap, options.pi_hi - gap);
    p.pi11 = rng.uniform(std::max(p.pi01, p.pi10) + gap, options.pi_hi);
    p.gamma = rng.uniform(options.gamma_lo, options.gamma_hi);
    if (options.max_misclassification > 0.0) {
      p.w0 = rng.uniform(0.0, options.max_misclassification);
      p.w1 = rng.uniform(0.0, options.max_misclassification);
    }
    if (std::abs(p.pi01 * p.pi10 - p.pi00 * p.pi11) >= options.assumption2_margin) return p;
  }
}

}  // namespace eolpay
