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

#include <functional>
#include <string>
#include <string_view>

namespace eolpay {

/// Concave provider utility g applied to payments, with its inverse and the
/// derivative of the inverse (needed by the KKT system).
struct UtilityTransform {
  std::string name;
  std::function<double(double)> forward;
  std::function<double(double)> inverse;
  std::function<double(double)> inverse_derivative;

  double operator()(double x) const { return forward(x); }

  /// g(x) = x^a, a in (0, 1].
  static UtilityTransform power(double exponent);
  /// g(x) = ln(1 + x).
  static UtilityTransform logarithmic();
  static UtilityTransform identity() { return power(1.0); }
};

/// Parses "power:<a>", "log" or "identity".
UtilityTransform parse_transform(std::string_view spec);

/// Number of probe points used by validate_transform.
inline constexpr int kTransformProbePoints = 64;

/// Runtime probes on a 64-point grid over [0, grid_max]: g(0) finite, g > 0 and
/// strictly increasing for x > 0, nonpositive second differences, inverse
/// round trip within 1e-10 and inverse_derivative consistent with finite
/// differences. Throws Error(invalid_transform) on the first failed probe.
void validate_transform(const UtilityTransform& g, double grid_max = 4.0);

}  // namespace eolpay
