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

#include "eolpay/utility_transform.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "eolpay/error.hpp"

namespace eolpay {

UtilityTransform UtilityTransform::power(double exponent) {
  if (!(exponent > 0.0 && exponent <= 1.0)) {
    throw Error(ErrorKind::invalid_transform,
                fmt::format("power exponent {} must lie in (0, 1]", exponent));
  }
  const double inv = 1.0 / exponent;
  UtilityTransform g;
  g.name = exponent == 1.0 ? "identity" : fmt::format("power:{}", exponent);
  g.forward = [exponent](double x) { return std::pow(x, exponent); };
  g.inverse = [inv](double y) { return std::pow(y, inv); };
  g.inverse_derivative = [inv](double y) {
    if (inv == 1.0) return 1.0;
    return inv * std::pow(y, inv - 1.0);
  };
  return g;
}

UtilityTransform UtilityTransform::logarithmic() {
  UtilityTransform g;
  g.name = "log";
  g.forward = [](double x) { return std::log1p(x); };
  g.inverse = [](double y) { return std::expm1(y); };
  g.inverse_derivative = [](double y) { return std::exp(y); };
  return g;
}

UtilityTransform parse_transform(std::string_view spec) {
  if (spec == "log") return UtilityTransform::logarithmic();
  if (spec == "identity") return UtilityTransform::identity();
  constexpr std::string_view prefix = "power:";
  if (spec.starts_with(prefix)) {
    const std::string_view number = spec.substr(prefix.size());
    double exponent = 0.0;
    const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), exponent);
    if (ec != std::errc{} || end != number.data() + number.size()) {
      throw Error(ErrorKind::parse, fmt::format("bad exponent in transform \"{}\"", spec));
    }
    return UtilityTransform::power(exponent);
  }
  throw Error(ErrorKind::parse,
              fmt::format("unknown transform \"{}\" (expected power:<a>, log or identity)", spec));
}

void validate_transform(const UtilityTransform& g, double grid_max) {
  if (!g.forward || !g.inverse || !g.inverse_derivative) {
    throw Error(ErrorKind::invalid_transform, "transform is missing a function");
  }
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::invalid_transform, fmt::format("{}: {}", g.name, what));
  };
  constexpr int n = kTransformProbePoints;
  double values[n];
  for (int k = 0; k < n; ++k) {
    const double x = grid_max * k / (n - 1);
    values[k] = g.forward(x);
    if (!std::isfinite(values[k])) fail(fmt::format("g({}) is not finite", x));
    if (k > 0 && values[k] <= 0.0) fail(fmt::format("g({}) = {} is not positive", x, values[k]));
    if (k > 0 && values[k] <= values[k - 1]) fail(fmt::format("g is not increasing at {}", x));
    const double back = g.inverse(values[k]);
    if (!(std::abs(back - x) <= 1e-10 * (1.0 + x))) {
      fail(fmt::format("inverse(g({})) = {} does not round-trip", x, back));
    }
  }
  for (int k = 1; k + 1 < n; ++k) {
    const double second = values[k - 1] - 2.0 * values[k] + values[k + 1];
    if (second > 1e-12 * (1.0 + std::abs(values[k]))) {
      fail(fmt::format("g is not concave near {}", grid_max * k / (n - 1)));
    }
  }
  for (int k = 1; k + 1 < n; ++k) {
    const double y = values[k];
    const double h = 1e-6 * (1.0 + std::abs(y));
    const double fd = (g.inverse(y + h) - g.inverse(y - h)) / (2.0 * h);
    const double analytic = g.inverse_derivative(y);
    if (!(std::abs(fd - analytic) <= 1e-4 * (1.0 + std::abs(analytic)))) {
      fail(fmt::format("inverse_derivative({}) = {} disagrees with finite difference {}", y,
                       analytic, fd));
    }
  }
}

}  // namespace eolpay
