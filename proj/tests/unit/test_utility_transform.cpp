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

#include <doctest.h>

#include <cmath>

#include "eolpay/error.hpp"
#include "eolpay/utility_transform.hpp"

using namespace eolpay;

TEST_CASE("built-in transforms pass the probes") {
  for (const char* spec : {"power:0.5", "power:0.9", "power:1", "log", "identity"}) {
    const UtilityTransform g = parse_transform(spec);
    CHECK_NOTHROW(validate_transform(g));
    for (double x = 0.0; x <= 4.0; x += 0.125) CHECK(std::abs(g.inverse(g(x)) - x) <= 1e-10);
  }
}

TEST_CASE("log transform inverse") {
  const UtilityTransform g = UtilityTransform::logarithmic();
  CHECK(g.inverse(1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
  CHECK(g.inverse_derivative(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
}

TEST_CASE("transform parsing errors") {
  for (const char* bad : {"power:0", "power:1.5", "power:x", "cubic", ""}) {
    try {
      parse_transform(bad);
      FAIL("expected failure for " << bad);
    } catch (const Error& e) {
      CHECK((e.kind() == ErrorKind::invalid_transform || e.kind() == ErrorKind::parse));
    }
  }
}

TEST_CASE("probes reject non-concave and non-increasing transforms") {
  const UtilityTransform convex{"cube", [](double x) { return x * x * x; }, [](double y) { return std::cbrt(y); },
                                [](double y) { return 1.0 / (3.0 * std::cbrt(y) * std::cbrt(y)); }};
  CHECK_THROWS_AS(validate_transform(convex), Error);
  const UtilityTransform wrong_inverse{"bad", [](double x) { return std::sqrt(x); }, [](double y) { return y; },
                                       [](double) { return 1.0; }};
  CHECK_THROWS_AS(validate_transform(wrong_inverse), Error);
}
