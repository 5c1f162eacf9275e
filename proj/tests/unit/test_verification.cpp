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

#include "eolpay/verification.hpp"

using namespace eolpay;

TEST_CASE("closed forms agree with the oracle") {
  const OracleReport report = run_oracle_checks(100, 7);
  CHECK(report.trials == 100);
  CHECK(report.agreements == 100);
  CHECK(report.worst_nonneg_value_error <= 1e-8);
  CHECK(report.worst_nonneg_segment_distance <= 1e-8);
  CHECK(report.worst_misclassified_value_error <= 1e-8);
  CHECK(report.worst_free_payment_error <= 1e-8);
  CHECK(report.worst_risk_averse_kkt <= 1e-8);
  CHECK(report.disagreements.empty());
}

TEST_CASE("single trial at table one") {
  ModelParams p = ModelParams::table_one();
  p.w0 = 0.1;
  p.w1 = 0.2;
  const OracleTrial t = run_oracle_trial(p);
  CHECK(t.agrees);
  CHECK(t.misclassified_unique);
}
