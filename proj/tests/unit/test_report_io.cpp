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
#include <filesystem>

#include <json.hpp>

#include "eolpay/error.hpp"
#include "eolpay/io.hpp"
#include "eolpay/simulation.hpp"

using namespace eolpay;

namespace {

std::vector<PolicyReport> sample_reports() {
  const PolicyComparison cmp = compare_policies(ModelParams::table_one(), Contract{0, 0, 0, 1 / 0.85}, 20000, 5);
  return cmp.reports;
}

}  // namespace

TEST_CASE("csv header and empty ratio fields") {
  const std::string csv = reports_to_csv(sample_reports());
  CHECK(csv.rfind("policy,n,survival,payment,avg_ratio,marginal_ratio\n", 0) == 0);
  CHECK(csv.find("\npure-low,20000,") != std::string::npos);
  CHECK(csv.find(",0,,\n") != std::string::npos);  // pure-low: payment 0, both ratios undefined
}

TEST_CASE("empty report list") {
  CHECK(reports_to_csv({}) == "policy,n,survival,payment,avg_ratio,marginal_ratio\n");
  CHECK(parse_reports_csv(reports_to_csv({})).empty());
}

TEST_CASE("csv round trip") {
  const std::vector<PolicyReport> reports = sample_reports();
  const std::vector<PolicyReport> back = parse_reports_csv(reports_to_csv(reports));
  REQUIRE(back.size() == reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(back[i].policy == reports[i].policy);
    CHECK(back[i].n == reports[i].n);
    CHECK(std::abs(back[i].survival_rate - reports[i].survival_rate) <= 1e-12);
    CHECK(std::abs(back[i].mean_payment - reports[i].mean_payment) <= 1e-12);
    CHECK(back[i].avg_ratio.has_value() == reports[i].avg_ratio.has_value());
    if (reports[i].avg_ratio) CHECK(std::abs(*back[i].avg_ratio - *reports[i].avg_ratio) <= 1e-12);
    if (reports[i].marginal_ratio) CHECK(std::abs(*back[i].marginal_ratio - *reports[i].marginal_ratio) <= 1e-12);
  }
}

TEST_CASE("malformed report csv") {
  CHECK_THROWS_AS(parse_reports_csv("policy,n\n"), Error);
  CHECK_THROWS_AS(parse_reports_csv("policy,n,survival,payment,avg_ratio,marginal_ratio\nx,1,a,0,,\n"), Error);
}

TEST_CASE("json and bar-chart renderings") {
  const std::vector<PolicyReport> reports = sample_reports();
  const auto doc = nlohmann::json::parse(reports_to_json(reports));
  REQUIRE(doc.size() == 3);
  for (const char* key : {"policy", "n", "survival", "payment", "avg_ratio", "marginal_ratio", "ci95"}) {
    CHECK(doc[0].contains(key));
  }
  CHECK(doc[2]["avg_ratio"].is_null());
  const std::string bars = reports_to_bars(reports);
  CHECK(bars.rfind("# index policy", 0) == 0);
  CHECK(bars.find("2 \"pure-low\"") != std::string::npos);
}

TEST_CASE("export writes files and reports io errors") {
  const auto path = std::filesystem::temp_directory_path() / "eolpay_report_test.csv";
  export_report(sample_reports(), ReportFormat::csv, path);
  CHECK(parse_reports_csv(read_text_file(path)).size() == 3);
  std::filesystem::remove(path);
  try {
    export_report(sample_reports(), ReportFormat::json, "/nonexistent/dir/out.json");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}
