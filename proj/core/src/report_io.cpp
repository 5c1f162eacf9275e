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

#include <charconv>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "eolpay/error.hpp"
#include "eolpay/io.hpp"
#include "eolpay/simulation.hpp"

namespace eolpay {

namespace {

constexpr std::string_view kCsvHeader = "policy,n,survival,payment,avg_ratio,marginal_ratio";

std::string optional_field(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : ""; }

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json();
}

nlohmann::json report_json(const PolicyReport& r) {
  return {{"policy", r.policy},
          {"n", r.n},
          {"survival", r.survival_rate},
          {"payment", r.mean_payment},
          {"avg_ratio", optional_json(r.avg_ratio)},
          {"marginal_ratio", optional_json(r.marginal_ratio)},
          {"ci95", {{"survival", r.survival_ci95}, {"payment", r.payment_ci95}}}};
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line) {
  T value{};
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw Error(ErrorKind::parse, fmt::format("report:{}: bad number \"{}\"", line, field));
  }
  return value;
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "json") return ReportFormat::json;
  if (text == "bars") return ReportFormat::bars;
  throw Error(ErrorKind::parse, fmt::format("unknown format \"{}\" (expected csv, json or bars)", text));
}

std::string reports_to_csv(std::span<const PolicyReport> reports) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const PolicyReport& r : reports) {
    out += fmt::format("{},{},{},{},{},{}\n", r.policy, r.n, r.survival_rate, r.mean_payment,
                       optional_field(r.avg_ratio), optional_field(r.marginal_ratio));
  }
  return out;
}

std::vector<PolicyReport> parse_reports_csv(std::string_view text) {
  std::vector<PolicyReport> out;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) {
        throw Error(ErrorKind::parse, fmt::format("report:{}: expected header \"{}\"", line_no, kCsvHeader));
      }
      header_seen = true;
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 6) {
      throw Error(ErrorKind::parse, fmt::format("report:{}: expected 6 fields, got {}", line_no, f.size()));
    }
    PolicyReport r;
    r.policy = std::string(f[0]);
    r.n = parse_number<std::size_t>(f[1], line_no);
    r.survival_rate = parse_number<double>(f[2], line_no);
    r.mean_payment = parse_number<double>(f[3], line_no);
    if (!f[4].empty()) r.avg_ratio = parse_number<double>(f[4], line_no);
    if (!f[5].empty()) r.marginal_ratio = parse_number<double>(f[5], line_no);
    out.push_back(std::move(r));
  }
  if (!header_seen) throw Error(ErrorKind::parse, "report: missing header");
  return out;
}

std::string reports_to_json(std::span<const PolicyReport> reports, int indent) {
  nlohmann::json doc = nlohmann::json::array();
  for (const PolicyReport& r : reports) doc.push_back(report_json(r));
  return doc.dump(indent);
}

std::string comparison_to_json(const PolicyComparison& comparison, int indent) {
  nlohmann::json reports = nlohmann::json::array();
  for (const PolicyReport& r : comparison.reports) reports.push_back(report_json(r));
  const nlohmann::json doc = {{"reports", reports},
                              {"ranking", comparison.ranking},
                              {"dominance",
                               {{"avg_ratio", comparison.avg_ratio_dominates},
                                {"marginal_ratio", comparison.marginal_ratio_dominates}}}};
  return doc.dump(indent);
}

std::string reports_to_bars(std::span<const PolicyReport> reports) {
  std::string out = "# index policy survival survival_ci95 payment payment_ci95\n";
  int index = 0;
  for (const PolicyReport& r : reports) {
    out += fmt::format("{} \"{}\" {} {} {} {}\n", index++, r.policy, r.survival_rate,
                       r.survival_ci95, r.mean_payment, r.payment_ci95);
  }
  return out;
}

std::string render_reports(std::span<const PolicyReport> reports, ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: return reports_to_csv(reports);
    case ReportFormat::json: return reports_to_json(reports) + "\n";
    case ReportFormat::bars: return reports_to_bars(reports);
  }
  return {};
}

void export_report(std::span<const PolicyReport> reports, ReportFormat format,
                   const std::filesystem::path& path) {
  write_text_file(path, render_reports(reports, format));
}

}  // namespace eolpay
