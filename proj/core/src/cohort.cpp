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

#include "eolpay/cohort.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "eolpay/error.hpp"
#include "eolpay/io.hpp"

namespace eolpay {

std::size_t covariate_dimension(const Cohort& cohort) {
  if (cohort.empty()) throw Error(ErrorKind::insufficient_data, "cohort is empty");
  const std::size_t p = cohort.front().covariates.size();
  for (const PatientRecord& r : cohort) {
    if (r.covariates.size() != p) {
      throw Error(ErrorKind::dimension_mismatch,
                  fmt::format("record {} has {} covariates, expected {}", r.id,
                              r.covariates.size(), p));
    }
  }
  return p;
}

void validate_cohort(const Cohort& cohort) {
  covariate_dimension(cohort);
  for (const PatientRecord& r : cohort) {
    if (r.treatment != 0 && r.treatment != 1) {
      throw Error(ErrorKind::invalid_params, fmt::format("record {}: e must be 0 or 1", r.id));
    }
    if (r.event_time <= 0) {
      throw Error(ErrorKind::invalid_params, fmt::format("record {}: t must be positive", r.id));
    }
    if (!(r.los > 0.0) || !std::isfinite(r.los)) {
      throw Error(ErrorKind::invalid_params, fmt::format("record {}: los must be positive", r.id));
    }
    for (double z : r.covariates) {
      if (!std::isfinite(z)) {
        throw Error(ErrorKind::invalid_params,
                    fmt::format("record {}: covariates must be finite", r.id));
      }
    }
  }
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

class LineParser {
 public:
  LineParser(std::string_view source, std::size_t line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::parse, fmt::format("{}:{}: {}", source_, line_, what));
  }

  double real(std::string_view field, std::string_view name) const {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || end != field.data() + field.size() || !std::isfinite(v)) {
      fail(fmt::format("column {}: \"{}\" is not a finite number", name, field));
    }
    return v;
  }

  long long integer(std::string_view field, std::string_view name) const {
    long long v = 0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || end != field.data() + field.size()) {
      fail(fmt::format("column {}: \"{}\" is not an integer", name, field));
    }
    return v;
  }

  int flag(std::string_view field, std::string_view name) const {
    const long long v = integer(field, name);
    if (v != 0 && v != 1) fail(fmt::format("column {}: expected 0 or 1, got {}", name, field));
    return static_cast<int>(v);
  }

 private:
  std::string_view source_;
  std::size_t line_;
};

}  // namespace

Cohort parse_cohort_csv(std::string_view text, std::string_view source) {
  Cohort cohort;
  std::size_t line_no = 0;
  std::size_t p = 0;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    const LineParser parser(source, line_no);
    const std::vector<std::string_view> fields = split_fields(line);

    if (!have_header) {
      constexpr std::string_view fixed[] = {"id", "e", "t", "los", "event"};
      if (fields.size() < 6) parser.fail("header must be id,e,t,los,event,z1..zp with p >= 1");
      for (std::size_t i = 0; i < 5; ++i) {
        if (trim(fields[i]) != fixed[i]) {
          parser.fail(fmt::format("header column {} must be \"{}\", got \"{}\"", i + 1, fixed[i],
                                  trim(fields[i])));
        }
      }
      p = fields.size() - 5;
      for (std::size_t k = 0; k < p; ++k) {
        if (trim(fields[5 + k]) != fmt::format("z{}", k + 1)) {
          parser.fail(fmt::format("header column {} must be \"z{}\"", 6 + k, k + 1));
        }
      }
      have_header = true;
      continue;
    }

    if (fields.size() != 5 + p) {
      parser.fail(fmt::format("expected {} fields, got {}", 5 + p, fields.size()));
    }
    PatientRecord r;
    r.id = std::string(trim(fields[0]));
    if (r.id.empty()) parser.fail("empty id");
    r.treatment = parser.flag(trim(fields[1]), "e");
    const long long t = parser.integer(trim(fields[2]), "t");
    if (t <= 0 || t > 1'000'000'000) parser.fail(fmt::format("column t: {} is not a positive day count", t));
    r.event_time = static_cast<int>(t);
    r.los = parser.real(trim(fields[3]), "los");
    if (!(r.los > 0.0)) parser.fail("column los: must be positive");
    r.event_observed = parser.flag(trim(fields[4]), "event") == 1;
    r.covariates.reserve(p);
    for (std::size_t k = 0; k < p; ++k) {
      r.covariates.push_back(parser.real(trim(fields[5 + k]), fmt::format("z{}", k + 1)));
    }
    cohort.push_back(std::move(r));
  }
  if (!have_header) {
    throw Error(ErrorKind::parse, fmt::format("{}: missing header line", source));
  }
  return cohort;
}

Cohort load_cohort_csv(const std::filesystem::path& path) {
  return parse_cohort_csv(read_text_file(path), path.string());
}

std::string cohort_to_csv(const Cohort& cohort) {
  const std::size_t p = cohort.empty() ? 1 : covariate_dimension(cohort);
  std::string out = "id,e,t,los,event";
  for (std::size_t k = 0; k < p; ++k) out += fmt::format(",z{}", k + 1);
  out += '\n';
  for (const PatientRecord& r : cohort) {
    out += fmt::format("{},{},{},{},{}", r.id, r.treatment, r.event_time, r.los,
                       r.event_observed ? 1 : 0);
    for (double z : r.covariates) out += fmt::format(",{}", z);
    out += '\n';
  }
  return out;
}

}  // namespace eolpay
