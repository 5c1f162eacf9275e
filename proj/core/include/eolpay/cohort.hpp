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

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace eolpay {

struct PatientRecord {
  std::string id;
  std::vector<double> covariates;
  int treatment = 0;        // expenditure level e_i
  int event_time = 1;       // days until death (or censoring)
  double los = 1.0;         // ICU length of stay in days
  bool event_observed = true;
};

using Cohort = std::vector<PatientRecord>;

/// Covariate dimension shared by every record; throws Error(dimension_mismatch) if
/// the cohort is ragged and Error(insufficient_data) if it is empty.
std::size_t covariate_dimension(const Cohort& cohort);

/// Checks record invariants (uniform dimension, e and event in {0,1}, t > 0, los > 0,
/// finite covariates).
void validate_cohort(const Cohort& cohort);

/// CSV with header `id,e,t,los,event,z1,...,zp`. Every malformed line is a hard
/// Error(parse) naming `source` and the 1-based line number.
Cohort parse_cohort_csv(std::string_view text, std::string_view source = "<cohort>");
Cohort load_cohort_csv(const std::filesystem::path& path);
std::string cohort_to_csv(const Cohort& cohort);

}  // namespace eolpay
