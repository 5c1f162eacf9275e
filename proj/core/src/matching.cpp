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

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>

#include <fmt/format.h>

#include "eolpay/error.hpp"
#include "eolpay/estimation.hpp"

namespace eolpay {

MatchResult match_one_to_one(const Cohort& cohort, std::span<const double> scores,
                             const MatchOptions& options) {
  if (scores.size() != cohort.size()) {
    throw Error(ErrorKind::dimension_mismatch,
                fmt::format("{} scores for {} records", scores.size(), cohort.size()));
  }
  if (options.caliper && !(*options.caliper >= 0.0)) {
    throw Error(ErrorKind::out_of_range, "caliper must be nonnegative");
  }

  std::vector<std::size_t> treated;
  std::set<std::pair<double, std::size_t>> controls;
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    if (cohort[i].treatment == 1) {
      treated.push_back(i);
    } else {
      controls.emplace(scores[i], i);
    }
  }
  if (!options.caliper && controls.size() < treated.size()) {
    throw Error(ErrorKind::insufficient_controls,
                fmt::format("{} treated but only {} controls", treated.size(), controls.size()));
  }
  std::stable_sort(treated.begin(), treated.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  MatchResult result;
  for (std::size_t t : treated) {
    if (controls.empty()) {
      result.dropped_treated.push_back(t);
      continue;
    }
    const double s = scores[t];
    auto above = controls.lower_bound({s, 0});
    auto best = controls.end();
    double best_distance = 0.0;
    if (above != controls.end()) {
      best = above;
      best_distance = above->first - s;
    }
    if (above != controls.begin()) {
      auto below = std::prev(above);
      const double d = s - below->first;
      if (best == controls.end() || d <= best_distance) {
        best = below;
        best_distance = d;
      }
    }
    if (options.caliper && best_distance > *options.caliper) {
      result.dropped_treated.push_back(t);
      continue;
    }
    result.pairs.emplace_back(t, best->second);
    controls.erase(best);
  }

  result.matched.reserve(2 * result.pairs.size());
  for (const auto& [t, c] : result.pairs) {
    result.matched.push_back(cohort[t]);
    result.matched.push_back(cohort[c]);
  }
  return result;
}

}  // namespace eolpay
