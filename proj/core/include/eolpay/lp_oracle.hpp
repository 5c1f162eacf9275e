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
#include <optional>
#include <vector>

#include "eolpay/linalg.hpp"

namespace eolpay {

/// min objective . x  subject to  eq_matrix x = eq_rhs,  x >= 0.
struct StandardFormLP {
  std::vector<double> objective;
  Matrix eq_matrix;
  std::vector<double> eq_rhs;
};

struct BasicPoint {
  std::vector<std::size_t> basis;
  std::vector<double> solution;
  bool primal_feasible = false;
  /// True if some basis producing this point has nonnegative reduced costs.
  bool dual_feasible = false;
  double value = 0.0;
};

struct EnumerationOptions {
  std::size_t max_combinations = 10'000;
  double feasibility_tolerance = 1e-10;
  double dual_tolerance = 1e-10;
  double pivot_tolerance = kSingularPivot;
  /// Points closer than this (coordinate-wise) are the same vertex.
  double dedup_resolution = 1e-10;
};

/// Every basic solution of the LP: one per nonsingular m-column basis,
/// deduplicated by solution vector. Redundant equality rows are removed first;
/// an inconsistent system yields an empty list.
/// Throws Error(too_large) when C(n, m) exceeds `max_combinations`.
std::vector<BasicPoint> enumerate_basic_points(const StandardFormLP& lp,
                                               const EnumerationOptions& options = {});

enum class LpStatus { optimal, infeasible, unbounded };

struct LpOptimum {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  /// The optimal face is the convex hull of these vertices.
  std::vector<BasicPoint> optimal_vertices;
};

/// Solves the LP by exhaustive vertex enumeration.
LpOptimum solve_lp(const StandardFormLP& lp, const EnumerationOptions& options = {});

/// Like solve_lp but throws Error(infeasible / unbounded) instead of returning a status.
LpOptimum solve_lp_or_throw(const StandardFormLP& lp, const EnumerationOptions& options = {});

/// Euclidean distance from `point` to the segment [a, b].
double distance_to_segment(const std::vector<double>& point, const std::vector<double>& a,
                           const std::vector<double>& b);

}  // namespace eolpay
