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

#include "eolpay/lp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "eolpay/error.hpp"

namespace eolpay {

namespace {

void check_shape(const StandardFormLP& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.eq_rhs.size();
  if (lp.eq_matrix.cols() != n || lp.eq_matrix.rows() != m) {
    throw Error(ErrorKind::dimension_mismatch,
                fmt::format("LP with {} variables and {} rows has a {}x{} constraint matrix", n, m,
                            lp.eq_matrix.rows(), lp.eq_matrix.cols()));
  }
  if (m > n) {
    throw Error(ErrorKind::dimension_mismatch,
                fmt::format("standard form needs m <= n, got m = {}, n = {}", m, n));
  }
  auto finite = [](double v) { return std::isfinite(v); };
  bool ok = std::all_of(lp.objective.begin(), lp.objective.end(), finite) &&
            std::all_of(lp.eq_rhs.begin(), lp.eq_rhs.end(), finite);
  for (std::size_t r = 0; ok && r < m; ++r) {
    const auto row = lp.eq_matrix.row(r);
    ok = std::all_of(row.begin(), row.end(), finite);
  }
  if (!ok) throw Error(ErrorKind::invalid_params, "LP data contains non-finite entries");
}

double binomial(std::size_t n, std::size_t k) {
  double result = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    result *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return result;
}

/// Drops redundant rows. Returns false when the system A x = b is inconsistent.
bool reduce_rows(const Matrix& a, const std::vector<double>& b, Matrix& a_out,
                 std::vector<double>& b_out, double tolerance) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix augmented(m, n + 1);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) augmented(r, c) = a(r, c);
    augmented(r, n) = b[r];
  }
  const RrefResult coefficient_rank = rref(a, tolerance);
  if (coefficient_rank.rank == m) {
    a_out = a;
    b_out = b;
    return true;
  }
  const RrefResult reduced = rref(augmented, tolerance);
  if (!reduced.pivot_columns.empty() && reduced.pivot_columns.back() == n) return false;
  a_out = Matrix(reduced.rank, n);
  b_out.assign(reduced.rank, 0.0);
  for (std::size_t r = 0; r < reduced.rank; ++r) {
    for (std::size_t c = 0; c < n; ++c) a_out(r, c) = reduced.reduced(r, c);
    b_out[r] = reduced.reduced(r, n);
  }
  return true;
}

bool same_point(const std::vector<double>& a, const std::vector<double>& b, double resolution) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > resolution * (1.0 + std::abs(a[i]))) return false;
  }
  return true;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<BasicPoint> enumerate_basic_points(const StandardFormLP& lp,
                                               const EnumerationOptions& options) {
  check_shape(lp);
  const std::size_t n = lp.objective.size();
  const double combos = binomial(n, lp.eq_rhs.size());
  if (combos > static_cast<double>(options.max_combinations)) {
    throw Error(ErrorKind::too_large,
                fmt::format("C({}, {}) = {:.0f} bases exceed the cap of {}", n, lp.eq_rhs.size(),
                            combos, options.max_combinations));
  }

  Matrix a;
  std::vector<double> b;
  if (!reduce_rows(lp.eq_matrix, lp.eq_rhs, a, b, options.pivot_tolerance)) return {};
  const std::size_t m = b.size();

  std::vector<BasicPoint> points;
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = i;

  do {
    const Matrix basis_matrix = a.select_columns(basis);
    std::vector<double> x_basic;
    std::vector<double> y;
    try {
      x_basic = m == 0 ? std::vector<double>{} : solve_linear_system(basis_matrix, b,
                                                                      options.pivot_tolerance);
      std::vector<double> c_basic(m);
      for (std::size_t i = 0; i < m; ++i) c_basic[i] = lp.objective[basis[i]];
      y = m == 0 ? std::vector<double>{}
                 : solve_linear_system(basis_matrix.transpose(), c_basic, options.pivot_tolerance);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::singular_matrix) continue;
      throw;
    }

    BasicPoint point;
    point.basis = basis;
    point.solution.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) point.solution[basis[i]] = x_basic[i];
    point.primal_feasible = std::all_of(x_basic.begin(), x_basic.end(), [&](double v) {
      return v >= -options.feasibility_tolerance;
    });
    point.dual_feasible = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
      double reduced_cost = lp.objective[j];
      for (std::size_t r = 0; r < m; ++r) reduced_cost -= a(r, j) * y[r];
      if (reduced_cost < -options.dual_tolerance) {
        point.dual_feasible = false;
        break;
      }
    }
    point.value = 0.0;
    for (std::size_t j = 0; j < n; ++j) point.value += lp.objective[j] * point.solution[j];

    auto existing = std::find_if(points.begin(), points.end(), [&](const BasicPoint& p) {
      return same_point(p.solution, point.solution, options.dedup_resolution);
    });
    if (existing == points.end()) {
      points.push_back(std::move(point));
    } else if (point.dual_feasible && !existing->dual_feasible) {
      existing->dual_feasible = true;
      existing->basis = point.basis;
    }
  } while (m > 0 && next_combination(basis, n));

  return points;
}

LpOptimum solve_lp(const StandardFormLP& lp, const EnumerationOptions& options) {
  const std::vector<BasicPoint> points = enumerate_basic_points(lp, options);
  LpOptimum result;
  double best = std::numeric_limits<double>::infinity();
  bool any_certified = false;
  for (const BasicPoint& p : points) {
    if (!p.primal_feasible) continue;
    best = std::min(best, p.value);
    any_certified = any_certified || p.dual_feasible;
  }
  if (!std::isfinite(best)) {
    result.status = LpStatus::infeasible;
    return result;
  }
  // A feasible bounded LP always has a basis that is primal and dual feasible.
  if (!any_certified) {
    result.status = LpStatus::unbounded;
    return result;
  }
  result.status = LpStatus::optimal;
  result.value = best;
  const double tol = 1e-10 * (1.0 + std::abs(best));
  for (const BasicPoint& p : points) {
    if (p.primal_feasible && p.value <= best + tol) result.optimal_vertices.push_back(p);
  }
  return result;
}

LpOptimum solve_lp_or_throw(const StandardFormLP& lp, const EnumerationOptions& options) {
  LpOptimum result = solve_lp(lp, options);
  if (result.status == LpStatus::infeasible) {
    throw Error(ErrorKind::infeasible, "no primal feasible basic point");
  }
  if (result.status == LpStatus::unbounded) {
    throw Error(ErrorKind::unbounded, "no basis is both primal and dual feasible");
  }
  return result;
}

double distance_to_segment(const std::vector<double>& point, const std::vector<double>& a,
                           const std::vector<double>& b) {
  double ab2 = 0.0;
  double ap_ab = 0.0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double d = b[i] - a[i];
    ab2 += d * d;
    ap_ab += (point[i] - a[i]) * d;
  }
  const double t = ab2 > 0.0 ? std::clamp(ap_ab / ab2, 0.0, 1.0) : 0.0;
  double dist2 = 0.0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double q = a[i] + t * (b[i] - a[i]);
    dist2 += (point[i] - q) * (point[i] - q);
  }
  return std::sqrt(dist2);
}

}  // namespace eolpay
