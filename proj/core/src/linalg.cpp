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

#include "eolpay/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <fmt/format.h>

#include "eolpay/error.hpp"

namespace eolpay {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::dimension_mismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_,
                   data_.begin() + b * cols_);
}

Matrix Matrix::select_columns(std::span<const std::size_t> indices) const {
  Matrix out(rows_, indices.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < indices.size(); ++k) out(r, k) = (*this)(r, indices[k]);
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

std::vector<double> multiply(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) throw Error(ErrorKind::dimension_mismatch, "matrix-vector product");
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::dimension_mismatch, "matrix product");
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double v = a(r, k);
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += v * b(k, c);
    }
  }
  return out;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

RrefResult rref(const Matrix& matrix, double tolerance) {
  RrefResult result;
  result.reduced = matrix;
  result.min_pivot = std::numeric_limits<double>::infinity();
  Matrix& a = result.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t best = row;
    for (std::size_t r = row + 1; r < a.rows(); ++r) {
      if (std::abs(a(r, col)) > std::abs(a(best, col))) best = r;
    }
    const double pivot = a(best, col);
    if (std::abs(pivot) <= tolerance) {
      for (std::size_t r = row; r < a.rows(); ++r) a(r, col) = 0.0;
      continue;
    }
    result.min_pivot = std::min(result.min_pivot, std::abs(pivot));
    a.swap_rows(row, best);
    for (std::size_t c = 0; c < a.cols(); ++c) a(row, c) /= pivot;
    a(row, col) = 1.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row) continue;
      const double factor = a(r, col);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) -= factor * a(row, c);
      a(r, col) = 0.0;
    }
    result.pivot_columns.push_back(col);
    ++row;
  }
  // Flush round-off so that rref(rref(A)) == rref(A).
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (std::abs(a(r, c)) <= tolerance) a(r, c) = 0.0;
    }
  }
  result.rank = row;
  if (result.rank == 0) result.min_pivot = 0.0;
  result.ill_conditioned = result.rank > 0 && result.min_pivot < kIllConditionedPivot;
  return result;
}

namespace {

struct LuFactors {
  Matrix lu;
  std::vector<std::size_t> perm;
};

LuFactors factor(const Matrix& a, double pivot_tolerance) {
  LuFactors f{a, {}};
  const std::size_t n = a.rows();
  f.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  Matrix& lu = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(lu(r, k)) > std::abs(lu(best, k))) best = r;
    }
    if (std::abs(lu(best, k)) < pivot_tolerance) {
      throw Error(ErrorKind::singular_matrix,
                  fmt::format("pivot {:.3e} in column {} below tolerance {:.1e}", lu(best, k), k,
                              pivot_tolerance));
    }
    lu.swap_rows(k, best);
    std::swap(f.perm[k], f.perm[best]);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double factor = lu(r, k) / lu(k, k);
      lu(r, k) = factor;
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= factor * lu(k, c);
    }
  }
  return f;
}

std::vector<double> substitute(const LuFactors& f, std::span<const double> b) {
  const std::size_t n = f.lu.rows();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = b[f.perm[i]];
    for (std::size_t c = 0; c < i; ++c) acc -= f.lu(i, c) * x[c];
    x[i] = acc;
  }
  for (std::size_t i = n; i-- > 0;) {
    double acc = x[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= f.lu(i, c) * x[c];
    x[i] = acc / f.lu(i, i);
  }
  return x;
}

}  // namespace

std::vector<double> solve_linear_system(const Matrix& a, std::span<const double> b,
                                        double pivot_tolerance) {
  if (a.rows() != a.cols() || b.size() != a.rows()) {
    throw Error(ErrorKind::dimension_mismatch,
                fmt::format("expected square system, got {}x{} with rhs of {}", a.rows(), a.cols(),
                            b.size()));
  }
  const LuFactors f = factor(a, pivot_tolerance);
  std::vector<double> x = substitute(f, b);

  auto residual = [&](const std::vector<double>& candidate) {
    std::vector<double> r = multiply(a, candidate);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return r;
  };
  const std::vector<double> r = residual(x);
  const std::vector<double> dx = substitute(f, r);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];

  const double res = max_abs(residual(x));
  const double bound = 1e-9 * (1.0 + max_abs(b));
  if (!(res <= bound)) {
    throw Error(ErrorKind::singular_matrix,
                fmt::format("residual {:.3e} exceeds {:.3e}; system is numerically singular", res,
                            bound));
  }
  return x;
}

}  // namespace eolpay
