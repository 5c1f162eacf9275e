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
#include <initializer_list>
#include <span>
#include <vector>

namespace eolpay {

/// Dense row-major matrix of doubles. Only meant for the handful-of-rows
/// systems the oracle and the Newton solvers build.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b);

  /// Columns `indices` of this matrix, in the given order.
  Matrix select_columns(std::span<const std::size_t> indices) const;
  Matrix transpose() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

std::vector<double> multiply(const Matrix& a, std::span<const double> x);
Matrix multiply(const Matrix& a, const Matrix& b);
double max_abs(std::span<const double> v);

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  /// Smallest pivot magnitude encountered before row normalisation.
  double min_pivot = 0.0;
  bool ill_conditioned = false;
};

inline constexpr double kRrefPivotTolerance = 1e-12;
inline constexpr double kIllConditionedPivot = 1e-6;

/// Reduced row echelon form by Gauss-Jordan elimination with partial pivoting.
/// Entries whose magnitude falls to `tolerance` or below are treated as zero.
RrefResult rref(const Matrix& matrix, double tolerance = kRrefPivotTolerance);

inline constexpr double kSingularPivot = 1e-12;

/// Solves A x = b for square A with partially pivoted Gaussian elimination and
/// one step of iterative refinement. Throws Error(singular_matrix) when a pivot
/// falls below `pivot_tolerance` or the residual exceeds 1e-9 (1 + |b|_inf).
std::vector<double> solve_linear_system(const Matrix& a, std::span<const double> b,
                                        double pivot_tolerance = kSingularPivot);

}  // namespace eolpay
