// Copyright 2026 The anfcq Authors
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
#include <string>
#include <vector>

#include "anfcq/rational.hpp"

namespace anfcq {

// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RatMatrix identity(std::size_t n);
  // Builds a matrix from row vectors; every row must have `cols` entries.
  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const;
  RatVector col(std::size_t j) const;
  std::vector<RatVector> row_list() const;
  void append_row(const RatVector& r);
  void append_rows(const RatMatrix& m);

  RatMatrix transpose() const;
  RatVector operator*(const RatVector& x) const;
  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator+(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;
  bool is_symmetric() const;
  bool is_zero() const;

  // Columns [c0, c0+n) as a new matrix.
  RatMatrix col_block(std::size_t c0, std::size_t n) const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

// Rank by fraction-free (Bareiss) elimination on an integer-scaled copy.
std::size_t rank(const RatMatrix& m);
std::size_t rank(const std::vector<RatVector>& rows, std::size_t cols);

// Basis of {x : m x = 0}, one vector per free column of the reduced row echelon form.
std::vector<RatVector> nullspace(const RatMatrix& m);

// Reduced row echelon form with zero rows removed.
RatMatrix rref(const RatMatrix& m);

// Solves m x = b exactly; returns false when the system is inconsistent.
// Free variables are set to zero.
bool solve_linear(const RatMatrix& m, const RatVector& b, RatVector& x);

}  // namespace anfcq
