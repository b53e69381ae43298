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

#include "anfcq/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace anfcq {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
  RatMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

RatVector RatMatrix::row(std::size_t i) const {
  return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RatVector RatMatrix::col(std::size_t j) const {
  RatVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<RatVector> RatMatrix::row_list() const {
  std::vector<RatVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

void RatMatrix::append_row(const RatVector& r) {
  if (r.size() != cols_) throw std::invalid_argument("append_row: expected " + std::to_string(cols_) +
                                                     " entries, got " + std::to_string(r.size()));
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

void RatMatrix::append_rows(const RatMatrix& m) {
  if (m.cols_ != cols_) throw std::invalid_argument("append_rows: column mismatch");
  data_.insert(data_.end(), m.data_.begin(), m.data_.end());
  rows_ += m.rows_;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatVector RatMatrix::operator*(const RatVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  RatVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    mpq_class acc;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j).raw() * x[j].raw();
    y[i] = Rational(acc);
  }
  return y;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  RatMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: dimension mismatch");
  RatMatrix r(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
  return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference: dimension mismatch");
  RatMatrix r(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
  return r;
}

bool RatMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool RatMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

RatMatrix RatMatrix::col_block(std::size_t c0, std::size_t n) const {
  if (c0 + n > cols_) throw std::out_of_range("col_block out of range");
  RatMatrix r(rows_, n);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = (*this)(i, c0 + j);
  return r;
}

std::size_t rank(const RatMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  if (R == 0 || C == 0) return 0;
  // Clear denominators row by row, then run Bareiss elimination over the integers.
  std::vector<std::vector<mpz_class>> a(R, std::vector<mpz_class>(C));
  for (std::size_t i = 0; i < R; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < C; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).denominator().get_mpz_t());
    for (std::size_t j = 0; j < C; ++j) a[i][j] = m(i, j).numerator() * (l / m(i, j).denominator());
  }
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && a[p][c] == 0) ++p;
    if (p == R) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < R; ++i) {
      for (std::size_t j = c + 1; j < C; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::size_t rank(const std::vector<RatVector>& rows, std::size_t cols) {
  return rank(RatMatrix::from_rows(rows, cols));
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref_in_place(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Rational inv = Rational(1) / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RatMatrix rref(const RatMatrix& m) {
  RatMatrix a(m);
  auto piv = rref_in_place(a);
  RatMatrix out(0, m.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) out.append_row(a.row(i));
  return out;
}

std::vector<RatVector> nullspace(const RatMatrix& m) {
  const std::size_t n = m.cols();
  RatMatrix a(m);
  auto piv = rref_in_place(a);
  std::vector<bool> is_pivot(n, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve_linear(const RatMatrix& m, const RatVector& b, RatVector& x) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto piv = rref_in_place(aug);
  if (!piv.empty() && piv.back() == m.cols()) return false;
  x.assign(m.cols(), Rational(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, m.cols());
  return true;
}

}  // namespace anfcq
