#pragma once

#include "orbitcell/error.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace orbitcell {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major integer matrix.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto &row : init) {
      if (row.size() != cols_)
        throw InvalidInput("ragged matrix literal");
      for (long v : row)
        data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Integer &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Integer &operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto &v : data_)
      if (v != 0)
        return false;
    return true;
  }

  [[nodiscard]] IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        t(c, r) = (*this)(r, c);
    return t;
  }

  [[nodiscard]] IntVector apply(const IntVector &v) const {
    if (v.size() != cols_)
      throw InvalidInput("dimension mismatch in matrix-vector product");
    IntVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if ((*this)(r, c) != 0 && v[c] != 0)
          out[r] += (*this)(r, c) * v[c];
    return out;
  }

  [[nodiscard]] IntVector column(std::size_t c) const {
    IntVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      out[r] = (*this)(r, c);
    return out;
  }

  [[nodiscard]] IntMatrix block(std::size_t r0, std::size_t c0,
                                std::size_t nr, std::size_t nc) const {
    IntMatrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c)
        b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const IntMatrix &b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c)
        (*this)(r0 + r, c0 + c) = b(r, c);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t c = 0; c < cols_; ++c)
      std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t r = 0; r < rows_; ++r)
      std::swap((*this)(r, a), (*this)(r, b));
  }
  /// row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer &f) {
    if (f == 0)
      return;
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(src, c) != 0)
        (*this)(dst, c) += f * (*this)(src, c);
  }
  /// col[dst] += f * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer &f) {
    if (f == 0)
      return;
    for (std::size_t r = 0; r < rows_; ++r)
      if ((*this)(r, src) != 0)
        (*this)(r, dst) += f * (*this)(r, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c)
      (*this)(r, c) = -(*this)(r, c);
  }

  friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
    if (a.cols_ != b.rows_)
      throw InvalidInput("dimension mismatch in matrix product");
    IntMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer &x = a(i, k);
        if (x == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0)
            p(i, j) += x * b(k, j);
      }
    return p;
  }
  friend IntMatrix operator+(IntMatrix a, const IntMatrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw InvalidInput("dimension mismatch in matrix sum");
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      a.data_[i] += b.data_[i];
    return a;
  }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw InvalidInput("dimension mismatch in matrix difference");
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      a.data_[i] -= b.data_[i];
    return a;
  }
  friend bool operator==(const IntMatrix &a, const IntMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  static IntMatrix kronecker(const IntMatrix &a, const IntMatrix &b) {
    IntMatrix k(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        if (a(i, j) == 0)
          continue;
        for (std::size_t r = 0; r < b.rows_; ++r)
          for (std::size_t c = 0; c < b.cols_; ++c)
            k(i * b.rows_ + r, j * b.cols_ + c) = a(i, j) * b(r, c);
      }
    return k;
  }

  /// Matrix whose columns are the given vectors, all of length `rows`.
  static IntMatrix from_columns(const std::vector<IntVector> &cols,
                                std::size_t rows) {
    IntMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows)
        throw InvalidInput("column length mismatch");
      for (std::size_t r = 0; r < rows; ++r)
        m(r, c) = cols[c][r];
    }
    return m;
  }

  friend std::ostream &operator<<(std::ostream &os, const IntMatrix &m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << (r ? ",[" : "[");
      for (std::size_t c = 0; c < m.cols_; ++c)
        os << (c ? "," : "") << m(r, c).get_str();
      os << ']';
    }
    return os << ']';
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Determinant by fraction-free Bareiss elimination.
inline Integer determinant(IntMatrix a) {
  if (a.rows() != a.cols())
    throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0)
      ++p;
    if (p == n)
      return 0;
    if (p != k) {
      a.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(),
                     prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return n ? Integer(sign * a(n - 1, n - 1)) : Integer(1);
}

} // namespace orbitcell
