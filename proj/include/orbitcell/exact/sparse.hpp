#pragma once

#include "orbitcell/exact/int_matrix.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace orbitcell {

/// Sorted (index, value) pairs with no zero values.
using SparseVec = std::vector<std::pair<std::uint32_t, Integer>>;

/// a + f * b
inline SparseVec axpy(const SparseVec &a, const Integer &f, const SparseVec &b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, f * b[j].second);
      ++j;
    } else {
      Integer v = a[i].second + f * b[j].second;
      if (v != 0)
        out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

inline SparseVec to_sparse(const IntVector &v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0)
      s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return s;
}

inline IntVector to_dense(const SparseVec &v, std::size_t n) {
  IntVector d(n);
  for (const auto &[i, x] : v)
    d[i] = x;
  return d;
}

/// Accumulates a sparse vector from unordered contributions.
class SparseAccumulator {
public:
  void add(std::uint32_t i, const Integer &x) {
    if (x == 0)
      return;
    auto [it, fresh] = m_.try_emplace(i, x);
    if (!fresh) {
      it->second += x;
      if (it->second == 0)
        m_.erase(it);
    }
  }
  [[nodiscard]] SparseVec take() {
    SparseVec v(m_.begin(), m_.end());
    m_.clear();
    return v;
  }

private:
  std::map<std::uint32_t, Integer> m_;
};

/// Column-major sparse integer matrix.
class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static SparseMatrix from_dense(const IntMatrix &a) {
    SparseMatrix s(a.rows(), a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c)
      s.cols_[c] = to_sparse(a.column(c));
    return s;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_.size(); }
  [[nodiscard]] const SparseVec &col(std::size_t c) const { return cols_[c]; }
  void set_col(std::size_t c, SparseVec v) { cols_[c] = std::move(v); }

  [[nodiscard]] SparseVec apply(const SparseVec &v) const {
    SparseVec out;
    for (const auto &[i, x] : v)
      out = axpy(out, x, cols_[i]);
    return out;
  }

  [[nodiscard]] IntMatrix to_dense() const {
    IntMatrix d(rows_, cols_.size());
    for (std::size_t c = 0; c < cols_.size(); ++c)
      for (const auto &[r, x] : cols_[c])
        d(r, c) = x;
    return d;
  }

private:
  std::size_t rows_ = 0;
  std::vector<SparseVec> cols_;
};

} // namespace orbitcell
