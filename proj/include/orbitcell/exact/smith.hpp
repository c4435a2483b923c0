#pragma once

#include "orbitcell/exact/int_matrix.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace orbitcell {

/// U * A * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ...
struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  std::size_t rank = 0;

  [[nodiscard]] std::vector<Integer> invariant_factors() const {
    std::vector<Integer> f;
    for (std::size_t i = 0; i < rank; ++i)
      f.push_back(d(i, i));
    return f;
  }
};

namespace detail {

inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline SmithForm smith_impl(const IntMatrix &a, bool track) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm s{track ? IntMatrix::identity(m) : IntMatrix(), a,
              track ? IntMatrix::identity(n) : IntMatrix(), 0};
  IntMatrix &d = s.d;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 &&
              (!best || abs(d(i, j)) < abs(d(best->first, best->second))))
            best = {i, j};
      if (!best)
        return s;
      d.swap_rows(t, best->first);
      d.swap_cols(t, best->second);
      if (track) {
        s.u.swap_rows(t, best->first);
        s.v.swap_cols(t, best->second);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0)
          continue;
        Integer q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        if (track)
          s.u.add_row(i, t, -q);
        clean = clean && d(i, t) == 0;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0)
          continue;
        Integer q = d(t, j) / d(t, t);
        d.add_col(j, t, -q);
        if (track)
          s.v.add_col(j, t, -q);
        clean = clean && d(t, j) == 0;
      }
      if (!clean)
        continue;
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < m && !bad; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (!bad)
        break;
      d.add_row(t, *bad, 1);
      if (track)
        s.u.add_row(t, *bad, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      if (track)
        s.u.negate_row(t);
    }
    s.rank = t + 1;
  }
  return s;
}

} // namespace detail

inline SmithForm smith_normal_form(const IntMatrix &a) {
  return detail::smith_impl(a, true);
}

/// Nonzero invariant factors, in divisibility order.
inline std::vector<Integer> invariant_factors(const IntMatrix &a) {
  return detail::smith_impl(a, false).invariant_factors();
}

/// True when A : Z^cols -> Z^rows is onto.
inline bool is_surjective(const IntMatrix &a) {
  if (a.rows() == 0)
    return true;
  auto f = invariant_factors(a);
  return f.size() == a.rows() &&
         std::all_of(f.begin(), f.end(), [](const Integer &x) { return x == 1; });
}

/// Row Hermite normal form of the lattice spanned by `rows`.
/// Pivots are positive and entries above a pivot lie in [0, pivot).
inline std::vector<IntVector> hermite_rows(std::vector<IntVector> rows,
                                           std::size_t width) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (!best || abs(rows[i][c]) < abs(rows[*best][c])))
          best = i;
      if (!best)
        break;
      std::swap(rows[r], rows[*best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0)
          continue;
        Integer q = rows[i][c] / rows[r][c];
        for (std::size_t j = c; j < width; ++j)
          rows[i][j] -= q * rows[r][j];
        clean = clean && rows[i][c] == 0;
      }
      if (clean)
        break;
    }
    if (rows[r][c] == 0)
      continue;
    if (rows[r][c] < 0)
      for (auto &x : rows[r])
        x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = detail::floor_div(rows[i][c], rows[r][c]);
      if (q != 0)
        for (std::size_t j = c; j < width; ++j)
          rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

/// Canonical basis of ker A, one vector per entry, in Hermite form.
inline std::vector<IntVector> kernel_basis(const IntMatrix &a) {
  auto s = smith_normal_form(a);
  std::vector<IntVector> ker;
  for (std::size_t j = s.rank; j < a.cols(); ++j)
    ker.push_back(s.v.column(j));
  return hermite_rows(std::move(ker), a.cols());
}

/// Factors A once and solves A x = b for many right hand sides.
class UniqueSolver {
public:
  explicit UniqueSolver(const IntMatrix &a)
      : rows_(a.rows()), cols_(a.cols()), s_(smith_normal_form(a)) {}

  [[nodiscard]] bool injective() const { return s_.rank == cols_; }

  [[nodiscard]] IntVector solve(const IntVector &b) const {
    if (b.size() != rows_)
      throw InvalidInput("right hand side has wrong length");
    if (!injective())
      throw NonUnique("matrix has a nontrivial kernel");
    IntVector ub = s_.u.apply(b);
    IntVector y(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i < s_.rank) {
        if (ub[i] % s_.d(i, i) != 0)
          throw NoIntegerSolution("not in the integer column span");
        y[i] = ub[i] / s_.d(i, i);
      } else if (ub[i] != 0) {
        throw NoIntegerSolution("not in the column span");
      }
    }
    return s_.v.apply(y);
  }

private:
  std::size_t rows_, cols_;
  SmithForm s_;
};

inline IntVector solve_unique(const IntMatrix &a, const IntVector &b) {
  return UniqueSolver(a).solve(b);
}

} // namespace orbitcell
