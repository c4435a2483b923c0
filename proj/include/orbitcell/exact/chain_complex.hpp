#pragma once

#include "orbitcell/exact/smith.hpp"
#include "orbitcell/exact/sparse.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace orbitcell {

/// Nonnegatively graded complex of free modules, boundary(n) : C_n -> C_{n-1}.
class ChainComplex {
public:
  ChainComplex() = default;
  explicit ChainComplex(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    for (std::size_t n = 0; n < dims_.size(); ++n)
      boundaries_.emplace_back(n ? dims_[n - 1] : 0, dims_[n]);
  }

  [[nodiscard]] std::size_t length() const { return dims_.size(); }
  [[nodiscard]] std::size_t dim(std::size_t n) const {
    return n < dims_.size() ? dims_[n] : 0;
  }
  [[nodiscard]] const std::vector<std::size_t> &dims() const { return dims_; }

  [[nodiscard]] const SparseMatrix &boundary(std::size_t n) const {
    return boundaries_.at(n);
  }
  void set_boundary(std::size_t n, SparseMatrix d) {
    if (n == 0 || n >= dims_.size())
      throw InvalidComplex("boundary degree out of range");
    if (d.rows() != dims_[n - 1] || d.cols() != dims_[n])
      throw InvalidComplex("boundary has wrong shape in degree " +
                           std::to_string(n));
    boundaries_[n] = std::move(d);
  }

  /// Throws InvalidComplex unless every composite of boundaries vanishes.
  void validate() const {
    for (std::size_t n = 2; n < dims_.size(); ++n)
      for (std::size_t c = 0; c < dims_[n]; ++c)
        if (!boundaries_[n - 1].apply(boundaries_[n].col(c)).empty())
          throw InvalidComplex("boundary squares to nonzero in degree " +
                               std::to_string(n));
  }

private:
  std::vector<std::size_t> dims_;
  std::vector<SparseMatrix> boundaries_;
};

/// Finitely generated abelian group Z^betti + sum Z/t.
struct AbelianGroup {
  std::size_t betti = 0;
  std::vector<Integer> torsion;

  [[nodiscard]] bool is_zero() const { return betti == 0 && torsion.empty(); }
  friend bool operator==(const AbelianGroup &, const AbelianGroup &) = default;

  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    if (betti) {
      os << "Z";
      if (betti > 1)
        os << "^" << betti;
      first = false;
    }
    for (const auto &t : torsion) {
      os << (first ? "" : " + ") << "Z/" << t.get_str();
      first = false;
    }
    return first ? "0" : os.str();
  }
};

/// Rank and nonunit invariant factors of a matrix.
struct RankProfile {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
};

/// Unit pivots are eliminated sparsely; the residue goes through dense Smith
/// form.
inline RankProfile rank_profile(const SparseMatrix &a) {
  const std::size_t ncols = a.cols();
  std::vector<std::map<std::uint32_t, Integer>> cols(ncols);
  std::vector<std::set<std::uint32_t>> rows(a.rows());
  for (std::size_t c = 0; c < ncols; ++c)
    for (const auto &[r, x] : a.col(c)) {
      cols[c].emplace(r, x);
      rows[r].insert(static_cast<std::uint32_t>(c));
    }
  RankProfile out;
  for (;;) {
    std::size_t best_cost = SIZE_MAX, pc = 0;
    std::uint32_t pr = 0;
    for (std::size_t c = 0; c < ncols && best_cost; ++c)
      for (const auto &[r, x] : cols[c]) {
        if (x != 1 && x != -1)
          continue;
        std::size_t cost = (cols[c].size() - 1) * (rows[r].size() - 1);
        if (cost < best_cost) {
          best_cost = cost;
          pc = c;
          pr = r;
          if (!cost)
            break;
        }
      }
    if (best_cost == SIZE_MAX)
      break;
    const Integer u = cols[pc].at(pr);
    std::vector<std::uint32_t> others(rows[pr].begin(), rows[pr].end());
    for (std::uint32_t c2 : others) {
      if (c2 == pc)
        continue;
      Integer f = cols[c2].at(pr) * u;
      for (const auto &[r2, w] : cols[pc]) {
        auto [it, fresh] = cols[c2].try_emplace(r2, 0);
        it->second -= f * w;
        if (it->second == 0) {
          cols[c2].erase(it);
          rows[r2].erase(c2);
        } else if (fresh) {
          rows[r2].insert(c2);
        }
      }
    }
    for (const auto &[r2, w] : cols[pc])
      rows[r2].erase(static_cast<std::uint32_t>(pc));
    cols[pc].clear();
    ++out.rank;
  }
  std::vector<std::size_t> live_cols;
  std::map<std::uint32_t, std::size_t> live_rows;
  for (std::size_t c = 0; c < ncols; ++c)
    if (!cols[c].empty()) {
      live_cols.push_back(c);
      for (const auto &[r, x] : cols[c])
        live_rows.emplace(r, 0);
    }
  if (live_cols.empty())
    return out;
  std::size_t k = 0;
  for (auto &[r, idx] : live_rows)
    idx = k++;
  IntMatrix rest(live_rows.size(), live_cols.size());
  for (std::size_t j = 0; j < live_cols.size(); ++j)
    for (const auto &[r, x] : cols[live_cols[j]])
      rest(live_rows[r], j) = x;
  for (const auto &f : invariant_factors(rest)) {
    ++out.rank;
    if (f != 1)
      out.torsion.push_back(f);
  }
  return out;
}

/// Integral homology H_0 .. H_{length-1}.
inline std::vector<AbelianGroup> homology(const ChainComplex &c) {
  c.validate();
  const std::size_t len = c.length();
  std::vector<RankProfile> prof(len + 1);
  for (std::size_t n = 1; n < len; ++n)
    prof[n] = rank_profile(c.boundary(n));
  std::vector<AbelianGroup> h(len);
  for (std::size_t n = 0; n < len; ++n) {
    h[n].betti = c.dim(n) - prof[n].rank - prof[n + 1].rank;
    h[n].torsion = prof[n + 1].torsion;
  }
  return h;
}

/// Rank over F_p.
inline std::size_t rank_mod_p(const SparseMatrix &a, std::uint64_t p) {
  std::vector<std::map<std::uint32_t, std::uint64_t>> cols(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (const auto &[r, x] : a.col(c)) {
      Integer m;
      mpz_fdiv_r_ui(m.get_mpz_t(), x.get_mpz_t(), p);
      if (m != 0)
        cols[c].emplace(r, m.get_ui());
    }
  auto inverse = [p](std::uint64_t x) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1)
        r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  // pivot row -> reduced column
  std::map<std::uint32_t, std::map<std::uint32_t, std::uint64_t>> pivots;
  std::size_t rank = 0;
  for (auto &col : cols) {
    while (!col.empty()) {
      auto [r, x] = *col.begin();
      auto it = pivots.find(r);
      if (it == pivots.end()) {
        std::uint64_t inv = inverse(x);
        for (auto &[i, y] : col)
          y = y * inv % p;
        pivots.emplace(r, std::move(col));
        ++rank;
        break;
      }
      for (const auto &[i, y] : it->second) {
        std::uint64_t v = (col[i] + p - x * y % p) % p;
        if (v)
          col[i] = v;
        else
          col.erase(i);
      }
    }
  }
  return rank;
}

/// Homology dimensions over F_p.
inline std::vector<std::size_t> homology_mod_p(const ChainComplex &c,
                                               std::uint64_t p) {
  const std::size_t len = c.length();
  std::vector<std::size_t> rk(len + 1, 0), h(len);
  for (std::size_t n = 1; n < len; ++n)
    rk[n] = rank_mod_p(c.boundary(n), p);
  for (std::size_t n = 0; n < len; ++n)
    h[n] = c.dim(n) - rk[n] - rk[n + 1];
  return h;
}

/// Incrementally built echelon basis of a sublattice of Z^n.
class LatticeBasis {
public:
  /// Returns true when the rank grew.
  bool insert(SparseVec v) {
    while (!v.empty()) {
      const auto p = v.front().first;
      auto it = basis_.find(p);
      if (it == basis_.end()) {
        if (v.front().second < 0)
          for (auto &e : v)
            e.second = -e.second;
        basis_.emplace(p, std::move(v));
        return true;
      }
      const Integer &bp = it->second.front().second;
      const Integer &vp = v.front().second;
      if (vp % bp == 0) {
        v = axpy(v, -(vp / bp), it->second);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), bp.get_mpz_t(),
                 vp.get_mpz_t());
      SparseVec w = axpy(axpy({}, s, it->second), t, v);
      SparseVec rest = axpy(axpy({}, Integer(bp / g), v), Integer(-(vp / g)),
                            it->second);
      it->second = std::move(w);
      v = std::move(rest);
    }
    return false;
  }

  [[nodiscard]] bool contains(SparseVec v) const {
    while (!v.empty()) {
      auto it = basis_.find(v.front().first);
      if (it == basis_.end())
        return false;
      const Integer &bp = it->second.front().second;
      if (v.front().second % bp != 0)
        return false;
      v = axpy(v, -(v.front().second / bp), it->second);
    }
    return true;
  }

  [[nodiscard]] std::size_t rank() const { return basis_.size(); }

private:
  std::map<std::uint32_t, SparseVec> basis_;
};

} // namespace orbitcell
