#pragma once

#include "orbitcell/exact/chain_complex.hpp"
#include "orbitcell/sheaf/sheaf.hpp"

#include <functional>
#include <map>
#include <tuple>

namespace orbitcell {

/// Basis element (p_0 < ... < p_n, e_g in G(p_0), e_f in F(p_n)).
struct KCell {
  Chain chain;
  std::uint32_t g = 0;
  std::uint32_t f = 0;

  [[nodiscard]] std::size_t degree() const { return chain.size() - 1; }
  friend auto operator<=>(const KCell &a, const KCell &b) {
    if (auto c = a.chain.size() <=> b.chain.size(); c != 0)
      return c;
    return std::tie(a.chain, a.g, a.f) <=> std::tie(b.chain, b.g, b.f);
  }
  friend bool operator==(const KCell &, const KCell &) = default;
};

/// Formal integral combination of cells.
using KChain = std::map<KCell, Integer>;

inline void add_to(KChain &c, const KCell &cell, const Integer &x) {
  if (x == 0)
    return;
  auto [it, fresh] = c.try_emplace(cell, x);
  if (!fresh) {
    it->second += x;
    if (it->second == 0)
      c.erase(it);
  }
}

inline KChain operator+(KChain a, const KChain &b) {
  for (const auto &[cell, x] : b)
    add_to(a, cell, x);
  return a;
}

inline KChain scaled(const KChain &a, const Integer &f) {
  KChain out;
  if (f == 0)
    return out;
  for (const auto &[cell, x] : a)
    out.emplace(cell, x * f);
  return out;
}

/// Boundary of a formal chain; G and F need rank(x) and map(x, y).
template <class GS, class FS>
KChain k_boundary(const KChain &c, const GS &g, const FS &f) {
  KChain out;
  for (const auto &[cell, x] : c) {
    const std::size_t n = cell.degree();
    if (n == 0)
      continue;
    const Chain &ch = cell.chain;
    {
      Chain face(ch.begin() + 1, ch.end());
      IntMatrix m = g.map(ch[0], ch[1]);
      for (std::size_t a = 0; a < m.rows(); ++a)
        add_to(out, KCell{face, static_cast<std::uint32_t>(a), cell.f},
               x * m(a, cell.g));
    }
    for (std::size_t k = 1; k < n; ++k) {
      Chain face = ch;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
      add_to(out, KCell{face, cell.g, cell.f}, k % 2 ? Integer(-x) : x);
    }
    {
      Chain face(ch.begin(), ch.end() - 1);
      IntMatrix m = f.map(ch[n - 1], ch[n]);
      const Integer s = n % 2 ? Integer(-x) : x;
      for (std::size_t b = 0; b < m.rows(); ++b)
        add_to(out, KCell{face, cell.g, static_cast<std::uint32_t>(b)},
               s * m(b, cell.f));
    }
  }
  return out;
}

/// Bar-type complex computing Tor^P(F, G).
class KComplex {
public:
  KComplex(const Copresheaf &g, const Presheaf &f,
           std::size_t oracle_limit = SIZE_MAX)
      : g_(&g), f_(&f) {
    const Poset &p = g.poset();
    if (&f.poset() != &p)
      throw InvalidInput("sheaves live on different posets");
    if (p.size() > oracle_limit)
      throw OracleTooLarge(std::to_string(p.size()) + " elements exceed the limit of " +
                           std::to_string(oracle_limit));
    Bits starts(p.size()), ends(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) {
      starts[x] = g.rank(x) > 0;
      ends[x] = f.rank(x) > 0;
    }
    auto chains = chains_between(p, starts, ends);
    cells_.resize(chains.size());
    index_.resize(chains.size());
    for (std::size_t n = 0; n < chains.size(); ++n)
      for (const auto &ch : chains[n])
        for (std::uint32_t a = 0; a < g.rank(ch.front()); ++a)
          for (std::uint32_t b = 0; b < f.rank(ch.back()); ++b) {
            index_[n].emplace(KCell{ch, a, b}, cells_[n].size());
            cells_[n].push_back(KCell{ch, a, b});
          }
    std::vector<std::size_t> dims;
    for (const auto &level : cells_)
      dims.push_back(level.size());
    complex_ = ChainComplex(dims);
    for (std::size_t n = 1; n < cells_.size(); ++n) {
      SparseMatrix d(dims[n - 1], dims[n]);
      for (std::size_t c = 0; c < dims[n]; ++c)
        d.set_col(c, to_vector(boundary(KChain{{cells_[n][c], 1}}), n - 1));
      complex_.set_boundary(n, std::move(d));
    }
  }

  [[nodiscard]] const ChainComplex &complex() const { return complex_; }
  [[nodiscard]] std::size_t degrees() const { return cells_.size(); }
  [[nodiscard]] const std::vector<KCell> &cells(std::size_t n) const {
    static const std::vector<KCell> none;
    return n < cells_.size() ? cells_[n] : none;
  }

  [[nodiscard]] KChain boundary(const KChain &c) const {
    return k_boundary(c, *g_, *f_);
  }

  /// Coordinates of a homogeneous chain of degree n.
  [[nodiscard]] SparseVec to_vector(const KChain &c, std::size_t n) const {
    SparseAccumulator acc;
    for (const auto &[cell, x] : c) {
      if (cell.degree() != n)
        throw InvalidInput("chain is not homogeneous of degree " +
                           std::to_string(n));
      if (n >= index_.size())
        throw InvalidInput("cell outside the complex");
      auto it = index_[n].find(cell);
      if (it == index_[n].end())
        throw InvalidInput("cell outside the complex");
      acc.add(static_cast<std::uint32_t>(it->second), x);
    }
    return acc.take();
  }

  [[nodiscard]] KChain from_vector(const SparseVec &v, std::size_t n) const {
    KChain c;
    for (const auto &[i, x] : v)
      c.emplace(cells_.at(n).at(i), x);
    return c;
  }

  [[nodiscard]] std::vector<AbelianGroup> tor() const { return homology(complex_); }

  [[nodiscard]] bool is_cycle(const KChain &c) const { return boundary(c).empty(); }

  /// Lattice spanned by the boundaries landing in degree n.
  [[nodiscard]] LatticeBasis boundaries(std::size_t n) const {
    LatticeBasis l;
    if (n + 1 < cells_.size()) {
      const auto &d = complex_.boundary(n + 1);
      for (std::size_t c = 0; c < d.cols(); ++c)
        l.insert(d.col(c));
    }
    return l;
  }

private:
  const Copresheaf *g_;
  const Presheaf *f_;
  std::vector<std::vector<KCell>> cells_;
  std::vector<std::map<KCell, std::size_t>> index_;
  ChainComplex complex_;
};

/// Image of a chain under (f, t, k): vertices through f, G-part through t,
/// F-part through k. Degenerate chains are dropped.
inline KChain push_forward(const KChain &c,
                           const std::function<std::size_t(std::size_t)> &f,
                           const std::function<IntMatrix(std::size_t)> &t,
                           const std::function<IntMatrix(std::size_t)> &k) {
  KChain out;
  for (const auto &[cell, x] : c) {
    Chain img;
    bool degenerate = false;
    for (auto v : cell.chain) {
      auto w = static_cast<std::uint32_t>(f(v));
      if (!img.empty() && img.back() == w) {
        degenerate = true;
        break;
      }
      img.push_back(w);
    }
    if (degenerate)
      continue;
    IntMatrix tm = t(cell.chain.front()), km = k(cell.chain.back());
    for (std::size_t a = 0; a < tm.rows(); ++a) {
      if (tm(a, cell.g) == 0)
        continue;
      for (std::size_t b = 0; b < km.rows(); ++b)
        add_to(out,
               KCell{img, static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)},
               x * tm(a, cell.g) * km(b, cell.f));
    }
  }
  return out;
}

/// Image under the pair of morphisms over the same poset map.
inline KChain induced_tor_map(const KChain &c, const CopresheafMorphism &t,
                              const PresheafMorphism &k) {
  t.validate();
  k.validate();
  if (t.f.image != k.f.image)
    throw InvalidInput("morphisms lie over different poset maps");
  return push_forward(
      c, [&](std::size_t x) { return t.f(x); },
      [&](std::size_t x) { return t.component[x]; },
      [&](std::size_t x) { return k.component[x]; });
}

} // namespace orbitcell
