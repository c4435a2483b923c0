#pragma once

#include "orbitcell/poset/poset.hpp"

#include <map>
#include <memory>
#include <utility>

namespace orbitcell {

/// Copresheaves carry extensions G(x) -> G(y); presheaves carry restrictions
/// F(y) -> F(x).
enum class Variance { Co, Contra };

using CoverKey = std::pair<std::size_t, std::size_t>;

/// Free finitely generated (co)presheaf given on covers.
template <Variance V> class Sheaf {
public:
  Sheaf(std::shared_ptr<const Poset> base, std::vector<std::size_t> ranks,
        std::map<CoverKey, IntMatrix> cover_maps)
      : base_(std::move(base)), ranks_(std::move(ranks)) {
    const Poset &p = *base_;
    if (ranks_.size() != p.size())
      throw InvalidInput("rank list has wrong length");
    for (auto &[key, m] : cover_maps) {
      if (!p.covers(key.first, key.second))
        throw InvalidInput(p.label(key.first) + " < " + p.label(key.second) +
                           " is not a cover");
      auto [r, c] = shape(key.first, key.second);
      if (m.rows() != r || m.cols() != c)
        throw InvalidInput("map on " + p.label(key.first) + " < " +
                           p.label(key.second) + " has the wrong shape");
      if (!m.is_zero())
        maps_.emplace(key, std::move(m));
    }
    validate_functorial();
  }

  [[nodiscard]] const Poset &poset() const { return *base_; }
  [[nodiscard]] const std::shared_ptr<const Poset> &poset_ptr() const {
    return base_;
  }
  [[nodiscard]] std::size_t rank(std::size_t x) const { return ranks_[x]; }
  [[nodiscard]] const std::vector<std::size_t> &ranks() const { return ranks_; }

  /// Matrix on the cover lo < hi.
  [[nodiscard]] IntMatrix cover_map(std::size_t lo, std::size_t hi) const {
    auto it = maps_.find({lo, hi});
    if (it != maps_.end())
      return it->second;
    auto [r, c] = shape(lo, hi);
    return IntMatrix(r, c);
  }

  /// Structure map for x <= y, composed along a saturated chain.
  [[nodiscard]] IntMatrix map(std::size_t x, std::size_t y) const {
    const Poset &p = *base_;
    if (!p.leq(x, y))
      throw NotComparable(p.label(x) + " is not below " + p.label(y));
    auto [r, c] = shape(x, y);
    if (ranks_[x] == 0 || ranks_[y] == 0)
      return IntMatrix(r, c);
    IntMatrix m = IntMatrix::identity(ranks_[x]);
    for (std::size_t cur = x; cur != y;) {
      std::size_t next = cur;
      for (std::size_t z : p.up_covers(cur))
        if (p.leq(z, y)) {
          next = z;
          break;
        }
      if constexpr (V == Variance::Co)
        m = cover_map(cur, next) * m;
      else
        m = m * cover_map(cur, next);
      cur = next;
    }
    return m;
  }

private:
  [[nodiscard]] std::pair<std::size_t, std::size_t> shape(std::size_t lo,
                                                          std::size_t hi) const {
    if constexpr (V == Variance::Co)
      return {ranks_[hi], ranks_[lo]};
    else
      return {ranks_[lo], ranks_[hi]};
  }

  void validate_functorial() const {
    const Poset &p = *base_;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (!ranks_[x])
        continue;
      std::map<std::size_t, IntMatrix> from_x;
      for (std::size_t y : p.linear_order()) {
        if (!p.leq(x, y))
          continue;
        if (y == x) {
          from_x.emplace(y, IntMatrix::identity(ranks_[x]));
          continue;
        }
        std::optional<IntMatrix> seen;
        for (std::size_t z : p.down_covers(y)) {
          if (!p.leq(x, z))
            continue;
          IntMatrix m;
          if constexpr (V == Variance::Co)
            m = cover_map(z, y) * from_x.at(z);
          else
            m = from_x.at(z) * cover_map(z, y);
          if (seen && !(*seen == m))
            throw Incompatible("structure maps from " + p.label(x) + " to " +
                               p.label(y) + " disagree");
          seen = std::move(m);
        }
        from_x.emplace(y, std::move(*seen));
      }
    }
  }

  std::shared_ptr<const Poset> base_;
  std::vector<std::size_t> ranks_;
  std::map<CoverKey, IntMatrix> maps_;
};

using Copresheaf = Sheaf<Variance::Co>;
using Presheaf = Sheaf<Variance::Contra>;

/// Elements of q as a bitset, checked for convexity.
inline void require_convex(const Poset &p, const Bits &q) {
  for (std::size_t x = q.find_first(); x != Bits::npos; x = q.find_next(x))
    for (std::size_t y = q.find_first(); y != Bits::npos; y = q.find_next(y))
      if (p.lt(x, y) && !(p.up(x) & p.down(y)).is_subset_of(q))
        throw NotConvex("interval [" + p.label(x) + ", " + p.label(y) +
                        "] leaves the support");
}

/// Constant sheaf of rank r on the convex set q, zero elsewhere.
template <Variance V>
Sheaf<V> delta_sheaf(std::shared_ptr<const Poset> p, const Bits &q,
                     std::size_t r = 1) {
  require_convex(*p, q);
  std::vector<std::size_t> ranks(p->size(), 0);
  std::map<CoverKey, IntMatrix> maps;
  for (std::size_t x = q.find_first(); x != Bits::npos; x = q.find_next(x)) {
    ranks[x] = r;
    for (std::size_t y : p->up_covers(x))
      if (q[y])
        maps.emplace(CoverKey{x, y}, IntMatrix::identity(r));
  }
  return Sheaf<V>(std::move(p), std::move(ranks), std::move(maps));
}

template <Variance V>
Sheaf<V> delta_at(std::shared_ptr<const Poset> p, std::size_t x,
                  std::size_t r = 1) {
  Bits q(p->size());
  q.set(x);
  return delta_sheaf<V>(std::move(p), q, r);
}

template <Variance V>
Sheaf<V> constant_sheaf(std::shared_ptr<const Poset> p, std::size_t r = 1) {
  Bits q(p->size());
  q.set();
  return delta_sheaf<V>(std::move(p), q, r);
}

/// f^* S on the source of f.
template <Variance V> Sheaf<V> pullback(const PosetMap &f, const Sheaf<V> &s) {
  f.validate();
  const Poset &p = *f.source;
  std::vector<std::size_t> ranks(p.size());
  std::map<CoverKey, IntMatrix> maps;
  for (std::size_t x = 0; x < p.size(); ++x)
    ranks[x] = s.rank(f(x));
  for (auto [lo, hi] : p.cover_pairs())
    maps.emplace(CoverKey{lo, hi}, s.map(f(lo), f(hi)));
  return Sheaf<V>(f.source, std::move(ranks), std::move(maps));
}

/// S x T on `pq`, which must be product_poset(S.poset(), T.poset()).
template <Variance V>
Sheaf<V> product_sheaf(std::shared_ptr<const Poset> pq, const Sheaf<V> &s,
                       const Sheaf<V> &t) {
  const Poset &p = s.poset(), &q = t.poset();
  const std::size_t m = q.size();
  if (pq->size() != p.size() * m)
    throw InvalidInput("product poset has the wrong size");
  std::vector<std::size_t> ranks(pq->size());
  std::map<CoverKey, IntMatrix> maps;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < m; ++y) {
      ranks[x * m + y] = s.rank(x) * t.rank(y);
      for (std::size_t x2 : p.up_covers(x))
        maps.emplace(CoverKey{x * m + y, x2 * m + y},
                     IntMatrix::kronecker(s.cover_map(x, x2),
                                          IntMatrix::identity(t.rank(y))));
      for (std::size_t y2 : q.up_covers(y))
        maps.emplace(CoverKey{x * m + y, x * m + y2},
                     IntMatrix::kronecker(IntMatrix::identity(s.rank(x)),
                                          t.cover_map(y, y2)));
    }
  return Sheaf<V>(std::move(pq), std::move(ranks), std::move(maps));
}

/// Morphism over a poset map: components source(x) -> target(f(x)).
template <Variance V> struct SheafMorphism {
  std::shared_ptr<const Sheaf<V>> source;
  std::shared_ptr<const Sheaf<V>> target;
  PosetMap f;
  std::vector<IntMatrix> component;

  /// Throws Incompatible with the first cover where the square fails.
  void validate() const {
    f.validate();
    const Poset &p = source->poset();
    if (component.size() != p.size())
      throw InvalidInput("morphism needs one component per element");
    for (std::size_t x = 0; x < p.size(); ++x)
      if (component[x].rows() != target->rank(f(x)) ||
          component[x].cols() != source->rank(x))
        throw InvalidInput("component at " + p.label(x) +
                           " has the wrong shape");
    for (auto [lo, hi] : p.cover_pairs()) {
      bool ok;
      if constexpr (V == Variance::Co)
        ok = component[hi] * source->cover_map(lo, hi) ==
             target->map(f(lo), f(hi)) * component[lo];
      else
        ok = component[lo] * source->cover_map(lo, hi) ==
             target->map(f(lo), f(hi)) * component[hi];
      if (!ok)
        throw Incompatible("square fails on cover " + p.label(lo) + " < " +
                           p.label(hi));
    }
  }
};

using CopresheafMorphism = SheafMorphism<Variance::Co>;
using PresheafMorphism = SheafMorphism<Variance::Contra>;

/// Identity component at x between delta sheaves at x and at y = f(x).
/// Presheaves need x minimal in the fiber of y, copresheaves maximal.
template <Variance V>
SheafMorphism<V> star_morphism(const PosetMap &f, std::size_t y, std::size_t x) {
  const Poset &p = *f.source;
  if (f(x) != y)
    throw PreconditionFailed(p.label(x) + " is not in the fiber");
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (z == x || f(z) != y)
      continue;
    if (V == Variance::Contra ? p.lt(z, x) : p.lt(x, z))
      throw NotExtremal(p.label(x) + " is not extremal in its fiber");
  }
  SheafMorphism<V> m;
  m.source = std::make_shared<Sheaf<V>>(delta_at<V>(f.source, x));
  m.target = std::make_shared<Sheaf<V>>(delta_at<V>(f.target, y));
  m.f = f;
  for (std::size_t z = 0; z < p.size(); ++z)
    m.component.emplace_back(m.target->rank(f(z)), z == x ? 1 : 0);
  m.component[x](0, 0) = 1;
  m.validate();
  return m;
}

} // namespace orbitcell
