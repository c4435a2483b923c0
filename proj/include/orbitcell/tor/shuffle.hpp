#pragma once

#include "orbitcell/tor/k_complex.hpp"

namespace orbitcell {

/// A (p, q)-shuffle as a step sequence; true moves the first factor.
struct Shuffle {
  std::vector<bool> steps;
  int sign = 1;
};

/// All (p, q)-shuffles. The sign counts first-factor steps taken after
/// second-factor steps.
inline std::vector<Shuffle> shuffles(std::size_t p, std::size_t q) {
  std::vector<Shuffle> out;
  Shuffle cur;
  std::function<void(std::size_t, std::size_t, std::size_t)> rec =
      [&](std::size_t a, std::size_t b, std::size_t seconds) {
        if (a == p && b == q) {
          out.push_back(cur);
          return;
        }
        if (a < p) {
          cur.steps.push_back(true);
          int saved = cur.sign;
          if (seconds % 2)
            cur.sign = -cur.sign;
          rec(a + 1, b, seconds);
          cur.sign = saved;
          cur.steps.pop_back();
        }
        if (b < q) {
          cur.steps.push_back(false);
          rec(a, b + 1, seconds + 1);
          cur.steps.pop_back();
        }
      };
  rec(0, 0, 0);
  return out;
}

/// Sheaf on P x Q seen through its factors; element (x, y) is x * |Q| + y.
template <Variance V> struct ProductSheafView {
  const Sheaf<V> &a;
  const Sheaf<V> &b;

  [[nodiscard]] std::size_t m() const { return b.poset().size(); }
  [[nodiscard]] std::size_t rank(std::size_t x) const {
    return a.rank(x / m()) * b.rank(x % m());
  }
  [[nodiscard]] IntMatrix map(std::size_t x, std::size_t y) const {
    return IntMatrix::kronecker(a.map(x / m(), y / m()), b.map(x % m(), y % m()));
  }
};

/// Eilenberg-Zilber cross product of chains on P and on Q, landing in chains
/// on P x Q for the product sheaves. `h_rank` and `e_rank` are the ranks of the
/// second factor's sheaves, `q_size` is |Q|.
inline KChain cross_chain(const KChain &c1, const KChain &c2, std::size_t q_size,
                          const std::function<std::size_t(std::size_t)> &h_rank,
                          const std::function<std::size_t(std::size_t)> &e_rank) {
  KChain out;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Shuffle>> memo;
  for (const auto &[a, x] : c1)
    for (const auto &[b, y] : c2) {
      const std::size_t p = a.degree(), q = b.degree();
      auto it = memo.find({p, q});
      if (it == memo.end())
        it = memo.emplace(std::pair{p, q}, shuffles(p, q)).first;
      const auto g = static_cast<std::uint32_t>(a.g * h_rank(b.chain.front()) + b.g);
      const auto f = static_cast<std::uint32_t>(a.f * e_rank(b.chain.back()) + b.f);
      const Integer xy = x * y;
      for (const auto &sh : it->second) {
        Chain ch;
        std::size_t s = 0, t = 0;
        ch.push_back(static_cast<std::uint32_t>(a.chain[0] * q_size + b.chain[0]));
        for (bool first : sh.steps) {
          (first ? s : t) += 1;
          ch.push_back(static_cast<std::uint32_t>(a.chain[s] * q_size + b.chain[t]));
        }
        add_to(out, KCell{std::move(ch), g, f}, sh.sign > 0 ? xy : Integer(-xy));
      }
    }
  return out;
}

/// Cross product for rank-one sheaves on both factors.
inline KChain cross_chain(const KChain &c1, const KChain &c2, std::size_t q_size) {
  auto one = [](std::size_t) { return std::size_t{1}; };
  return cross_chain(c1, c2, q_size, one, one);
}

} // namespace orbitcell
