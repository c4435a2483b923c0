#pragma once

#include "orbitcell/tor/shuffle.hpp"

namespace orbitcell {

enum class Mode { Complex, Real };

/// Cohomology of a complement assembled from local Tor groups.
/// In real mode every group is an F_2 vector space recorded as `betti`.
struct GMCohomology {
  std::map<int, AbelianGroup> degree;
  /// Tor_n(delta_x Z, delta^M Z) for each x, indexed [x][n].
  std::vector<std::vector<AbelianGroup>> local;

  [[nodiscard]] std::vector<std::size_t> poincare() const {
    std::vector<std::size_t> p;
    for (const auto &[i, g] : degree) {
      if (i < 0)
        continue;
      if (p.size() <= static_cast<std::size_t>(i))
        p.resize(i + 1, 0);
      p[i] = g.betti;
    }
    return p;
  }
};

/// Tor of the pair (delta_x Z, delta^M Z) over P.
inline std::vector<AbelianGroup> local_tor(std::shared_ptr<const Poset> p,
                                           std::size_t bottom, std::size_t x,
                                           Mode mode = Mode::Complex) {
  auto g = delta_at<Variance::Co>(p, bottom);
  auto f = delta_at<Variance::Contra>(p, x);
  KComplex k(g, f);
  if (mode == Mode::Complex)
    return k.tor();
  std::vector<AbelianGroup> out;
  for (auto d : homology_mod_p(k.complex(), 2))
    out.push_back(AbelianGroup{d, {}});
  return out;
}

/// H^i = sum_x Tor_{2 codim(x) - i} in complex mode, Tor_{codim(x) - i} over
/// F_2 in real mode.
inline GMCohomology gm_cohomology(std::shared_ptr<const Poset> p, std::size_t bottom,
                                  const std::vector<int> &codim, Mode mode,
                                  std::size_t oracle_limit = 100) {
  if (p->size() > oracle_limit)
    throw OracleTooLarge(std::to_string(p->size()) +
                         " elements exceed the limit of " +
                         std::to_string(oracle_limit));
  GMCohomology out;
  for (std::size_t x = 0; x < p->size(); ++x) {
    if (!p->leq(bottom, x)) {
      out.local.emplace_back();
      continue;
    }
    auto tor = local_tor(p, bottom, x, mode);
    for (std::size_t n = 0; n < tor.size(); ++n) {
      if (tor[n].is_zero())
        continue;
      int i = (mode == Mode::Complex ? 2 * codim[x] : codim[x]) - static_cast<int>(n);
      auto &g = out.degree[i];
      g.betti += tor[n].betti;
      g.torsion.insert(g.torsion.end(), tor[n].torsion.begin(), tor[n].torsion.end());
      std::sort(g.torsion.begin(), g.torsion.end());
    }
    out.local.push_back(std::move(tor));
  }
  return out;
}

/// Product of classes a in Tor(delta_x, delta^M) and b in Tor(delta_y,
/// delta^M), represented by K-cycles, landing in Tor(delta_{x v y}, delta^M).
/// Zero unless codimension is additive on the pair.
inline KChain oracle_cup(std::shared_ptr<const Poset> p, const JoinTable &join,
                         std::size_t bottom, const std::vector<int> &codim,
                         std::size_t x, const KChain &a, std::size_t y,
                         const KChain &b) {
  auto g = delta_at<Variance::Co>(p, bottom);
  auto fx = delta_at<Variance::Contra>(p, x);
  auto fy = delta_at<Variance::Contra>(p, y);
  if (!k_boundary(a, g, fx).empty() || !k_boundary(b, g, fy).empty())
    throw NotCycle("oracle_cup needs cycles");
  const std::size_t z = join(x, y);
  if (codim[x] + codim[y] != codim[z])
    return {};
  const std::size_t n = p->size();
  for (std::size_t x2 = p->down(x).find_first(); x2 != Bits::npos;
       x2 = p->down(x).find_next(x2))
    for (std::size_t y2 = p->down(y).find_first(); y2 != Bits::npos;
         y2 = p->down(y).find_next(y2))
      if ((x2 != x || y2 != y) && join(x2, y2) == z)
        throw PreconditionFailed("(x, y) is not minimal over its join");
  KChain cross = cross_chain(a, b, n);
  auto one = [](std::size_t) { return IntMatrix::identity(1); };
  return push_forward(
      cross, [&](std::size_t v) { return join(v / n, v % n); }, one, one);
}

} // namespace orbitcell
