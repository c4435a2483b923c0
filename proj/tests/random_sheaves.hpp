#pragma once

#include "orbitcell/sheaf/sheaf.hpp"

#include <random>

namespace testing_helpers {

using namespace orbitcell;

/// Random ranked poset: layers of random width, each element above a random
/// nonempty subset of the previous layer.
inline std::shared_ptr<const Poset> random_graded_poset(std::mt19937 &rng,
                                                        int layers, int width,
                                                        std::size_t max_size = 60) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  std::vector<int> rank;
  std::vector<std::size_t> prev;
  for (int l = 0; l < layers; ++l) {
    std::vector<std::size_t> cur;
    int w = 1 + static_cast<int>(rng() % width);
    for (int i = 0; i < w && labels.size() < max_size; ++i) {
      std::size_t id = labels.size();
      labels.push_back("v" + std::to_string(l) + "_" + std::to_string(i));
      rank.push_back(l);
      if (!prev.empty()) {
        bool any = false;
        for (std::size_t p : prev)
          if (rng() % 2) {
            rel.emplace_back(p, id);
            any = true;
          }
        if (!any)
          rel.emplace_back(prev[rng() % prev.size()], id);
      }
      cur.push_back(id);
    }
    if (cur.empty())
      break;
    prev = cur;
  }
  return std::make_shared<Poset>(Poset::from_covers(labels, rel, rank));
}

/// Sheaf on a chain of `len` elements with random cover matrices.
template <Variance V>
Sheaf<V> random_chain_sheaf(std::mt19937 &rng, std::shared_ptr<const Poset> chain,
                            int max_rank, int span) {
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i < chain->size(); ++i)
    ranks.push_back(rng() % (max_rank + 1));
  std::map<CoverKey, IntMatrix> maps;
  std::uniform_int_distribution<int> d(-span, span);
  for (auto [lo, hi] : chain->cover_pairs()) {
    std::size_t r = V == Variance::Co ? ranks[hi] : ranks[lo];
    std::size_t c = V == Variance::Co ? ranks[lo] : ranks[hi];
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = rng() % 3 ? (i == j ? 1 : 0) : d(rng);
    maps.emplace(CoverKey{lo, hi}, m);
  }
  return Sheaf<V>(chain, ranks, maps);
}

/// Pullback of a random chain sheaf along a random monotone map to the chain.
template <Variance V>
Sheaf<V> random_sheaf(std::mt19937 &rng, std::shared_ptr<const Poset> p,
                      int chain_len, int max_rank, int span) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (int i = 0; i < chain_len; ++i) {
    labels.push_back("c" + std::to_string(i));
    if (i)
      rel.emplace_back(i - 1, i);
  }
  auto chain = std::make_shared<Poset>(Poset::from_covers(labels, rel));
  PosetMap f{p, chain, std::vector<std::size_t>(p->size(), 0)};
  for (std::size_t x : p->linear_order()) {
    std::size_t lvl = 0;
    for (std::size_t y : p->down_covers(x))
      lvl = std::max(lvl, f.image[y]);
    f.image[x] = std::min<std::size_t>(chain_len - 1, lvl + rng() % 2);
  }
  return pullback(f, random_chain_sheaf<V>(rng, chain, max_rank, span));
}

} // namespace testing_helpers
