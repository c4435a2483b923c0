#pragma once

#include "orbitcell/poset/poset.hpp"

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace testing_helpers {

using orbitcell::Poset;

/// Set partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<int>> set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int mx) {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (int v = 0; v <= mx + 1; ++v) {
      a[i] = v;
      rec(i + 1, std::max(mx, v));
    }
  };
  if (n == 0)
    return {{}};
  a[0] = 0;
  rec(1, 0);
  return out;
}

/// Partition lattice ordered by refinement, labels are growth strings.
inline std::shared_ptr<const Poset> partition_lattice(int n) {
  auto parts = set_partitions(n);
  std::vector<std::string> labels;
  for (const auto &p : parts) {
    std::string s;
    for (int v : p)
      s += static_cast<char>('a' + v);
    labels.push_back(s);
  }
  auto refines = [&](std::size_t x, std::size_t y) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (parts[x][i] == parts[x][j] && parts[y][i] != parts[y][j])
          return false;
    return true;
  };
  return std::make_shared<Poset>(Poset::from_order(labels, refines));
}

inline std::shared_ptr<const Poset> chain_poset(int len) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (int i = 0; i < len; ++i) {
    labels.push_back("x" + std::to_string(i));
    if (i)
      rel.emplace_back(i - 1, i);
  }
  return std::make_shared<Poset>(Poset::from_covers(labels, rel));
}

inline std::shared_ptr<const Poset> boolean_lattice(int n) {
  std::vector<std::string> labels;
  for (int s = 0; s < (1 << n); ++s) {
    std::string l;
    for (int i = 0; i < n; ++i)
      l += (s >> i & 1) ? '1' : '0';
    labels.push_back(l);
  }
  return std::make_shared<Poset>(Poset::from_order(
      labels, [](std::size_t a, std::size_t b) { return (a & ~b) == 0; }));
}

inline long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

} // namespace testing_helpers
