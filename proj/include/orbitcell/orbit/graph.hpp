#pragma once

#include "orbitcell/poset/poset.hpp"

#include <numeric>

namespace orbitcell {

/// Simple graph on vertices 0..n-1.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  Graph() = default;
  Graph(int vertices, std::vector<std::pair<int, int>> e) : n(vertices) {
    if (n < 0)
      throw InvalidInput("negative vertex count");
    for (auto [a, b] : e) {
      if (a < 0 || b < 0 || a >= n || b >= n)
        throw InvalidInput("edge endpoint out of range");
      if (a == b)
        throw InvalidInput("loops are not allowed");
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  static Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        e.emplace_back(i, j);
    return Graph(n, e);
  }
  static Graph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i)
      e.emplace_back(i, i + 1);
    return Graph(n, e);
  }

  [[nodiscard]] bool adjacent(int a, int b) const {
    return std::binary_search(edges.begin(), edges.end(),
                              std::pair{std::min(a, b), std::max(a, b)});
  }

  /// Connected components of the induced subgraph, each sorted, ordered by
  /// smallest vertex.
  [[nodiscard]] std::vector<std::vector<int>>
  components(const std::vector<int> &verts) const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(n, false), in(n, false);
    for (int v : verts)
      in[v] = true;
    std::vector<int> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    for (int s : sorted) {
      if (seen[s])
        continue;
      std::vector<int> comp, stack{s};
      seen[s] = true;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (int w = 0; w < n; ++w)
          if (in[w] && !seen[w] && adjacent(v, w)) {
            seen[w] = true;
            stack.push_back(w);
          }
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(comp);
    }
    return out;
  }

  [[nodiscard]] bool connected(const std::vector<int> &verts) const {
    return verts.size() <= 1 || components(verts).size() == 1;
  }
};

/// Set partition of 0..n-1; blocks sorted, ordered by smallest vertex.
struct SetPartition {
  std::vector<std::vector<int>> blocks;

  static SetPartition from_blocks(std::vector<std::vector<int>> b) {
    for (auto &x : b)
      std::sort(x.begin(), x.end());
    std::sort(b.begin(), b.end());
    return SetPartition{std::move(b)};
  }

  [[nodiscard]] int size() const {
    int s = 0;
    for (const auto &b : blocks)
      s += static_cast<int>(b.size());
    return s;
  }
  /// n minus the number of blocks.
  [[nodiscard]] int rank() const {
    return size() - static_cast<int>(blocks.size());
  }
  [[nodiscard]] std::vector<int> block_of() const {
    std::vector<int> out(size());
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (int v : blocks[i])
        out[v] = static_cast<int>(i);
    return out;
  }
  [[nodiscard]] bool refines(const SetPartition &other) const {
    auto bo = other.block_of();
    for (const auto &b : blocks)
      for (int v : b)
        if (bo[v] != bo[b.front()])
          return false;
    return true;
  }
  [[nodiscard]] std::string label() const {
    std::string s;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (i)
        s += '|';
      for (std::size_t j = 0; j < blocks[i].size(); ++j) {
        if (j)
          s += ',';
        s += std::to_string(blocks[i][j] + 1);
      }
    }
    return s;
  }
  friend bool operator==(const SetPartition &, const SetPartition &) = default;
  friend auto operator<=>(const SetPartition &, const SetPartition &) = default;
};

/// All set partitions of `verts` into Gamma-connected blocks, each block of
/// size at least `min_block`.
inline std::vector<SetPartition>
connected_partitions(const Graph &g, const std::vector<int> &verts, int min_block = 1) {
  std::vector<SetPartition> out;
  std::vector<std::vector<int>> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == verts.size()) {
      for (const auto &b : cur)
        if (static_cast<int>(b.size()) < min_block || !g.connected(b))
          return;
      out.push_back(SetPartition::from_blocks(cur));
      return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
      cur[b].push_back(verts[i]);
      rec(i + 1);
      cur[b].pop_back();
    }
    cur.push_back({verts[i]});
    rec(i + 1);
    cur.pop_back();
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Connected partitions of the vertex set ordered by refinement. Elements are
/// listed by rank, then label.
struct BondLattice {
  std::vector<SetPartition> partitions;
  std::shared_ptr<const Poset> poset;

  explicit BondLattice(const Graph &g) {
    std::vector<int> all(g.n);
    std::iota(all.begin(), all.end(), 0);
    partitions = connected_partitions(g, all);
    std::stable_sort(partitions.begin(), partitions.end(), [](const auto &a, const auto &b) {
      return std::pair(a.rank(), a.label()) < std::pair(b.rank(), b.label());
    });
    std::vector<std::string> labels;
    std::vector<int> rank;
    for (const auto &p : partitions) {
      labels.push_back(p.label());
      rank.push_back(p.rank());
    }
    poset = std::make_shared<Poset>(Poset::from_order(
        labels, [&](std::size_t a, std::size_t b) { return partitions[a].refines(partitions[b]); },
        rank));
  }

  [[nodiscard]] std::size_t index_of(const SetPartition &p) const {
    for (std::size_t i = 0; i < partitions.size(); ++i)
      if (partitions[i] == p)
        return i;
    throw InvalidInput("partition " + p.label() + " is not in the bond lattice");
  }
};

} // namespace orbitcell
