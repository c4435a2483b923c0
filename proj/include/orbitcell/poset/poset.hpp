#pragma once

#include "orbitcell/error.hpp"
#include "orbitcell/exact/int_matrix.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace orbitcell {

using Bits = boost::dynamic_bitset<>;
using Chain = std::vector<std::uint32_t>;

/// Finite poset with opaque labels. Covers and the order relation are stored;
/// a rank function is kept when one exists.
class Poset {
public:
  Poset() = default;

  /// Builds from generating relations lo < hi. When `rank` is absent a rank is
  /// inferred with minimal elements at 0; it stays absent if none is
  /// consistent.
  static Poset from_covers(std::vector<std::string> labels,
                           const std::vector<std::pair<std::size_t, std::size_t>> &rel,
                           std::optional<std::vector<int>> rank = std::nullopt) {
    Poset p;
    p.init_labels(std::move(labels));
    const std::size_t n = p.size();
    std::vector<std::vector<std::size_t>> up(n);
    std::vector<std::size_t> indeg(n, 0);
    for (auto [lo, hi] : rel) {
      if (lo >= n || hi >= n)
        throw InvalidInput("relation refers to an unknown element");
      if (lo == hi)
        throw Cyclic("element " + p.labels_[lo] + " below itself");
      up[lo].push_back(hi);
      ++indeg[hi];
    }
    std::vector<std::size_t> topo, stack;
    for (std::size_t x = n; x-- > 0;)
      if (!indeg[x])
        stack.push_back(x);
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      topo.push_back(x);
      for (std::size_t y : up[x])
        if (!--indeg[y])
          stack.push_back(y);
    }
    if (topo.size() != n)
      throw Cyclic("the relation has a cycle");
    p.up_.assign(n, Bits(n));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      p.up_[*it].set(*it);
      for (std::size_t y : up[*it])
        p.up_[*it] |= p.up_[y];
    }
    p.finish(std::move(rank));
    return p;
  }

  /// Builds from an order predicate evaluated on all pairs.
  static Poset from_order(std::vector<std::string> labels,
                          const std::function<bool(std::size_t, std::size_t)> &leq,
                          std::optional<std::vector<int>> rank = std::nullopt) {
    Poset p;
    p.init_labels(std::move(labels));
    const std::size_t n = p.size();
    p.up_.assign(n, Bits(n));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (x == y || leq(x, y))
          p.up_[x].set(y);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y)
        if (p.up_[x][y] && p.up_[y][x])
          throw Cyclic(p.labels_[x] + " and " + p.labels_[y] +
                       " are mutually below each other");
    p.finish(std::move(rank));
    return p;
  }

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] const std::string &label(std::size_t x) const {
    return labels_.at(x);
  }
  [[nodiscard]] const std::vector<std::string> &labels() const { return labels_; }
  [[nodiscard]] std::optional<std::size_t> find(const std::string &label) const {
    auto it = index_.find(label);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }
  [[nodiscard]] std::size_t index_of(const std::string &label) const {
    auto i = find(label);
    if (!i)
      throw InvalidInput("unknown element " + label);
    return *i;
  }

  [[nodiscard]] bool leq(std::size_t x, std::size_t y) const { return up_[x][y]; }
  [[nodiscard]] bool lt(std::size_t x, std::size_t y) const {
    return x != y && up_[x][y];
  }
  /// Elements above x, x included.
  [[nodiscard]] const Bits &up(std::size_t x) const { return up_[x]; }
  /// Elements below x, x included.
  [[nodiscard]] const Bits &down(std::size_t x) const { return down_[x]; }

  [[nodiscard]] const std::vector<std::size_t> &up_covers(std::size_t x) const {
    return up_covers_[x];
  }
  [[nodiscard]] const std::vector<std::size_t> &down_covers(std::size_t x) const {
    return down_covers_[x];
  }
  [[nodiscard]] bool covers(std::size_t lo, std::size_t hi) const {
    const auto &c = up_covers_[lo];
    return std::binary_search(c.begin(), c.end(), hi);
  }
  /// All cover pairs (lo, hi) in lexicographic order of indices.
  [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y : up_covers_[x])
        out.emplace_back(x, y);
    return out;
  }

  /// Linear extension: x < y implies x comes first.
  [[nodiscard]] const std::vector<std::size_t> &linear_order() const {
    return linear_;
  }

  [[nodiscard]] bool graded() const { return rank_.has_value(); }
  [[nodiscard]] int rank(std::size_t x) const {
    if (!rank_)
      throw NotGraded("poset has no rank function");
    return (*rank_)[x];
  }
  [[nodiscard]] const std::optional<std::vector<int>> &ranks() const {
    return rank_;
  }
  [[nodiscard]] int max_rank() const {
    if (!rank_)
      throw NotGraded("poset has no rank function");
    return rank_->empty() ? -1 : *std::max_element(rank_->begin(), rank_->end());
  }

  [[nodiscard]] std::optional<std::size_t> minimum() const {
    for (std::size_t x = 0; x < size(); ++x)
      if (up_[x].count() == size())
        return x;
    return std::nullopt;
  }
  [[nodiscard]] std::optional<std::size_t> maximum() const {
    for (std::size_t x = 0; x < size(); ++x)
      if (down_[x].count() == size())
        return x;
    return std::nullopt;
  }

  /// Least upper bound, if any.
  [[nodiscard]] std::optional<std::size_t> try_join(std::size_t x,
                                                    std::size_t y) const {
    Bits common = up_[x] & up_[y];
    for (std::size_t z : linear_)
      if (common[z])
        return common.is_subset_of(up_[z]) ? std::optional<std::size_t>(z)
                                           : std::nullopt;
    return std::nullopt;
  }
  [[nodiscard]] std::size_t join(std::size_t x, std::size_t y) const {
    auto z = try_join(x, y);
    if (!z)
      throw NotSemilattice(labels_[x] + " and " + labels_[y] +
                           " have no least upper bound");
    return *z;
  }
  [[nodiscard]] std::optional<std::size_t> try_meet(std::size_t x,
                                                    std::size_t y) const {
    Bits common = down_[x] & down_[y];
    for (auto it = linear_.rbegin(); it != linear_.rend(); ++it)
      if (common[*it])
        return common.is_subset_of(down_[*it]) ? std::optional<std::size_t>(*it)
                                               : std::nullopt;
    return std::nullopt;
  }
  [[nodiscard]] bool is_join_semilattice() const {
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = x + 1; y < size(); ++y)
        if (!try_join(x, y))
          return false;
    return true;
  }

  /// mu(x, y) by the defining recursion.
  [[nodiscard]] Integer moebius(std::size_t x, std::size_t y) const {
    if (!leq(x, y))
      throw NotComparable(labels_[x] + " is not below " + labels_[y]);
    std::vector<Integer> mu(size());
    for (std::size_t z : linear_) {
      if (!up_[x][z] || !down_[y][z])
        continue;
      if (z == x) {
        mu[z] = 1;
        continue;
      }
      Integer s = 0;
      for (std::size_t w = down_[z].find_first(); w != Bits::npos;
           w = down_[z].find_next(w))
        if (w != z && up_[x][w])
          s += mu[w];
      mu[z] = -s;
    }
    return mu[y];
  }

private:
  void init_labels(std::vector<std::string> labels) {
    labels_ = std::move(labels);
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (!index_.emplace(labels_[i], i).second)
        throw InvalidInput("duplicate label " + labels_[i]);
  }

  void finish(std::optional<std::vector<int>> rank) {
    const std::size_t n = size();
    down_.assign(n, Bits(n));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = up_[x].find_first(); y != Bits::npos;
           y = up_[x].find_next(y))
        down_[y].set(x);
    // transitivity
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = up_[x].find_first(); y != Bits::npos;
           y = up_[x].find_next(y))
        if (!up_[y].is_subset_of(up_[x]))
          throw InvalidInput("order relation is not transitive");
    linear_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      linear_[i] = i;
    std::stable_sort(linear_.begin(), linear_.end(), [&](auto a, auto b) {
      return down_[a].count() < down_[b].count();
    });
    up_covers_.assign(n, {});
    down_covers_.assign(n, {});
    for (std::size_t x = 0; x < n; ++x) {
      Bits above = up_[x];
      above.reset(x);
      for (std::size_t y = above.find_first(); y != Bits::npos;
           y = above.find_next(y)) {
        Bits between = above & down_[y];
        between.reset(y);
        if (between.none()) {
          up_covers_[x].push_back(y);
          down_covers_[y].push_back(x);
        }
      }
    }
    for (auto &v : down_covers_)
      std::sort(v.begin(), v.end());
    if (rank) {
      if (rank->size() != n)
        throw InvalidInput("rank list has wrong length");
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y : up_covers_[x])
          if ((*rank)[y] != (*rank)[x] + 1)
            throw NotGraded("cover " + labels_[x] + " < " + labels_[y] +
                            " changes rank by " +
                            std::to_string((*rank)[y] - (*rank)[x]));
      rank_ = std::move(rank);
    } else {
      rank_ = infer_rank();
    }
  }

  [[nodiscard]] std::optional<std::vector<int>> infer_rank() const {
    std::vector<int> r(size(), -1);
    for (std::size_t x : linear_) {
      if (down_covers_[x].empty()) {
        r[x] = 0;
        continue;
      }
      r[x] = r[down_covers_[x].front()] + 1;
      for (std::size_t y : down_covers_[x])
        if (r[y] + 1 != r[x])
          return std::nullopt;
    }
    return r;
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Bits> up_, down_;
  std::vector<std::vector<std::size_t>> up_covers_, down_covers_;
  std::vector<std::size_t> linear_;
  std::optional<std::vector<int>> rank_;
};

/// Order preserving map between posets, given on element indices.
struct PosetMap {
  std::shared_ptr<const Poset> source;
  std::shared_ptr<const Poset> target;
  std::vector<std::size_t> image;

  std::size_t operator()(std::size_t x) const { return image[x]; }

  /// Throws InvalidInput unless the map is defined everywhere and monotone.
  void validate() const {
    if (image.size() != source->size())
      throw InvalidInput("poset map has wrong domain size");
    for (auto [lo, hi] : source->cover_pairs()) {
      if (image[lo] >= target->size() || image[hi] >= target->size())
        throw InvalidInput("poset map leaves the target");
      if (!target->leq(image[lo], image[hi]))
        throw InvalidInput("poset map does not preserve " +
                           source->label(lo) + " < " + source->label(hi));
    }
  }
};

/// Product order; element (x, y) has index x * |Q| + y.
inline Poset product_poset(const Poset &p, const Poset &q) {
  std::vector<std::string> labels;
  labels.reserve(p.size() * q.size());
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < q.size(); ++y)
      labels.push_back("(" + p.label(x) + "," + q.label(y) + ")");
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  const std::size_t m = q.size();
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < m; ++y) {
      for (std::size_t x2 : p.up_covers(x))
        rel.emplace_back(x * m + y, x2 * m + y);
      for (std::size_t y2 : q.up_covers(y))
        rel.emplace_back(x * m + y, x * m + y2);
    }
  std::optional<std::vector<int>> rank;
  if (p.graded() && q.graded()) {
    rank.emplace();
    for (std::size_t x = 0; x < p.size(); ++x)
      for (std::size_t y = 0; y < m; ++y)
        rank->push_back(p.rank(x) + q.rank(y));
  }
  return Poset::from_covers(std::move(labels), rel, std::move(rank));
}

/// Chains p_0 < ... < p_n with p_0 in `starts` and p_n in `ends`, grouped by
/// n and listed lexicographically.
inline std::vector<std::vector<Chain>> chains_between(const Poset &p,
                                                      const Bits &starts,
                                                      const Bits &ends) {
  const std::size_t n = p.size();
  Bits reach(n);
  for (std::size_t e = ends.find_first(); e != Bits::npos; e = ends.find_next(e))
    reach |= p.down(e);
  std::vector<std::vector<Chain>> out;
  Chain cur;
  std::function<void(std::size_t)> extend = [&](std::size_t x) {
    cur.push_back(static_cast<std::uint32_t>(x));
    if (ends[x]) {
      if (out.size() < cur.size())
        out.resize(cur.size());
      out[cur.size() - 1].push_back(cur);
    }
    Bits next = p.up(x) & reach;
    next.reset(x);
    for (std::size_t y = next.find_first(); y != Bits::npos; y = next.find_next(y))
      extend(y);
    cur.pop_back();
  };
  for (std::size_t s = starts.find_first(); s != Bits::npos;
       s = starts.find_next(s))
    if (reach[s])
      extend(s);
  for (auto &level : out)
    std::sort(level.begin(), level.end());
  return out;
}

/// All chains with `length + 1` elements.
inline std::vector<Chain> enumerate_chains(const Poset &p, std::size_t length) {
  Bits all(p.size());
  all.set();
  auto by = chains_between(p, all, all);
  return length < by.size() ? by[length] : std::vector<Chain>{};
}

} // namespace orbitcell

namespace orbitcell {

/// Precomputed joins of a join semilattice.
class JoinTable {
public:
  explicit JoinTable(const Poset &p) : n_(p.size()), table_(n_ * n_) {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = x; y < n_; ++y) {
        auto z = p.join(x, y);
        table_[x * n_ + y] = table_[y * n_ + x] = static_cast<std::uint32_t>(z);
      }
  }
  [[nodiscard]] std::size_t operator()(std::size_t x, std::size_t y) const {
    return table_[x * n_ + y];
  }

private:
  std::size_t n_;
  std::vector<std::uint32_t> table_;
};

} // namespace orbitcell
