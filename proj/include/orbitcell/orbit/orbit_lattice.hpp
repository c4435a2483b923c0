#pragma once

#include "orbitcell/orbit/graph.hpp"

#include <map>

namespace orbitcell {

/// Element of L_k^m: a connected partition with one row of m entries per
/// nontrivial block. An entry is a Z_k-coloring class of the block, encoded
/// in base k by the values on the block's vertices after the first, or -1
/// when undefined.
struct PartialMatrix {
  std::size_t partition = 0;
  std::vector<int> entries;

  friend bool operator==(const PartialMatrix &, const PartialMatrix &) = default;
  friend auto operator<=>(const PartialMatrix &, const PartialMatrix &) = default;
};

/// Position of an entry: nontrivial row and column.
struct EntryPos {
  int row = 0;
  int col = 0;
  friend bool operator==(const EntryPos &, const EntryPos &) = default;
  friend auto operator<=>(const EntryPos &, const EntryPos &) = default;
};

/// The poset L_k^m(Gamma) with its projection to the bond lattice.
class OrbitLattice {
public:
  OrbitLattice(Graph g, int k, int m) : graph_(std::move(g)), k_(k), m_(m), bond_(graph_) {
    if (k < 1)
      throw InvalidInput("k must be at least 1");
    if (m < 1)
      throw InvalidInput("m must be at least 1");
    for (const auto &p : bond_.partitions) {
      std::vector<int> rows;
      for (std::size_t b = 0; b < p.blocks.size(); ++b)
        if (p.blocks[b].size() > 1)
          rows.push_back(static_cast<int>(b));
      rows_.push_back(rows);
      block_of_.push_back(p.block_of());
    }
    for (std::size_t i = 0; i < bond_.partitions.size(); ++i) {
      std::vector<int> choices;
      for (int r : rows_[i])
        for (int t = 0; t < m_; ++t) {
          (void)t;
          choices.push_back(class_count(bond_.partitions[i].blocks[r].size()));
        }
      std::vector<int> e(choices.size(), -1);
      std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == e.size()) {
          index_.emplace(PartialMatrix{i, e}, elements_.size());
          elements_.push_back(PartialMatrix{i, e});
          return;
        }
        for (int c = -1; c < choices[j]; ++c) {
          e[j] = c;
          rec(j + 1);
        }
      };
      rec(0);
    }
    std::vector<std::string> labels;
    for (const auto &e : elements_)
      labels.push_back(label(e));
    poset_ = std::make_shared<Poset>(Poset::from_order(
        labels, [&](std::size_t a, std::size_t b) { return leq(elements_[a], elements_[b]); }));
  }

  [[nodiscard]] const Graph &graph() const { return graph_; }
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] const BondLattice &bond() const { return bond_; }
  [[nodiscard]] std::shared_ptr<const Poset> poset() const { return poset_; }
  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  [[nodiscard]] const PartialMatrix &element(std::size_t i) const { return elements_[i]; }
  [[nodiscard]] std::size_t bottom() const { return 0; }

  [[nodiscard]] std::optional<std::size_t> find(const PartialMatrix &e) const {
    auto it = index_.find(e);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }
  [[nodiscard]] std::size_t index_of(const PartialMatrix &e) const {
    auto i = find(e);
    if (!i)
      throw InvalidInput("not an element of the lattice");
    return *i;
  }

  /// Number of coloring classes on a block of the given size.
  [[nodiscard]] int class_count(std::size_t block_size) const {
    int c = 1;
    for (std::size_t i = 1; i < block_size; ++i)
      c *= k_;
    return c;
  }
  /// Values of a class on its block, first vertex at 0.
  [[nodiscard]] std::vector<int> class_values(std::size_t block_size, int code) const {
    std::vector<int> v(block_size, 0);
    for (std::size_t i = 1; i < block_size; ++i) {
      v[i] = code % k_;
      code /= k_;
    }
    return v;
  }
  [[nodiscard]] int class_code(const std::vector<int> &values) const {
    int code = 0;
    for (std::size_t i = values.size(); i-- > 1;)
      code = code * k_ + (((values[i] - values[0]) % k_) + k_) % k_;
    return code;
  }

  [[nodiscard]] const SetPartition &partition(std::size_t i) const {
    return bond_.partitions[elements_[i].partition];
  }
  [[nodiscard]] std::size_t projection(std::size_t i) const { return elements_[i].partition; }
  /// Indices of the nontrivial blocks of a bond lattice element.
  [[nodiscard]] const std::vector<int> &rows(std::size_t partition) const {
    return rows_[partition];
  }
  [[nodiscard]] const std::vector<int> &row_block(std::size_t partition, int row) const {
    return bond_.partitions[partition].blocks[rows_[partition][row]];
  }

  [[nodiscard]] int rb(std::size_t i) const { return partition(i).rank(); }
  [[nodiscard]] int rf(std::size_t i) const {
    return static_cast<int>(
        std::count(elements_[i].entries.begin(), elements_[i].entries.end(), -1));
  }
  [[nodiscard]] int codim(std::size_t i) const { return rf(i) + m_ * rb(i); }

  /// Undefined entries in row-major order.
  [[nodiscard]] std::vector<EntryPos> undefined(std::size_t i) const {
    std::vector<EntryPos> out;
    const auto &e = elements_[i].entries;
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j] < 0)
        out.push_back(EntryPos{static_cast<int>(j) / m_, static_cast<int>(j) % m_});
    return out;
  }

  [[nodiscard]] std::string label(const PartialMatrix &e) const {
    std::string s = bond_.partitions[e.partition].label();
    const auto &rows = rows_[e.partition];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      s += '[';
      const auto size = bond_.partitions[e.partition].blocks[rows[r]].size();
      for (int t = 0; t < m_; ++t) {
        if (t)
          s += ';';
        int c = e.entries[r * m_ + t];
        if (c < 0) {
          s += '?';
          continue;
        }
        auto v = class_values(size, c);
        for (std::size_t j = 0; j < v.size(); ++j) {
          if (j)
            s += '.';
          s += std::to_string(v[j]);
        }
      }
      s += ']';
    }
    return s;
  }
  [[nodiscard]] const std::string &label(std::size_t i) const { return poset_->label(i); }

  /// Class on `block` restricted to the sub-block `sub`.
  [[nodiscard]] int restrict_class(const std::vector<int> &block, int code,
                                   const std::vector<int> &sub) const {
    auto v = class_values(block.size(), code);
    std::vector<int> w;
    for (int x : sub)
      w.push_back(v[std::lower_bound(block.begin(), block.end(), x) - block.begin()]);
    return class_code(w);
  }

  /// Restriction of e to a refinement of its partition.
  [[nodiscard]] PartialMatrix restrict(const PartialMatrix &e, std::size_t finer) const {
    const auto &fine = bond_.partitions[finer];
    const auto &coarse = bond_.partitions[e.partition];
    if (!fine.refines(coarse))
      throw InvalidInput(fine.label() + " does not refine " + coarse.label());
    PartialMatrix out{finer, {}};
    for (int b : rows_[finer]) {
      const auto &q = fine.blocks[b];
      int big = block_of_[e.partition][q.front()];
      int r = row_index(e.partition, big);
      for (int t = 0; t < m_; ++t) {
        int c = e.entries[r * m_ + t];
        out.entries.push_back(c < 0 ? -1 : restrict_class(coarse.blocks[big], c, q));
      }
    }
    return out;
  }
  [[nodiscard]] std::size_t restrict(std::size_t i, std::size_t finer) const {
    return index_of(restrict(elements_[i], finer));
  }

  [[nodiscard]] bool leq(const PartialMatrix &a, const PartialMatrix &b) const {
    const auto &pa = bond_.partitions[a.partition];
    const auto &pb = bond_.partitions[b.partition];
    if (!bond_.poset->leq(a.partition, b.partition))
      return false;
    const auto &ra = rows_[a.partition];
    for (std::size_t r = 0; r < ra.size(); ++r) {
      const auto &q = pa.blocks[ra[r]];
      int big = block_of_[b.partition][q.front()];
      int rbig = row_index(b.partition, big);
      for (int t = 0; t < m_; ++t) {
        int cb = b.entries[rbig * m_ + t];
        if (cb < 0)
          continue;
        if (a.entries[r * m_ + t] != restrict_class(pb.blocks[big], cb, q))
          return false;
      }
    }
    return true;
  }

  /// Join computed entrywise: a block of the joined partition gets ? in a
  /// column when a constituent is ? there or the constituents disagree.
  [[nodiscard]] PartialMatrix join_theta(const PartialMatrix &a, const PartialMatrix &b) const {
    const auto &pa = bond_.partitions[a.partition];
    const auto &pb = bond_.partitions[b.partition];
    std::vector<std::vector<int>> blocks;
    {
      std::vector<int> parent(graph_.n);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> root = [&](int v) {
        return parent[v] == v ? v : parent[v] = root(parent[v]);
      };
      for (const auto *p : {&pa, &pb})
        for (const auto &blk : p->blocks)
          for (int v : blk)
            parent[root(v)] = root(blk.front());
      std::map<int, std::vector<int>> groups;
      for (int v = 0; v < graph_.n; ++v)
        groups[root(v)].push_back(v);
      for (auto &[r, blk] : groups)
        blocks.push_back(blk);
    }
    auto joined = SetPartition::from_blocks(blocks);
    PartialMatrix out{bond_.index_of(joined), {}};
    for (int jb : rows_[out.partition]) {
      const auto &big = joined.blocks[jb];
      for (int t = 0; t < m_; ++t) {
        // potential[v] relative to the root of v.
        std::vector<int> parent(graph_.n), pot(graph_.n, 0);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> root = [&](int v) {
          if (parent[v] == v)
            return v;
          int r = root(parent[v]);
          pot[v] = (pot[v] + pot[parent[v]]) % k_;
          parent[v] = r;
          return r;
        };
        bool undefined = false;
        for (const auto *e : {&a, &b}) {
          const auto &p = bond_.partitions[e->partition];
          const auto &rs = rows_[e->partition];
          for (std::size_t r = 0; r < rs.size() && !undefined; ++r) {
            const auto &q = p.blocks[rs[r]];
            if (!std::binary_search(big.begin(), big.end(), q.front()))
              continue;
            int c = e->entries[r * m_ + t];
            if (c < 0) {
              undefined = true;
              break;
            }
            auto vals = class_values(q.size(), c);
            for (std::size_t j = 1; j < q.size(); ++j) {
              // value(q[j]) - value(q[0]) = vals[j]
              int r0 = root(q[0]), r1 = root(q[j]);
              int want = vals[j];
              if (r0 == r1) {
                if (((pot[q[j]] - pot[q[0]]) % k_ + k_) % k_ != want % k_)
                  undefined = true;
              } else {
                parent[r1] = r0;
                pot[r1] = ((want + pot[q[0]] - pot[q[j]]) % k_ + k_) % k_;
              }
            }
          }
        }
        if (undefined) {
          out.entries.push_back(-1);
          continue;
        }
        std::vector<int> vals;
        for (int v : big) {
          root(v);
          vals.push_back(pot[v]);
        }
        out.entries.push_back(class_code(vals));
      }
    }
    return out;
  }

  /// Join table of the poset, built on first use.
  [[nodiscard]] const JoinTable &join_table() const {
    if (!join_)
      join_ = std::make_shared<JoinTable>(*poset_);
    return *join_;
  }

  /// Elements over a bond lattice element, ordered as in the lattice.
  [[nodiscard]] std::vector<std::size_t> fiber(std::size_t partition) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (elements_[i].partition == partition)
        out.push_back(i);
    return out;
  }

  [[nodiscard]] int row_index(std::size_t partition, int block) const {
    const auto &rs = rows_[partition];
    auto it = std::lower_bound(rs.begin(), rs.end(), block);
    if (it == rs.end() || *it != block)
      throw InvalidInput("block is not a nontrivial row");
    return static_cast<int>(it - rs.begin());
  }

private:
  Graph graph_;
  int k_, m_;
  BondLattice bond_;
  std::vector<std::vector<int>> rows_;
  std::vector<std::vector<int>> block_of_;
  std::vector<PartialMatrix> elements_;
  std::map<PartialMatrix, std::size_t> index_;
  std::shared_ptr<Poset> poset_;
  mutable std::shared_ptr<JoinTable> join_;
};

/// The poset C_I of partial matrices over one connected partition, ordered as
/// in L_k^m. Graded by the number of undefined entries.
struct FiberPoset {
  std::shared_ptr<const Poset> poset;
  std::vector<std::size_t> to_lattice;

  FiberPoset(const OrbitLattice &l, std::size_t partition) : to_lattice(l.fiber(partition)) {
    std::vector<std::string> labels;
    std::vector<int> rank;
    for (auto i : to_lattice) {
      labels.push_back(l.label(i));
      rank.push_back(l.rf(i));
    }
    const auto &lp = *l.poset();
    poset = std::make_shared<Poset>(Poset::from_order(
        labels, [&](std::size_t a, std::size_t b) { return lp.leq(to_lattice[a], to_lattice[b]); },
        rank));
  }
  [[nodiscard]] std::size_t local(std::size_t lattice_index) const {
    auto it = std::lower_bound(to_lattice.begin(), to_lattice.end(), lattice_index);
    if (it == to_lattice.end() || *it != lattice_index)
      throw InvalidInput("element is not in the fiber");
    return static_cast<std::size_t>(it - to_lattice.begin());
  }
};

/// Intersection lattice of the arrangement, realised on canonical
/// representatives: fully undefined rows are glued into the Gamma-connected
/// components of their union.
class IntersectionLattice {
public:
  explicit IntersectionLattice(std::shared_ptr<const OrbitLattice> l) : l_(std::move(l)) {
    const auto &lat = *l_;
    std::map<std::size_t, std::size_t> rep_index;
    sigma_.resize(lat.size());
    for (std::size_t i = 0; i < lat.size(); ++i) {
      auto a = lat.index_of(alpha(lat.element(i)));
      auto [it, fresh] = rep_index.emplace(a, 0);
      (void)fresh;
      sigma_[i] = a;
    }
    for (auto &[a, idx] : rep_index) {
      idx = reps_.size();
      reps_.push_back(a);
    }
    for (auto &s : sigma_)
      s = rep_index.at(s);
    std::vector<std::string> labels;
    for (auto a : reps_) {
      labels.push_back(lat.label(a));
      codim_.push_back(lat.codim(a));
    }
    const auto &lp = *lat.poset();
    poset_ = std::make_shared<Poset>(Poset::from_order(
        labels, [&](std::size_t x, std::size_t y) { return lp.leq(reps_[x], reps_[y]); }));
  }

  /// Canonical representative of the subspace of e.
  [[nodiscard]] PartialMatrix alpha(const PartialMatrix &e) const {
    const auto &lat = *l_;
    const auto &p = lat.bond().partitions[e.partition];
    const auto &rs = lat.rows(e.partition);
    const int m = lat.m();
    std::vector<std::vector<int>> blocks;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> defined;
    std::vector<int> loose;
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      if (p.blocks[b].size() == 1) {
        blocks.push_back(p.blocks[b]);
        continue;
      }
      int r = lat.row_index(e.partition, static_cast<int>(b));
      std::vector<int> row(e.entries.begin() + r * m, e.entries.begin() + (r + 1) * m);
      if (std::all_of(row.begin(), row.end(), [](int c) { return c < 0; }))
        loose.insert(loose.end(), p.blocks[b].begin(), p.blocks[b].end());
      else {
        blocks.push_back(p.blocks[b]);
        defined.emplace_back(p.blocks[b], row);
      }
    }
    (void)rs;
    for (auto &c : lat.graph().components(loose))
      blocks.push_back(c);
    auto glued = SetPartition::from_blocks(blocks);
    PartialMatrix out{lat.bond().index_of(glued), {}};
    for (int b : lat.rows(out.partition)) {
      const auto &blk = glued.blocks[b];
      auto it = std::find_if(defined.begin(), defined.end(),
                             [&](const auto &d) { return d.first == blk; });
      if (it == defined.end())
        out.entries.insert(out.entries.end(), m, -1);
      else
        out.entries.insert(out.entries.end(), it->second.begin(), it->second.end());
    }
    return out;
  }

  [[nodiscard]] const OrbitLattice &lattice() const { return *l_; }
  [[nodiscard]] std::shared_ptr<const OrbitLattice> lattice_ptr() const { return l_; }
  [[nodiscard]] std::shared_ptr<const Poset> poset() const { return poset_; }
  [[nodiscard]] std::size_t size() const { return reps_.size(); }
  [[nodiscard]] std::size_t sigma(std::size_t lattice_index) const {
    return sigma_[lattice_index];
  }
  [[nodiscard]] const std::vector<std::size_t> &sigma_map() const { return sigma_; }
  [[nodiscard]] std::size_t representative(std::size_t x) const { return reps_[x]; }
  [[nodiscard]] const std::vector<int> &codim() const { return codim_; }
  [[nodiscard]] std::size_t bottom() const { return sigma_[0]; }
  [[nodiscard]] bool injective() const { return reps_.size() == sigma_.size(); }

  /// All lattice elements with the same subspace as x.
  [[nodiscard]] std::vector<std::size_t> fiber_of(std::size_t x) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < sigma_.size(); ++i)
      if (sigma_[i] == x)
        out.push_back(i);
    return out;
  }

  [[nodiscard]] PosetMap as_map() const {
    PosetMap f{l_->poset(), poset_, sigma_};
    return f;
  }

private:
  std::shared_ptr<const OrbitLattice> l_;
  std::vector<std::size_t> sigma_;
  std::vector<std::size_t> reps_;
  std::vector<int> codim_;
  std::shared_ptr<Poset> poset_;
};

} // namespace orbitcell
