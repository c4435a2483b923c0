#pragma once

#include "orbitcell/cellular/cellular_form.hpp"
#include "orbitcell/orbit/orbit_lattice.hpp"

namespace orbitcell {

/// Formal sum of completions of theta, keyed by lattice index.
struct BCpElement {
  std::size_t theta = 0;
  std::map<std::size_t, Integer> coefficients;

  [[nodiscard]] bool is_zero() const { return coefficients.empty(); }
  friend bool operator==(const BCpElement &, const BCpElement &) = default;
};

inline void add_to(BCpElement &a, std::size_t eta, const Integer &c) {
  if (c == 0)
    return;
  auto [it, fresh] = a.coefficients.emplace(eta, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0)
      a.coefficients.erase(it);
  }
}

/// BCp(theta) for every element of L_k^m.
class BCp {
public:
  explicit BCp(std::shared_ptr<const OrbitLattice> l) : l_(std::move(l)) {}

  [[nodiscard]] const OrbitLattice &lattice() const { return *l_; }

  /// Number of classes available at each undefined entry, in Ud order.
  [[nodiscard]] std::vector<int> class_counts(std::size_t theta) const {
    std::vector<int> out;
    const auto &e = l_->element(theta);
    for (auto pos : l_->undefined(theta))
      out.push_back(l_->class_count(l_->row_block(e.partition, pos.row).size()));
    return out;
  }

  [[nodiscard]] std::size_t rank(std::size_t theta) const {
    std::size_t r = 1;
    for (int c : class_counts(theta))
      r *= static_cast<std::size_t>(c - 1);
    return r;
  }

  /// Completion of theta filling the undefined entries with `codes`.
  [[nodiscard]] std::size_t fill(std::size_t theta, const std::vector<int> &codes) const {
    PartialMatrix e = l_->element(theta);
    auto ud = l_->undefined(theta);
    if (codes.size() != ud.size())
      throw InvalidInput("wrong number of classes for a completion");
    for (std::size_t i = 0; i < ud.size(); ++i)
      e.entries[ud[i].row * l_->m() + ud[i].col] = codes[i];
    return l_->index_of(e);
  }

  /// Codes of a completion of theta at the undefined entries of theta.
  [[nodiscard]] std::vector<int> codes(std::size_t theta, std::size_t eta) const {
    std::vector<int> out;
    const auto &e = l_->element(eta);
    for (auto pos : l_->undefined(theta))
      out.push_back(e.entries[pos.row * l_->m() + pos.col]);
    return out;
  }

  /// Basis tuple with index i: nonzero classes, first entry most significant.
  [[nodiscard]] std::vector<int> basis_tuple(std::size_t theta, std::size_t i) const {
    auto counts = class_counts(theta);
    std::vector<int> t(counts.size());
    for (std::size_t j = counts.size(); j-- > 0;) {
      t[j] = 1 + static_cast<int>(i % (counts[j] - 1));
      i /= counts[j] - 1;
    }
    return t;
  }

  /// Expansion of the tensor product of (eta_c - eta_0) over Ud(theta).
  [[nodiscard]] BCpElement basis(std::size_t theta, std::size_t i) const {
    auto t = basis_tuple(theta, i);
    BCpElement out{theta, {}};
    const std::size_t u = t.size();
    for (std::size_t s = 0; s < (std::size_t{1} << u); ++s) {
      std::vector<int> c(u, 0);
      int zeros = 0;
      for (std::size_t j = 0; j < u; ++j) {
        if (s >> j & 1)
          c[j] = t[j];
        else
          ++zeros;
      }
      add_to(out, fill(theta, c), zeros % 2 ? Integer(-1) : Integer(1));
    }
    return out;
  }

  [[nodiscard]] std::vector<BCpElement> basis(std::size_t theta) const {
    std::vector<BCpElement> out;
    for (std::size_t i = 0; i < rank(theta); ++i)
      out.push_back(basis(theta, i));
    return out;
  }

  /// Supported on completions of theta, with vanishing coefficient sums
  /// below every element with one undefined entry.
  [[nodiscard]] bool contains(const BCpElement &u) const {
    auto ud = l_->undefined(u.theta);
    for (const auto &[eta, c] : u.coefficients) {
      (void)c;
      if (l_->projection(eta) != l_->projection(u.theta) || l_->rf(eta) != 0 ||
          !l_->poset()->leq(eta, u.theta))
        return false;
    }
    for (std::size_t j = 0; j < ud.size(); ++j) {
      std::map<std::vector<int>, Integer> sums;
      for (const auto &[eta, c] : u.coefficients) {
        auto key = codes(u.theta, eta);
        key[j] = -1;
        sums[key] += c;
      }
      for (const auto &[key, s] : sums)
        if (s != 0)
          return false;
    }
    return true;
  }

  /// Coordinates in the basis of BCp(theta); u must lie in BCp(theta).
  [[nodiscard]] IntVector coordinates(const BCpElement &u) const {
    IntVector out(rank(u.theta));
    auto counts = class_counts(u.theta);
    for (const auto &[eta, c] : u.coefficients) {
      auto code = codes(u.theta, eta);
      if (std::find(code.begin(), code.end(), 0) != code.end())
        continue;
      std::size_t idx = 0;
      for (std::size_t j = 0; j < code.size(); ++j)
        idx = idx * (counts[j] - 1) + (code[j] - 1);
      out[idx] += c;
    }
    return out;
  }

  [[nodiscard]] BCpElement from_coordinates(std::size_t theta, const IntVector &x) const {
    BCpElement out{theta, {}};
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0)
        for (const auto &[eta, c] : basis(theta, i).coefficients)
          add_to(out, eta, c * x[i]);
    return out;
  }

  /// Alternating sum over one-entry fillings psi of theta of the part of u
  /// completing psi, with sign (-1)^i for the i-th undefined entry.
  [[nodiscard]] std::map<std::size_t, BCpElement> boundary(const BCpElement &u) const {
    std::map<std::size_t, BCpElement> out;
    auto ud = l_->undefined(u.theta);
    for (const auto &[eta, c] : u.coefficients) {
      auto code = codes(u.theta, eta);
      for (std::size_t i = 0; i < ud.size(); ++i) {
        PartialMatrix psi = l_->element(u.theta);
        psi.entries[ud[i].row * l_->m() + ud[i].col] = code[i];
        auto pi = l_->index_of(psi);
        auto it = out.try_emplace(pi, BCpElement{pi, {}}).first;
        add_to(it->second, eta, i % 2 ? Integer(-c) : c);
      }
    }
    for (auto it = out.begin(); it != out.end();)
      it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }

  /// The pieces BCp(theta) as a cellular form on the fiber poset C_I.
  [[nodiscard]] CellularForm form(const FiberPoset &fib) const {
    CellularForm f{fib.poset, {}, {}};
    for (auto i : fib.to_lattice)
      f.piece_rank.push_back(rank(i));
    for (std::size_t x = 0; x < fib.to_lattice.size(); ++x) {
      const auto theta = fib.to_lattice[x];
      const auto &lo = fib.poset->down_covers(x);
      std::map<std::size_t, IntMatrix> mats;
      for (auto y : lo)
        mats.emplace(y, IntMatrix(f.piece_rank[y], f.piece_rank[x]));
      for (std::size_t j = 0; j < f.piece_rank[x]; ++j)
        for (const auto &[psi, part] : boundary(basis(theta, j))) {
          auto y = fib.local(psi);
          auto coords = coordinates(part);
          for (std::size_t r = 0; r < coords.size(); ++r)
            mats.at(y)(r, j) = coords[r];
        }
      for (auto &[y, mat] : mats)
        if (!mat.is_zero())
          f.differential.emplace(CoverKey{y, x}, std::move(mat));
    }
    return f;
  }

private:
  std::shared_ptr<const OrbitLattice> l_;
};

/// Base and fiber ranks both add under the join.
inline bool independent(const OrbitLattice &l, std::size_t theta, std::size_t psi) {
  auto z = l.join_table()(theta, psi);
  return l.rb(theta) + l.rb(psi) == l.rb(z) && l.rf(theta) + l.rf(psi) == l.rf(z);
}

/// Position of each undefined entry of theta inside Ud(z) for z above theta.
inline std::vector<int> undefined_positions_in(const OrbitLattice &l, std::size_t theta,
                                               std::size_t z) {
  const auto &pz = l.bond().partitions[l.projection(z)];
  auto bz = pz.block_of();
  auto udz = l.undefined(z);
  std::vector<int> out;
  for (auto pos : l.undefined(theta)) {
    const auto &q = l.row_block(l.projection(theta), pos.row);
    EntryPos target{l.row_index(l.projection(z), bz[q.front()]), pos.col};
    auto it = std::lower_bound(udz.begin(), udz.end(), target);
    if (it == udz.end() || !(*it == target))
      throw InvalidInput("undefined entry does not survive the join");
    out.push_back(static_cast<int>(it - udz.begin()));
  }
  return out;
}

/// Sign of the permutation taking Ud(theta) followed by Ud(psi) to Ud of
/// the join.
inline int perm_sign(const OrbitLattice &l, std::size_t theta, std::size_t psi) {
  if (!independent(l, theta, psi))
    throw NotIndependent(l.label(theta) + " and " + l.label(psi));
  auto z = l.join_table()(theta, psi);
  auto a = undefined_positions_in(l, theta, z);
  auto b = undefined_positions_in(l, psi, z);
  a.insert(a.end(), b.begin(), b.end());
  int inv = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      inv += a[i] > a[j];
  return inv % 2 ? -1 : 1;
}

/// Completion-wise join with the global sign; zero for dependent pairs.
inline BCpElement phi_product(const OrbitLattice &l, const BCpElement &u, const BCpElement &v) {
  const auto &join = l.join_table();
  BCpElement out{join(u.theta, v.theta), {}};
  if (!independent(l, u.theta, v.theta))
    return out;
  const int sign = perm_sign(l, u.theta, v.theta);
  for (const auto &[eta, a] : u.coefficients)
    for (const auto &[nu, b] : v.coefficients)
      add_to(out, join(eta, nu), sign * a * b);
  return out;
}

} // namespace orbitcell
