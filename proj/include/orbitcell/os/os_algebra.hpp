#pragma once

#include "orbitcell/cellular/cellular_form.hpp"

#include <bit>

namespace orbitcell {

/// Set of atoms as a bitmask over atom positions in label order.
using Monomial = std::uint64_t;
/// Integral combination of monomials.
using OSElement = std::map<Monomial, Integer>;

/// Orlik-Solomon algebra of a geometric lattice in its nbc basis.
class OSAlgebra {
public:
  explicit OSAlgebra(std::shared_ptr<const Poset> l) : l_(std::move(l)) {
    const Poset &p = *l_;
    require_geometric(p);
    bottom_ = *p.minimum();
    for (std::size_t x = 0; x < p.size(); ++x)
      if (p.rank(x) == 1)
        atoms_.push_back(x);
    std::sort(atoms_.begin(), atoms_.end(),
              [&](auto a, auto b) { return p.label(a) < p.label(b); });
    if (atoms_.size() > 64)
      throw InvalidInput("more than 64 atoms");
    by_flat_.resize(p.size());
    Monomial none = 0;
    collect(none, atoms_.size());
    for (auto &v : by_flat_)
      std::sort(v.begin(), v.end(), [](Monomial a, Monomial b) {
        return positions(a) < positions(b);
      });
    for (std::size_t x = 0; x < p.size(); ++x)
      for (std::size_t i = 0; i < by_flat_[x].size(); ++i)
        position_[by_flat_[x][i]] = {x, i};
  }

  [[nodiscard]] const Poset &lattice() const { return *l_; }
  [[nodiscard]] const std::shared_ptr<const Poset> &lattice_ptr() const { return l_; }
  [[nodiscard]] const std::vector<std::size_t> &atoms() const { return atoms_; }
  /// nbc monomials with closure x, in lexicographic order of atom lists.
  [[nodiscard]] const std::vector<Monomial> &basis(std::size_t x) const {
    return by_flat_[x];
  }
  [[nodiscard]] std::vector<std::size_t> ranks_by_degree() const {
    std::vector<std::size_t> r;
    for (std::size_t x = 0; x < l_->size(); ++x) {
      auto d = static_cast<std::size_t>(l_->rank(x));
      if (r.size() <= d)
        r.resize(d + 1, 0);
      r[d] += by_flat_[x].size();
    }
    return r;
  }
  /// (flat, index in basis(flat)) of an nbc monomial.
  [[nodiscard]] std::pair<std::size_t, std::size_t> position(Monomial s) const {
    return position_.at(s);
  }

  [[nodiscard]] std::size_t flat(Monomial s) const {
    std::size_t x = bottom_;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (s >> i & 1)
        x = l_->join(x, atoms_[i]);
    return x;
  }
  [[nodiscard]] bool independent(Monomial s) const {
    return l_->rank(flat(s)) == std::popcount(s);
  }

  /// Atom labels of a monomial, in order.
  [[nodiscard]] std::vector<std::string> atom_labels(Monomial s) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (s >> i & 1)
        out.push_back(l_->label(atoms_[i]));
    return out;
  }

  /// e_S e_T in the nbc basis.
  [[nodiscard]] OSElement multiply(Monomial s, Monomial t) {
    if (s & t)
      return {};
    return scaled_element(straighten(s | t), merge_sign(s, t));
  }

  [[nodiscard]] OSElement multiply(const OSElement &a, const OSElement &b) {
    OSElement out;
    for (const auto &[s, x] : a)
      for (const auto &[t, y] : b)
        for (const auto &[u, z] : multiply(s, t))
          accumulate(out, u, x * y * z);
    return out;
  }

  /// Sum over j of (-1)^j e_{S minus s_j}.
  [[nodiscard]] static OSElement differential(Monomial s) {
    OSElement out;
    int j = 0;
    for (Monomial rest = s; rest; rest &= rest - 1, ++j)
      out.emplace(s & ~(rest & -rest), j % 2 ? -1 : 1);
    return out;
  }

  /// Rewrites e_U in the nbc basis using circuit relations.
  const OSElement &straighten(Monomial u) {
    if (auto it = memo_.find(u); it != memo_.end())
      return it->second;
    OSElement out;
    if (independent(u)) {
      auto broken = first_broken(u);
      if (!broken) {
        out.emplace(u, 1);
      } else {
        auto [a, b] = *broken; // atom position a, broken circuit b within u
        const Monomial circuit = b | (Monomial{1} << a);
        const Monomial rest = u & ~b;
        const int eps = merge_sign(b, rest);
        int j = 0;
        for (Monomial c = circuit; c; c &= c - 1, ++j) {
          if (j == 0)
            continue;
          const Monomial face = circuit & ~(c & -c);
          const int sign = eps * (j % 2 ? 1 : -1) * merge_sign(face, rest);
          for (const auto &[v, x] : straighten(face | rest))
            accumulate(out, v, x * sign);
        }
      }
    }
    return memo_.emplace(u, std::move(out)).first->second;
  }

  /// The algebra as a cellular form of (L, delta^{0} Z).
  [[nodiscard]] CellularForm as_cellular_form() const {
    const Poset &p = *l_;
    CellularForm f{l_, std::vector<std::size_t>(p.size()), {}};
    for (std::size_t x = 0; x < p.size(); ++x)
      f.piece_rank[x] = by_flat_[x].size();
    for (std::size_t x = 0; x < p.size(); ++x)
      for (std::size_t c = 0; c < by_flat_[x].size(); ++c)
        for (const auto &[t, v] : differential(by_flat_[x][c])) {
          auto [y, row] = position_.at(t);
          auto [it, fresh] = f.differential.try_emplace(
              CoverKey{y, x}, IntMatrix(by_flat_[y].size(), by_flat_[x].size()));
          it->second(row, c) = v;
        }
    return f;
  }

  [[nodiscard]] static std::vector<std::size_t> positions(Monomial s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; s; ++i, s >>= 1)
      if (s & 1)
        out.push_back(i);
    return out;
  }

  /// Sign of sorting the concatenation of S then T.
  [[nodiscard]] static int merge_sign(Monomial s, Monomial t) {
    int inv = 0;
    for (Monomial rest = t; rest; rest &= rest - 1) {
      const Monomial low = rest & -rest;
      inv += std::popcount(s & ~(low | (low - 1)));
    }
    return inv % 2 ? -1 : 1;
  }

private:
  static void require_geometric(const Poset &p) {
    if (!p.graded() || !p.minimum() || p.ranks()->at(*p.minimum()) != 0)
      throw NotGeometric("lattice must be ranked with a bottom");
    if (!p.is_join_semilattice())
      throw NotGeometric("joins missing");
    for (std::size_t x = 0; x < p.size(); ++x) {
      std::size_t j = *p.minimum();
      const Bits &dn = p.down(x);
      for (std::size_t a = dn.find_first(); a != Bits::npos; a = dn.find_next(a))
        if (p.rank(a) == 1)
          j = p.join(j, a);
      if (j != x)
        throw NotGeometric(p.label(x) + " is not a join of atoms");
      for (std::size_t y = x + 1; y < p.size(); ++y) {
        auto m = p.try_meet(x, y);
        if (!m || p.rank(x) + p.rank(y) < p.rank(p.join(x, y)) + p.rank(*m))
          throw NotGeometric("rank is not semimodular at " + p.label(x) +
                             ", " + p.label(y));
      }
    }
  }

  static void accumulate(OSElement &e, Monomial m, const Integer &x) {
    if (x == 0)
      return;
    auto [it, fresh] = e.try_emplace(m, x);
    if (!fresh) {
      it->second += x;
      if (it->second == 0)
        e.erase(it);
    }
  }

  static OSElement scaled_element(const OSElement &e, int s) {
    OSElement out;
    for (const auto &[m, x] : e)
      out.emplace(m, x * s);
    return out;
  }

  /// nbc sets built by prepending smaller atoms; `below` bounds the new atom.
  void collect(Monomial s, std::size_t below) {
    by_flat_[flat(s)].push_back(s);
    for (std::size_t a = 0; a < below; ++a) {
      const Monomial t = s | (Monomial{1} << a);
      if (!independent(t))
        continue;
      if (min_atom_below(flat(t)) != a)
        continue;
      collect(t, a);
    }
  }

  [[nodiscard]] std::size_t min_atom_below(std::size_t x) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (l_->leq(atoms_[i], x))
        return i;
    return atoms_.size();
  }

  /// First suffix s_i.. whose flat contains a smaller atom a: returns a and
  /// the broken circuit inside the suffix.
  [[nodiscard]] std::optional<std::pair<std::size_t, Monomial>>
  first_broken(Monomial u) const {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (u >> i & 1)
        pos.push_back(i);
    for (std::size_t k = pos.size(); k-- > 0;) {
      Monomial suffix = 0;
      for (std::size_t i = k; i < pos.size(); ++i)
        suffix |= Monomial{1} << pos[i];
      const std::size_t a = min_atom_below(flat(suffix));
      if (a >= pos[k])
        continue;
      // fundamental circuit of a in the suffix
      Monomial b = 0;
      for (std::size_t i = k; i < pos.size(); ++i) {
        const Monomial without = suffix & ~(Monomial{1} << pos[i]);
        if (!l_->leq(atoms_[a], flat(without)))
          b |= Monomial{1} << pos[i];
      }
      return std::pair{a, b};
    }
    return std::nullopt;
  }

  std::shared_ptr<const Poset> l_;
  std::size_t bottom_ = 0;
  std::vector<std::size_t> atoms_;
  std::vector<std::vector<Monomial>> by_flat_;
  std::map<Monomial, std::pair<std::size_t, std::size_t>> position_;
  std::map<Monomial, OSElement> memo_;
};

} // namespace orbitcell
