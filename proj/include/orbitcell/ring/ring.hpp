#pragma once

#include "orbitcell/orbit/bcp.hpp"
#include "orbitcell/os/os_algebra.hpp"
#include "orbitcell/tor/goresky_macpherson.hpp"

#include <cmath>
#include <tuple>

namespace orbitcell {

/// Basis element a (x) u of the piece A(L)_{pi(theta)} (x) BCp(theta).
struct GradedBasisElement {
  std::size_t grading = 0;
  std::size_t os_index = 0;
  std::size_t bcp_index = 0;
  int degree = 0;
};

/// Integer combination of basis indices.
using Combination = std::map<std::size_t, Integer>;

/// Number of elements of L_k^m(Gamma), from the bond lattice alone.
/// Saturates at SIZE_MAX.
inline std::size_t lattice_size(const Graph &g, int k, int m) {
  BondLattice b(g);
  long double total = 0;
  for (const auto &p : b.partitions) {
    long double f = 1;
    for (const auto &blk : p.blocks)
      if (blk.size() > 1)
        f *= std::pow(std::pow(static_cast<long double>(k), blk.size() - 1) + 1, m);
    total += f;
  }
  return total >= static_cast<long double>(SIZE_MAX) ? SIZE_MAX
                                                     : static_cast<std::size_t>(total);
}

class RingPresentation {
public:
  RingPresentation(Graph g, int k, int m, Mode mode, bool with_products)
      : mode_(mode), with_products_(with_products) {
    if (k < 1)
      throw InvalidInput("k must be at least 1");
    if (m < 1)
      throw InvalidInput("m must be at least 1");
    if (g.n < 1)
      throw InvalidInput("the graph needs a vertex");
    if (mode == Mode::Real && k != 2)
      throw UnsupportedParameters("the real case needs k = 2");
    if (mode == Mode::Real && m < 2)
      throw UnsupportedParameters("the real case needs m > 1");
    if (with_products && m < 2)
      throw UnsupportedParameters("ring structure needs m > 1");
    l_ = std::make_shared<const OrbitLattice>(std::move(g), k, m);
    os_ = std::make_shared<OSAlgebra>(l_->bond().poset);
    bcp_ = std::make_shared<BCp>(l_);
    build_basis();
    if (with_products)
      build_products();
  }

  [[nodiscard]] const OrbitLattice &lattice() const { return *l_; }
  [[nodiscard]] std::shared_ptr<const OrbitLattice> lattice_ptr() const { return l_; }
  [[nodiscard]] OSAlgebra &os() const { return *os_; }
  [[nodiscard]] const BCp &bcp() const { return *bcp_; }
  [[nodiscard]] Mode mode() const { return mode_; }
  [[nodiscard]] bool has_products() const { return with_products_; }
  [[nodiscard]] const std::vector<GradedBasisElement> &basis() const { return basis_; }
  [[nodiscard]] std::size_t size() const { return basis_.size(); }

  [[nodiscard]] std::size_t index_of(std::size_t grading, std::size_t os_index,
                                     std::size_t bcp_index) const {
    return index_.at({grading, os_index, bcp_index});
  }

  /// Degree of a class on the grading theta.
  [[nodiscard]] int degree_of(std::size_t theta) const {
    const int m = l_->m();
    return mode_ == Mode::Complex ? (2 * m - 1) * l_->rb(theta) + l_->rf(theta)
                                  : (m - 1) * l_->rb(theta);
  }

  /// Rank of the piece on theta.
  [[nodiscard]] std::size_t piece_rank(std::size_t theta) const {
    return os_->basis(l_->projection(theta)).size() * bcp_->rank(theta);
  }

  [[nodiscard]] std::vector<std::size_t> poincare() const {
    std::vector<std::size_t> p{0};
    for (const auto &b : basis_) {
      if (p.size() <= static_cast<std::size_t>(b.degree))
        p.resize(b.degree + 1, 0);
      ++p[b.degree];
    }
    return p;
  }

  /// nbc atom labels followed by the leading completion of the BCp vector.
  [[nodiscard]] std::vector<std::string> labels(std::size_t i) const {
    const auto &b = basis_[i];
    auto out = os_->atom_labels(os_->basis(l_->projection(b.grading))[b.os_index]);
    auto t = bcp_->basis_tuple(b.grading, b.bcp_index);
    out.push_back(l_->label(bcp_->fill(b.grading, t)));
    return out;
  }

  [[nodiscard]] const Combination &product(std::size_t i, std::size_t j) const {
    static const Combination zero;
    if (!with_products_)
      throw PreconditionFailed("presentation was built without products");
    auto it = products_.find({i, j});
    return it == products_.end() ? zero : it->second;
  }
  [[nodiscard]] const std::map<std::pair<std::size_t, std::size_t>, Combination> &
  products() const {
    return products_;
  }

  [[nodiscard]] Combination cup(const Combination &x, const Combination &y) const {
    Combination out;
    for (const auto &[i, a] : x)
      for (const auto &[j, b] : y)
        for (const auto &[z, c] : product(i, j))
          out[z] += a * b * c;
    return normalize(std::move(out));
  }

  /// Drops zeros; reduces mod 2 in the real case.
  [[nodiscard]] Combination normalize(Combination c) const {
    for (auto it = c.begin(); it != c.end();) {
      if (mode_ == Mode::Real)
        it->second = (it->second % 2 + 2) % 2;
      it = it->second == 0 ? c.erase(it) : std::next(it);
    }
    return c;
  }

private:
  void build_basis() {
    std::vector<std::tuple<int, std::string, std::size_t, std::size_t, std::size_t>> rows;
    for (std::size_t theta = 0; theta < l_->size(); ++theta) {
      const auto nos = os_->basis(l_->projection(theta)).size();
      const auto nb = bcp_->rank(theta);
      for (std::size_t a = 0; a < nos; ++a)
        for (std::size_t u = 0; u < nb; ++u)
          rows.emplace_back(degree_of(theta), l_->label(theta), a, u, theta);
    }
    std::sort(rows.begin(), rows.end());
    for (const auto &[deg, label, a, u, theta] : rows) {
      index_.emplace(std::tuple{theta, a, u}, basis_.size());
      basis_.push_back(GradedBasisElement{theta, a, u, deg});
    }
  }

  void build_products() {
    std::map<std::size_t, std::vector<std::size_t>> by_grading;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      by_grading[basis_[i].grading].push_back(i);
    const auto &join = l_->join_table();
    for (const auto &[theta, is] : by_grading)
      for (const auto &[psi, js] : by_grading) {
        if (!independent(*l_, theta, psi))
          continue;
        const auto zeta = join(theta, psi);
        const int koszul = (l_->rf(theta) * l_->rb(psi)) % 2 ? -1 : 1;
        const auto &os_t = os_->basis(l_->projection(theta));
        const auto &os_p = os_->basis(l_->projection(psi));
        std::map<std::pair<std::size_t, std::size_t>, IntVector> fib;
        for (std::size_t u = 0; u < bcp_->rank(theta); ++u)
          for (std::size_t v = 0; v < bcp_->rank(psi); ++v)
            fib.emplace(std::pair{u, v},
                        bcp_->coordinates(phi_product(*l_, bcp_->basis(theta, u),
                                                      bcp_->basis(psi, v))));
        for (auto i : is)
          for (auto j : js) {
            const auto &bi = basis_[i];
            const auto &bj = basis_[j];
            const auto &w = fib.at({bi.bcp_index, bj.bcp_index});
            Combination out;
            for (const auto &[mono, c] : os_->multiply(os_t[bi.os_index], os_p[bj.os_index])) {
              auto [flat, a] = os_->position(mono);
              if (flat != l_->projection(zeta))
                throw InvalidInput("base product left the joined flat");
              for (std::size_t u = 0; u < w.size(); ++u)
                if (w[u] != 0)
                  out[index_.at({zeta, a, u})] += c * w[u] * koszul;
            }
            out = normalize(std::move(out));
            if (!out.empty())
              products_.emplace(std::pair{i, j}, std::move(out));
          }
      }
  }

  std::shared_ptr<const OrbitLattice> l_;
  std::shared_ptr<OSAlgebra> os_;
  std::shared_ptr<BCp> bcp_;
  Mode mode_;
  bool with_products_;
  std::vector<GradedBasisElement> basis_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, Combination> products_;
};

/// Integral cohomology of the orbit configuration space.
inline RingPresentation cohomology_presentation(Graph g, int k, int m, bool with_products = true) {
  return RingPresentation(std::move(g), k, m, Mode::Complex, with_products);
}

/// Associated graded ring of the real case over Z/2.
inline RingPresentation real_gr_presentation(Graph g, int m, bool with_products = true) {
  return RingPresentation(std::move(g), 2, m, Mode::Real, with_products);
}

} // namespace orbitcell
