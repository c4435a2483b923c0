#pragma once

#include "orbitcell/ring/ring.hpp"

namespace orbitcell {

/// Sends a basis element a (x) u to the K-cycle z_a x z_u pushed into
/// K(L, delta^0 Z; delta_theta Z). Needs an injective sigma, so that the
/// lattice is the intersection lattice.
class PhiMap {
public:
  explicit PhiMap(const RingPresentation &r)
      : r_(&r), os_form_(std::make_unique<CellularForm>(r.os().as_cellular_form())),
        os_cycles_(*os_form_) {}

  const KChain &operator()(std::size_t i) {
    if (auto it = memo_.find(i); it != memo_.end())
      return it->second;
    const auto &l = r_->lattice();
    const auto &b = r_->basis()[i];
    const auto part = l.projection(b.grading);
    auto &fib = fiber(part);
    const KChain &za = os_cycles_.basis_cycle(part, b.os_index);
    const KChain &zu = fib.cycles->basis_cycle(fib.poset->local(b.grading), b.bcp_index);
    const std::size_t q = fib.poset->to_lattice.size();
    auto one = [](std::size_t) { return std::size_t{1}; };
    KChain cross = cross_chain(za, zu, q, one, one);
    auto id = [](std::size_t) { return IntMatrix::identity(1); };
    KChain out = push_forward(
        cross,
        [&](std::size_t v) { return l.restrict(fib.poset->to_lattice[v % q], v / q); }, id, id);
    return memo_.emplace(i, std::move(out)).first->second;
  }

private:
  struct Fiber {
    std::unique_ptr<FiberPoset> poset;
    std::unique_ptr<CellularForm> form;
    std::unique_ptr<FormCycles> cycles;
  };
  Fiber &fiber(std::size_t part) {
    auto it = fibers_.find(part);
    if (it != fibers_.end())
      return it->second;
    Fiber f;
    f.poset = std::make_unique<FiberPoset>(r_->lattice(), part);
    f.form = std::make_unique<CellularForm>(r_->bcp().form(*f.poset));
    f.cycles = std::make_unique<FormCycles>(*f.form);
    return fibers_.emplace(part, std::move(f)).first->second;
  }

  const RingPresentation *r_;
  std::unique_ptr<CellularForm> os_form_;
  FormCycles os_cycles_;
  std::map<std::size_t, Fiber> fibers_;
  std::map<std::size_t, KChain> memo_;
};

struct VerifyOptions {
  std::size_t oracle_limit = 100;
  bool ranks = true;
  bool products = true;
  bool axioms = true;
};

struct CheckResult {
  std::string name;
  bool ok = true;
  bool skipped = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  [[nodiscard]] bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.ok; });
  }
};

/// Local Tor ranks predicted by the presentation for each element of the
/// intersection lattice, indexed [x][n].
inline std::vector<std::vector<std::size_t>> predicted_tor_ranks(const RingPresentation &r,
                                                                 const IntersectionLattice &p) {
  const auto &l = r.lattice();
  std::vector<std::vector<std::size_t>> out(p.size());
  for (std::size_t theta = 0; theta < l.size(); ++theta) {
    auto &v = out[p.sigma(theta)];
    auto n = static_cast<std::size_t>(l.rb(theta) + l.rf(theta));
    if (v.size() <= n)
      v.resize(n + 1, 0);
    v[n] += r.piece_rank(theta);
  }
  return out;
}

/// Tor of (delta^0 Z, delta over the sigma-fiber of x) on L, by brute force.
/// In the real case the entries are F_2 dimensions.
inline std::vector<AbelianGroup> fiber_tor(const RingPresentation &r, const IntersectionLattice &p,
                                           std::size_t x) {
  const auto &l = r.lattice();
  Bits fib(l.size());
  for (auto i : p.fiber_of(x))
    fib.set(i);
  auto g = delta_at<Variance::Co>(l.poset(), l.bottom());
  auto f = delta_sheaf<Variance::Contra>(l.poset(), fib);
  KComplex k(g, f);
  if (r.mode() == Mode::Complex)
    return k.tor();
  std::vector<AbelianGroup> out;
  for (auto d : homology_mod_p(k.complex(), 2))
    out.push_back(AbelianGroup{d, {}});
  return out;
}

namespace detail {

inline std::string combination_string(const Combination &c) {
  if (c.empty())
    return "0";
  std::string s;
  for (const auto &[i, x] : c) {
    if (!s.empty())
      s += " + ";
    s += x.get_str() + "*e" + std::to_string(i);
  }
  return s;
}

inline CheckResult check_ranks(const RingPresentation &r, const IntersectionLattice &p) {
  CheckResult c{"rank formula vs brute-force Tor", true, false, ""};
  auto want = predicted_tor_ranks(r, p);
  for (std::size_t x = 0; x < p.size() && c.ok; ++x) {
    auto tor = fiber_tor(r, p, x);
    auto &w = want[x];
    const std::size_t n = std::max(tor.size(), w.size());
    tor.resize(n);
    w.resize(n, 0);
    for (std::size_t d = 0; d < n; ++d)
      if (tor[d].betti != w[d] || !tor[d].torsion.empty()) {
        c.ok = false;
        c.detail = p.poset()->label(x) + " degree " + std::to_string(d) + ": Tor " +
                   tor[d].to_string() + ", formula rank " + std::to_string(w[d]);
        break;
      }
  }
  return c;
}

inline CheckResult check_products(const RingPresentation &r) {
  CheckResult c{"cup products vs oracle cup", true, false, ""};
  const auto &l = r.lattice();
  PhiMap phi(r);
  const auto lp = l.poset();
  const auto &join = l.join_table();
  std::vector<int> codim;
  for (std::size_t i = 0; i < l.size(); ++i)
    codim.push_back(l.codim(i));
  auto g = delta_at<Variance::Co>(lp, l.bottom());
  std::map<std::size_t, std::pair<Presheaf, std::unique_ptr<KComplex>>> complexes;
  auto complex_at = [&](std::size_t z) -> KComplex & {
    auto it = complexes.find(z);
    if (it == complexes.end()) {
      it = complexes.emplace(z, std::pair{delta_at<Variance::Contra>(lp, z), nullptr}).first;
      it->second.second = std::make_unique<KComplex>(g, it->second.first);
    }
    return *it->second.second;
  };
  std::map<std::pair<std::size_t, std::size_t>, LatticeBasis> bounds;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto theta = r.basis()[i].grading;
    if (!complex_at(theta).is_cycle(phi(i))) {
      c.ok = false;
      c.detail = "image of e" + std::to_string(i) + " is not a cycle";
      return c;
    }
  }
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) {
      const auto x = r.basis()[i].grading, y = r.basis()[j].grading;
      const auto z = join(x, y);
      const auto &want = r.product(i, j);
      if (codim[x] + codim[y] != codim[z]) {
        if (!want.empty()) {
          c.ok = false;
          c.detail = "e" + std::to_string(i) + " * e" + std::to_string(j) +
                     " is nonzero off additive codimension";
          return c;
        }
        continue;
      }
      KChain diff = oracle_cup(lp, join, l.bottom(), codim, x, phi(i), y, phi(j));
      for (const auto &[t, a] : want)
        diff = diff + scaled(phi(t), -a);
      if (diff.empty())
        continue;
      const auto n = static_cast<std::size_t>(diff.begin()->first.degree());
      auto &k = complex_at(z);
      auto key = std::pair{z, n};
      auto it = bounds.find(key);
      if (it == bounds.end())
        it = bounds.emplace(key, k.boundaries(n)).first;
      if (!it->second.contains(k.to_vector(diff, n))) {
        c.ok = false;
        c.detail = "e" + std::to_string(i) + " * e" + std::to_string(j) + " = " +
                   combination_string(want) + " disagrees with the oracle";
        return c;
      }
    }
  return c;
}

inline CheckResult check_commutativity(const RingPresentation &r) {
  CheckResult c{"graded commutativity", true, false, ""};
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) {
      const int s = (r.basis()[i].degree * r.basis()[j].degree) % 2 ? -1 : 1;
      Combination flipped;
      for (const auto &[t, a] : r.product(j, i))
        flipped[t] = a * s;
      if (r.normalize(flipped) != r.product(i, j)) {
        c.ok = false;
        c.detail = "e" + std::to_string(i) + ", e" + std::to_string(j);
        return c;
      }
    }
  return c;
}

inline CheckResult check_grading(const RingPresentation &r) {
  CheckResult c{"degree additivity and grading law", true, false, ""};
  const auto &join = r.lattice().join_table();
  for (const auto &[ij, prod] : r.products())
    for (const auto &[t, a] : prod) {
      (void)a;
      const auto &bi = r.basis()[ij.first], &bj = r.basis()[ij.second], &bt = r.basis()[t];
      if (bt.degree != bi.degree + bj.degree || bt.grading != join(bi.grading, bj.grading)) {
        c.ok = false;
        c.detail = "e" + std::to_string(ij.first) + " * e" + std::to_string(ij.second);
        return c;
      }
    }
  return c;
}

inline CheckResult check_associativity(const RingPresentation &r) {
  CheckResult c{"associativity", true, false, ""};
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) {
      const auto &ij = r.product(i, j);
      for (std::size_t k = 0; k < r.size(); ++k) {
        Combination left = r.cup(ij, {{k, 1}});
        Combination right = r.cup({{i, 1}}, r.product(j, k));
        if (left != right) {
          c.ok = false;
          c.detail = "e" + std::to_string(i) + ", e" + std::to_string(j) + ", e" +
                     std::to_string(k);
          return c;
        }
      }
    }
  return c;
}

} // namespace detail

/// Compares the presentation against the brute-force oracle and checks the
/// ring axioms.
inline VerifyReport verify_full(const RingPresentation &r, const VerifyOptions &opt = {}) {
  const auto &l = r.lattice();
  if (l.size() > opt.oracle_limit)
    throw OracleTooLarge(std::to_string(l.size()) + " lattice elements exceed the limit of " +
                         std::to_string(opt.oracle_limit));
  VerifyReport rep;
  IntersectionLattice p(r.lattice_ptr());
  if (opt.ranks)
    rep.checks.push_back(detail::check_ranks(r, p));
  if (opt.products && r.has_products()) {
    if (r.mode() == Mode::Real)
      rep.checks.push_back(CheckResult{"cup products vs oracle cup", true, true,
                                       "the real case presents only the associated graded ring"});
    else if (!p.injective())
      rep.checks.push_back(CheckResult{"cup products vs oracle cup", true, true,
                                       "sigma is not injective"});
    else
      rep.checks.push_back(detail::check_products(r));
  }
  if (opt.axioms && r.has_products()) {
    rep.checks.push_back(detail::check_grading(r));
    rep.checks.push_back(detail::check_commutativity(r));
    rep.checks.push_back(detail::check_associativity(r));
  }
  return rep;
}

/// verify_full with a size guard applied before the lattice is built.
inline VerifyReport verify_full(const Graph &g, int k, int m, Mode mode,
                                const VerifyOptions &opt = {}) {
  auto size = lattice_size(g, k, m);
  if (size > opt.oracle_limit)
    throw OracleTooLarge(std::to_string(size) + " lattice elements exceed the limit of " +
                         std::to_string(opt.oracle_limit));
  bool ring = m > 1 && opt.products;
  RingPresentation r(g, k, m, mode, ring);
  return verify_full(r, opt);
}

} // namespace orbitcell
