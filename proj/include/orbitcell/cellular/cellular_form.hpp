#pragma once

#include "orbitcell/exact/chain_complex.hpp"
#include "orbitcell/sheaf/sheaf.hpp"
#include "orbitcell/tor/k_complex.hpp"

#include <variant>

namespace orbitcell {

/// Pieces Lambda_x with differentials Lambda_x -> Lambda_y on covers y < x.
/// At rank 0 the piece is G(x) with its given basis.
struct CellularForm {
  std::shared_ptr<const Poset> base;
  std::vector<std::size_t> piece_rank;
  std::map<CoverKey, IntMatrix> differential;

  [[nodiscard]] const Poset &poset() const { return *base; }

  /// Differential Lambda_x -> Lambda_y for the cover y < x.
  [[nodiscard]] IntMatrix d(std::size_t y, std::size_t x) const {
    auto it = differential.find({y, x});
    if (it != differential.end())
      return it->second;
    return IntMatrix(piece_rank[y], piece_rank[x]);
  }

  /// Offsets of the pieces in `elems` inside their direct sum.
  [[nodiscard]] std::vector<std::size_t>
  offsets(const std::vector<std::size_t> &elems) const {
    std::vector<std::size_t> off{0};
    for (std::size_t e : elems)
      off.push_back(off.back() + piece_rank[e]);
    return off;
  }

  /// Differential of Lambda_x stacked over its lower covers.
  [[nodiscard]] IntMatrix stacked_d(std::size_t x) const {
    const auto &lo = base->down_covers(x);
    auto off = offsets(lo);
    IntMatrix e(off.back(), piece_rank[x]);
    for (std::size_t i = 0; i < lo.size(); ++i)
      e.set_block(off[i], 0, d(lo[i], x));
    return e;
  }
};

enum class CellularStep { Surjectivity, KernelSum, PositiveHomology };

inline const char *to_string(CellularStep s) {
  switch (s) {
  case CellularStep::Surjectivity:
    return "surjectivity";
  case CellularStep::KernelSum:
    return "kernel sum";
  case CellularStep::PositiveHomology:
    return "positive homology";
  }
  return "";
}

/// Verdict of the construction: where and why it stopped.
struct NotCellular {
  std::size_t element = 0;
  std::string label;
  CellularStep step = CellularStep::Surjectivity;
  std::string detail;
};

namespace detail {

inline std::vector<std::size_t> elements_by_rank(const Poset &p) {
  std::vector<std::size_t> order(p.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return p.rank(a) < p.rank(b); });
  return order;
}

inline std::vector<std::size_t> below_with_rank(const Poset &p, std::size_t x,
                                                int r) {
  std::vector<std::size_t> out;
  const Bits &dn = p.down(x);
  for (std::size_t y = dn.find_first(); y != Bits::npos; y = dn.find_next(y))
    if (y != x && p.rank(y) == r)
      out.push_back(y);
  return out;
}

/// Sum of G(y) -> G(x) over rank-0 elements y below x.
inline IntMatrix base_map(const Copresheaf &g, std::size_t x,
                          const std::vector<std::size_t> &zeros) {
  std::size_t cols = 0;
  for (std::size_t y : zeros)
    cols += g.rank(y);
  IntMatrix a(g.rank(x), cols);
  std::size_t c = 0;
  for (std::size_t y : zeros) {
    a.set_block(0, c, g.map(y, x));
    c += g.rank(y);
  }
  return a;
}

/// Kernel of the differential from the pieces `upper` to the pieces `lower`.
inline IntMatrix layer_matrix(const CellularForm &f,
                              const std::vector<std::size_t> &upper,
                              const std::vector<std::size_t> &lower) {
  auto uo = f.offsets(upper), lo = f.offsets(lower);
  IntMatrix b(lo.back(), uo.back());
  for (std::size_t j = 0; j < upper.size(); ++j)
    for (std::size_t i = 0; i < lower.size(); ++i)
      if (f.poset().covers(lower[i], upper[j]))
        b.set_block(lo[i], uo[j], f.d(lower[i], upper[j]));
  return b;
}

/// Store Lambda_x = span of `ker` (vectors over the pieces `lower`).
inline void install_piece(CellularForm &f, std::size_t x,
                          const std::vector<IntVector> &ker,
                          const std::vector<std::size_t> &lower) {
  f.piece_rank[x] = ker.size();
  auto off = f.offsets(lower);
  for (std::size_t i = 0; i < lower.size(); ++i) {
    IntMatrix block(f.piece_rank[lower[i]], ker.size());
    for (std::size_t c = 0; c < ker.size(); ++c)
      for (std::size_t r = 0; r < block.rows(); ++r)
        block(r, c) = ker[c][off[i] + r];
    if (!block.is_zero())
      f.differential[{lower[i], x}] = std::move(block);
  }
}

/// Chain complex of the pieces in `subset`, degree = rank.
inline ChainComplex restricted_chain(const CellularForm &f, const Bits &subset) {
  const Poset &p = f.poset();
  int top = -1;
  for (std::size_t x = subset.find_first(); x != Bits::npos; x = subset.find_next(x))
    top = std::max(top, p.rank(x));
  std::vector<std::vector<std::size_t>> layer(top + 1);
  for (std::size_t x = subset.find_first(); x != Bits::npos; x = subset.find_next(x))
    layer[p.rank(x)].push_back(x);
  std::vector<std::size_t> dims;
  for (const auto &l : layer)
    dims.push_back(f.offsets(l).back());
  ChainComplex c(dims);
  for (int r = 1; r <= top; ++r)
    c.set_boundary(r, SparseMatrix::from_dense(layer_matrix(f, layer[r], layer[r - 1])));
  return c;
}

inline bool same_lattice(const std::vector<IntVector> &a,
                         const std::vector<IntVector> &b) {
  LatticeBasis la, lb;
  for (const auto &v : a)
    la.insert(to_sparse(v));
  for (const auto &v : b)
    lb.insert(to_sparse(v));
  if (la.rank() != lb.rank())
    return false;
  for (const auto &v : a)
    if (!lb.contains(to_sparse(v)))
      return false;
  for (const auto &v : b)
    if (!la.contains(to_sparse(v)))
      return false;
  return true;
}

inline std::vector<IntVector> columns_of(const IntMatrix &m) {
  std::vector<IntVector> out;
  for (std::size_t c = 0; c < m.cols(); ++c)
    out.push_back(m.column(c));
  return out;
}

} // namespace detail

/// Builds the cellular form of (P, G) rank by rank, or reports where it fails.
inline std::variant<CellularForm, NotCellular>
construct_cellular_form(const Copresheaf &g) {
  const Poset &p = g.poset();
  if (!p.graded())
    throw NotGraded("cellular forms need a ranked poset");
  CellularForm f{g.poset_ptr(), std::vector<std::size_t>(p.size(), 0), {}};
  auto fail = [&](std::size_t x, CellularStep s, std::string why) {
    return NotCellular{x, p.label(x), s, std::move(why)};
  };
  for (std::size_t x : detail::elements_by_rank(p)) {
    const int r = p.rank(x);
    if (r == 0) {
      f.piece_rank[x] = g.rank(x);
      continue;
    }
    auto zeros = detail::below_with_rank(p, x, 0);
    IntMatrix a = detail::base_map(g, x, zeros);
    if (!is_surjective(a))
      return fail(x, CellularStep::Surjectivity,
                  "rank-0 values below do not generate the value");
    auto ker = kernel_basis(a);
    if (r == 1) {
      detail::install_piece(f, x, ker, zeros);
      continue;
    }
    // kernel sum
    LatticeBasis sum;
    auto zoff = f.offsets(zeros);
    for (std::size_t x1 : detail::below_with_rank(p, x, 1)) {
      IntMatrix e = f.stacked_d(x1);
      const auto &lo = p.down_covers(x1);
      for (std::size_t c = 0; c < e.cols(); ++c) {
        SparseAccumulator acc;
        std::size_t row = 0;
        for (std::size_t y : lo) {
          auto pos = std::lower_bound(zeros.begin(), zeros.end(), y) - zeros.begin();
          for (std::size_t k = 0; k < f.piece_rank[y]; ++k, ++row)
            acc.add(static_cast<std::uint32_t>(zoff[pos] + k), e(row, c));
        }
        sum.insert(acc.take());
      }
    }
    for (const auto &v : ker)
      if (!sum.contains(to_sparse(v)))
        return fail(x, CellularStep::KernelSum,
                    "kernel is not generated by rank-1 pieces below");
    // positive homology below x in degrees 1 .. r-2
    if (r >= 3) {
      Bits strict = p.down(x);
      strict.reset(x);
      auto h = homology(detail::restricted_chain(f, strict));
      for (int i = 1; i <= r - 2 && i < static_cast<int>(h.size()); ++i)
        if (!h[i].is_zero())
          return fail(x, CellularStep::PositiveHomology,
                      "H_" + std::to_string(i) + " below is " + h[i].to_string());
    }
    const auto &upper = p.down_covers(x);
    auto lower = detail::below_with_rank(p, x, r - 2);
    detail::install_piece(
        f, x, kernel_basis(detail::layer_matrix(f, upper, lower)), upper);
  }
  return f;
}

/// Result of a form check: ok, or the first violation found.
struct FormCheck {
  bool ok = true;
  std::size_t element = 0;
  std::string what;
  explicit operator bool() const { return ok; }
};

/// Checks a candidate form against (P, G). The fast check assumes (P, G) is
/// cellular; the slow one tests the full definition on every lower interval.
inline FormCheck verify_cellular_form(const CellularForm &f, const Copresheaf &g,
                                      bool slow = false) {
  const Poset &p = f.poset();
  auto bad = [&](std::size_t x, std::string w) {
    return FormCheck{false, x, p.label(x) + ": " + w};
  };
  if (&p != &g.poset() && p.size() != g.poset().size())
    return FormCheck{false, 0, "form and copresheaf live on different posets"};
  for (const auto &[key, m] : f.differential) {
    if (!p.covers(key.first, key.second))
      return bad(key.second, "differential off a cover");
    if (m.rows() != f.piece_rank[key.first] || m.cols() != f.piece_rank[key.second])
      return bad(key.second, "differential has the wrong shape");
  }
  for (std::size_t x = 0; x < p.size(); ++x) {
    const int r = p.rank(x);
    if (r == 0) {
      if (f.piece_rank[x] != g.rank(x))
        return bad(x, "rank-0 piece differs from the value");
      continue;
    }
    if (r >= 2) {
      auto lower = detail::below_with_rank(p, x, r - 2);
      IntMatrix dd = detail::layer_matrix(f, p.down_covers(x), lower) * f.stacked_d(x);
      if (!dd.is_zero())
        return bad(x, "differential squares to nonzero");
    }
    IntMatrix e = f.stacked_d(x);
    if (invariant_factors(e).size() != e.cols())
      return bad(x, "differential is not injective");
    std::vector<IntVector> target;
    if (r == 1)
      target = kernel_basis(detail::base_map(g, x, p.down_covers(x)));
    else
      target = kernel_basis(detail::layer_matrix(
          f, p.down_covers(x), detail::below_with_rank(p, x, r - 2)));
    if (!detail::same_lattice(detail::columns_of(e), target))
      return bad(x, "image differs from the kernel below");
  }
  if (!slow)
    return {};
  for (std::size_t x = 0; x < p.size(); ++x) {
    auto h = homology(detail::restricted_chain(f, p.down(x)));
    for (std::size_t i = 1; i < h.size(); ++i)
      if (!h[i].is_zero())
        return bad(x, "positive homology on the lower interval");
    auto zeros = detail::below_with_rank(p, x, 0);
    if (p.rank(x) == 0)
      continue;
    IntMatrix a = detail::base_map(g, x, zeros);
    if (!is_surjective(a))
      return bad(x, "H_0 does not map onto the value");
    std::vector<IntVector> im;
    auto ones = detail::below_with_rank(p, x, 1);
    if (p.rank(x) == 1)
      ones.push_back(x);
    for (std::size_t x1 : ones) {
      auto zoff = f.offsets(zeros);
      IntMatrix e = f.stacked_d(x1);
      std::size_t row = 0;
      std::vector<IntVector> cols(e.cols(), IntVector(zoff.back()));
      for (std::size_t y : p.down_covers(x1)) {
        auto pos = std::lower_bound(zeros.begin(), zeros.end(), y) - zeros.begin();
        for (std::size_t k = 0; k < f.piece_rank[y]; ++k, ++row)
          for (std::size_t c = 0; c < e.cols(); ++c)
            cols[c][zoff[pos] + k] = e(row, c);
      }
      im.insert(im.end(), cols.begin(), cols.end());
    }
    if (!detail::same_lattice(im, kernel_basis(a)))
      return bad(x, "H_0 differs from the value");
  }
  return {};
}

/// Basis element of a cellular chain complex.
struct CellularCell {
  std::size_t element;
  std::size_t piece_index;
  std::size_t value_index;
};

/// Lambda tensored with F over P: degree r holds the rank-r pieces.
struct CellularChain {
  ChainComplex complex;
  std::vector<std::vector<CellularCell>> cells;
};

inline CellularChain cellular_chain(const CellularForm &f, const Presheaf &fs) {
  const Poset &p = f.poset();
  CellularChain out;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> index;
  int top = p.size() ? p.max_rank() : -1;
  out.cells.resize(top + 1);
  for (std::size_t x : detail::elements_by_rank(p))
    for (std::size_t a = 0; a < f.piece_rank[x]; ++a)
      for (std::size_t c = 0; c < fs.rank(x); ++c) {
        auto &level = out.cells[p.rank(x)];
        index[{x, a, c}] = level.size();
        level.push_back({x, a, c});
      }
  std::vector<std::size_t> dims;
  for (const auto &l : out.cells)
    dims.push_back(l.size());
  out.complex = ChainComplex(dims);
  for (int r = 1; r <= top; ++r) {
    SparseMatrix d(dims[r - 1], dims[r]);
    for (std::size_t j = 0; j < dims[r]; ++j) {
      const auto &cell = out.cells[r][j];
      SparseAccumulator acc;
      for (std::size_t y : p.down_covers(cell.element)) {
        IntMatrix dy = f.d(y, cell.element);
        IntMatrix fm = fs.map(y, cell.element);
        for (std::size_t b = 0; b < dy.rows(); ++b) {
          if (dy(b, cell.piece_index) == 0)
            continue;
          for (std::size_t c2 = 0; c2 < fm.rows(); ++c2)
            acc.add(static_cast<std::uint32_t>(index.at({y, b, c2})),
                    dy(b, cell.piece_index) * fm(c2, cell.value_index));
        }
      }
      d.set_col(j, acc.take());
    }
    out.complex.set_boundary(r, std::move(d));
  }
  return out;
}

/// Graded map of forms, one component Lambda_x -> Lambda_{f(x)} per x.
struct FormMorphism {
  std::vector<IntMatrix> component;
};

/// The unique morphism of forms extending t on rank-0 pieces.
inline FormMorphism form_morphism(const CopresheafMorphism &t,
                                  const CellularForm &lp, const CellularForm &lq) {
  const Poset &p = lp.poset(), &q = lq.poset();
  const PosetMap &f = t.f;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (q.rank(f(x)) > p.rank(x))
      throw PreconditionFailed("map raises the rank of " + p.label(x));
  FormMorphism out;
  out.component.resize(p.size());
  std::map<std::size_t, UniqueSolver> solvers;
  for (std::size_t x : detail::elements_by_rank(p)) {
    const std::size_t fx = f(x);
    const int r = p.rank(x);
    if (r == 0) {
      out.component[x] = t.component[x];
      continue;
    }
    out.component[x] = IntMatrix(lq.piece_rank[fx], lp.piece_rank[x]);
    if (q.rank(fx) < r || lp.piece_rank[x] == 0 || lq.piece_rank[fx] == 0)
      continue;
    const auto &qlo = q.down_covers(fx);
    auto qoff = lq.offsets(qlo);
    auto it = solvers.find(fx);
    if (it == solvers.end())
      it = solvers.emplace(fx, UniqueSolver(lq.stacked_d(fx))).first;
    for (std::size_t a = 0; a < lp.piece_rank[x]; ++a) {
      IntVector v(qoff.back());
      for (std::size_t y : p.down_covers(x)) {
        const std::size_t fy = f(y);
        if (q.rank(fy) != r - 1)
          continue;
        IntVector img = out.component[y].apply(lp.d(y, x).column(a));
        auto pos = std::lower_bound(qlo.begin(), qlo.end(), fy) - qlo.begin();
        for (std::size_t k = 0; k < img.size(); ++k)
          v[qoff[pos] + k] += img[k];
      }
      IntVector sol = it->second.solve(v);
      for (std::size_t k = 0; k < sol.size(); ++k)
        out.component[x](k, a) = sol[k];
    }
  }
  return out;
}

/// Tensor product of forms on P x Q with the Koszul sign on the second factor.
inline CellularForm product_form(const CellularForm &lp, const CellularForm &lq) {
  const Poset &p = lp.poset(), &q = lq.poset();
  auto pq = std::make_shared<Poset>(product_poset(p, q));
  const std::size_t m = q.size();
  CellularForm f{pq, std::vector<std::size_t>(pq->size()), {}};
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < m; ++y) {
      f.piece_rank[x * m + y] = lp.piece_rank[x] * lq.piece_rank[y];
      for (std::size_t x2 : p.down_covers(x)) {
        IntMatrix d = IntMatrix::kronecker(lp.d(x2, x), IntMatrix::identity(lq.piece_rank[y]));
        if (!d.is_zero())
          f.differential[{x2 * m + y, x * m + y}] = std::move(d);
      }
      for (std::size_t y2 : q.down_covers(y)) {
        IntMatrix d = IntMatrix::kronecker(IntMatrix::identity(lp.piece_rank[x]), lq.d(y2, y));
        if (p.rank(x) % 2)
          d = IntMatrix(d.rows(), d.cols()) - d;
        if (!d.is_zero())
          f.differential[{x * m + y2, x * m + y}] = std::move(d);
      }
    }
  return f;
}

/// Multiplication of a form of (L, delta at the bottom) induced by the join.
struct JoinProduct {
  CellularForm square;
  FormMorphism phi;
  std::size_t n = 0;

  /// Structure matrix Lambda_x (x) Lambda_y -> Lambda_{x v y}.
  [[nodiscard]] const IntMatrix &at(std::size_t x, std::size_t y) const {
    return phi.component[x * n + y];
  }
};

inline JoinProduct join_product(const CellularForm &lam) {
  const Poset &p = lam.poset();
  const std::size_t n = p.size(), bottom = *p.minimum();
  JoinProduct out{product_form(lam, lam), {}, n};
  auto g = std::make_shared<Copresheaf>(delta_at<Variance::Co>(lam.base, bottom));
  auto gg = std::make_shared<Copresheaf>(
      product_sheaf<Variance::Co>(out.square.base, *g, *g));
  PosetMap join{out.square.base, lam.base, {}};
  std::vector<IntMatrix> comp;
  for (std::size_t v = 0; v < n * n; ++v) {
    join.image.push_back(p.join(v / n, v % n));
    comp.emplace_back(g->rank(join.image.back()), gg->rank(v));
  }
  comp[bottom * n + bottom] = IntMatrix::identity(1);
  CopresheafMorphism t{gg, g, join, comp};
  t.validate();
  out.phi = form_morphism(t, out.square, lam);
  return out;
}

/// K-cycle in K(P, G; delta_x Z) representing a in Lambda_x:
/// psi(a) = (-1)^{r(x)} psi(d a) * x, psi = identity on rank 0.
class FormCycles {
public:
  explicit FormCycles(const CellularForm &f) : f_(&f) {}

  [[nodiscard]] KChain cycle(std::size_t x, const IntVector &a) {
    KChain out;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0)
        out = out + scaled(basis_cycle(x, i), a[i]);
    return out;
  }

  const KChain &basis_cycle(std::size_t x, std::size_t i) {
    auto key = std::pair{x, i};
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    const Poset &p = f_->poset();
    KChain out;
    if (p.rank(x) == 0) {
      out.emplace(KCell{{static_cast<std::uint32_t>(x)}, static_cast<std::uint32_t>(i), 0}, 1);
    } else {
      const Integer sign = p.rank(x) % 2 ? -1 : 1;
      for (std::size_t y : p.down_covers(x)) {
        IntMatrix dy = f_->d(y, x);
        for (std::size_t b = 0; b < dy.rows(); ++b) {
          if (dy(b, i) == 0)
            continue;
          for (const auto &[cell, c] : basis_cycle(y, b)) {
            KCell ext = cell;
            ext.chain.push_back(static_cast<std::uint32_t>(x));
            add_to(out, ext, sign * dy(b, i) * c);
          }
        }
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

private:
  const CellularForm *f_;
  std::map<std::pair<std::size_t, std::size_t>, KChain> memo_;
};

} // namespace orbitcell
