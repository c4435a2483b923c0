#include "orbitcell/orbit/bcp.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace orbitcell;

namespace {

std::shared_ptr<const OrbitLattice> lattice(Graph g, int k, int m) {
  return std::make_shared<const OrbitLattice>(std::move(g), k, m);
}

std::size_t element(const OrbitLattice &l, std::vector<std::vector<int>> blocks,
                    std::vector<int> entries) {
  auto p = l.bond().index_of(SetPartition::from_blocks(std::move(blocks)));
  return l.index_of(PartialMatrix{p, std::move(entries)});
}

BCpElement combine(const BCpElement &a, const BCpElement &b, long f) {
  BCpElement out = a;
  for (const auto &[eta, c] : b.coefficients)
    add_to(out, eta, c * f);
  return out;
}

// Two disjoint edges 12 and 34.
Graph two_edges() { return Graph(4, {{0, 1}, {2, 3}}); }

} // namespace

TEST(BCp, RankExamples) {
  auto l = lattice(Graph::complete(2), 3, 1);
  BCp b(l);
  auto theta = element(*l, {{0, 1}}, {-1});
  EXPECT_EQ(b.rank(theta), 2u);
  for (const auto &u : b.basis(theta)) {
    EXPECT_TRUE(b.contains(u));
    EXPECT_EQ(u.coefficients.size(), 2u);
  }
  auto eta = element(*l, {{0, 1}}, {1});
  EXPECT_EQ(b.rank(eta), 1u);
  auto base = b.basis(eta, 0);
  EXPECT_EQ(base.coefficients, (std::map<std::size_t, Integer>{{eta, 1}}));
  BCpElement lone{theta, {{eta, 1}}};
  EXPECT_FALSE(b.contains(lone));
}

TEST(BCp, RanksFollowTheProductFormula) {
  auto l = lattice(Graph::complete(3), 3, 2);
  BCp b(l);
  auto top = element(*l, {{0, 1, 2}}, {-1, -1});
  EXPECT_EQ(b.rank(top), 64u);
  auto mixed = element(*l, {{0, 1}, {2}}, {-1, 2});
  EXPECT_EQ(b.rank(mixed), 2u);
  auto k1 = lattice(Graph::complete(3), 1, 2);
  BCp b1(k1);
  for (std::size_t i = 0; i < k1->size(); ++i)
    EXPECT_EQ(b1.rank(i), k1->rf(i) == 0 ? 1u : 0u);
}

TEST(BCp, BoundarySquaresToZeroAndStaysInside) {
  auto l = lattice(Graph::complete(3), 2, 2);
  BCp b(l);
  for (std::size_t theta = 0; theta < l->size(); ++theta)
    for (const auto &u : b.basis(theta)) {
      ASSERT_TRUE(b.contains(u));
      EXPECT_EQ(b.from_coordinates(theta, b.coordinates(u)), u);
      std::map<std::size_t, BCpElement> dd;
      for (const auto &[psi, part] : b.boundary(u)) {
        EXPECT_TRUE(b.contains(part)) << l->label(psi);
        for (const auto &[chi, q] : b.boundary(part)) {
          auto it = dd.try_emplace(chi, BCpElement{chi, {}}).first;
          it->second = combine(it->second, q, 1);
        }
      }
      for (const auto &[chi, q] : dd)
        EXPECT_TRUE(q.is_zero()) << l->label(chi);
    }
}

TEST(BCp, FormVerifiesOnEveryFiber) {
  for (auto [g, k, m] : {std::tuple{Graph::complete(3), 2, 2}, std::tuple{Graph::complete(3), 3, 1},
                         std::tuple{Graph::path(3), 2, 2}, std::tuple{two_edges(), 3, 1},
                         std::tuple{Graph::complete(2), 4, 2}}) {
    auto l = lattice(g, k, m);
    BCp b(l);
    for (std::size_t p = 0; p < l->bond().partitions.size(); ++p) {
      FiberPoset fib(*l, p);
      if (fib.poset->size() > 60)
        continue;
      auto form = b.form(fib);
      auto z = constant_sheaf<Variance::Co>(fib.poset);
      auto check = verify_cellular_form(form, z, true);
      EXPECT_TRUE(check.ok) << check.what;
      auto built = construct_cellular_form(z);
      ASSERT_TRUE(std::holds_alternative<CellularForm>(built));
      EXPECT_EQ(std::get<CellularForm>(built).piece_rank, form.piece_rank);
    }
  }
}

TEST(Independence, PermSignExample) {
  auto l = lattice(two_edges(), 2, 2);
  auto theta = element(*l, {{0}, {1}, {2, 3}}, {-1, 0});
  auto psi = element(*l, {{0, 1}, {2}, {3}}, {0, -1});
  EXPECT_TRUE(independent(*l, theta, psi));
  EXPECT_EQ(perm_sign(*l, theta, psi), -1);
  EXPECT_EQ(perm_sign(*l, psi, theta), 1);
  auto defined = element(*l, {{0, 1}, {2}, {3}}, {0, 1});
  EXPECT_EQ(perm_sign(*l, defined, theta), 1);
}

TEST(Independence, DependentPairs) {
  auto l = lattice(Graph::complete(3), 2, 1);
  auto a = element(*l, {{0, 1}, {2}}, {-1});
  auto b = element(*l, {{0}, {1, 2}}, {0});
  auto c = element(*l, {{0, 2}, {1}}, {0});
  EXPECT_TRUE(independent(*l, a, b));
  auto ab = l->join_table()(a, b);
  EXPECT_FALSE(independent(*l, ab, c));
  EXPECT_THROW(perm_sign(*l, ab, c), NotIndependent);
  BCp bc(l);
  EXPECT_TRUE(phi_product(*l, bc.basis(ab, 0), bc.basis(c, 0)).is_zero());
  // Two rank-zero elements: the join has no undefined entries.
  for (std::size_t x = 0; x < l->size(); ++x)
    for (std::size_t y = 0; y < l->size(); ++y)
      if (l->rf(x) == 0 && l->rf(y) == 0 && independent(*l, x, y))
        EXPECT_EQ(l->rf(l->join_table()(x, y)), 0);
}

TEST(PhiProduct, Examples) {
  auto l = lattice(two_edges(), 2, 1);
  BCp b(l);
  auto theta = element(*l, {{0, 1}, {2}, {3}}, {-1});
  auto psi = element(*l, {{0}, {1}, {2, 3}}, {1});
  auto u = b.basis(theta, 0);
  auto v = b.basis(psi, 0);
  auto eta1 = element(*l, {{0, 1}, {2}, {3}}, {1});
  auto eta0 = element(*l, {{0, 1}, {2}, {3}}, {0});
  EXPECT_EQ(u.coefficients, (std::map<std::size_t, Integer>{{eta1, 1}, {eta0, -1}}));
  auto prod = phi_product(*l, u, v);
  const auto &join = l->join_table();
  EXPECT_EQ(prod.coefficients,
            (std::map<std::size_t, Integer>{{join(eta1, psi), 1}, {join(eta0, psi), -1}}));
  EXPECT_TRUE(b.contains(prod));
  auto both = phi_product(*l, b.basis(eta1, 0), v);
  EXPECT_EQ(both.coefficients, (std::map<std::size_t, Integer>{{join(eta1, psi), 1}}));
}

TEST(PhiProduct, LeibnizOnRandomIndependentPairs) {
  for (auto [g, k, m] : {std::tuple{two_edges(), 3, 2}, std::tuple{Graph::path(3), 2, 2},
                         std::tuple{Graph::complete(3), 3, 1}}) {
    auto l = lattice(g, k, m);
    BCp b(l);
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, l->size() - 1);
    int tried = 0;
    for (int attempt = 0; attempt < 4000 && tried < 60; ++attempt) {
      auto x = pick(rng), y = pick(rng);
      if (!independent(*l, x, y) || !b.rank(x) || !b.rank(y))
        continue;
      ++tried;
      auto u = b.basis(x, rng() % b.rank(x));
      auto v = b.basis(y, rng() % b.rank(y));
      auto uv = phi_product(*l, u, v);
      ASSERT_TRUE(b.contains(uv));
      std::map<std::size_t, BCpElement> lhs = b.boundary(uv), rhs;
      auto accumulate = [&](const BCpElement &w, long f) {
        auto it = rhs.try_emplace(w.theta, BCpElement{w.theta, {}}).first;
        it->second = combine(it->second, w, f);
      };
      for (const auto &[psi, part] : b.boundary(u))
        accumulate(phi_product(*l, part, v), 1);
      for (const auto &[psi, part] : b.boundary(v))
        accumulate(phi_product(*l, u, part), l->rf(x) % 2 ? -1 : 1);
      for (auto it = rhs.begin(); it != rhs.end();)
        it = it->second.is_zero() ? rhs.erase(it) : std::next(it);
      EXPECT_EQ(lhs, rhs) << l->label(x) << " * " << l->label(y);
    }
    EXPECT_GT(tried, 10);
  }
}
