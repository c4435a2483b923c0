#include "helpers.hpp"
#include "orbitcell/tor/goresky_macpherson.hpp"

#include <gtest/gtest.h>

using namespace orbitcell;
using namespace testing_helpers;

namespace {

long euler(const std::vector<AbelianGroup> &h) {
  long e = 0;
  for (std::size_t n = 0; n < h.size(); ++n)
    e += (n % 2 ? -1 : 1) * static_cast<long>(h[n].betti);
  return e;
}

KChain random_chain(std::mt19937 &rng, const KComplex &k, std::size_t n) {
  KChain c;
  const auto &cells = k.cells(n);
  for (int i = 0; i < 3 && !cells.empty(); ++i)
    add_to(c, cells[rng() % cells.size()], Integer(int(rng() % 5) - 2));
  return c;
}

} // namespace

TEST(KComplex, Point) {
  auto pt = chain_poset(1);
  auto g = constant_sheaf<Variance::Co>(pt);
  auto f = constant_sheaf<Variance::Contra>(pt);
  auto h = KComplex(g, f).tor();
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].to_string(), "Z");
}

TEST(KComplex, PartitionLatticeTop) {
  auto p3 = partition_lattice(3);
  auto g = delta_at<Variance::Co>(p3, *p3->minimum());
  auto f = delta_at<Variance::Contra>(p3, *p3->maximum());
  auto h = KComplex(g, f).tor();
  ASSERT_EQ(h.size(), 3u);
  EXPECT_TRUE(h[0].is_zero());
  EXPECT_TRUE(h[1].is_zero());
  EXPECT_EQ(h[2].to_string(), "Z^2");
}

TEST(KComplex, IntervalEulerCharacteristicIsMoebius) {
  for (int n = 3; n <= 4; ++n) {
    auto p = partition_lattice(n);
    for (std::size_t y = 0; y < p->size(); ++y)
      for (std::size_t x = 0; x < p->size(); ++x) {
        if (!p->leq(y, x))
          continue;
        auto g = delta_at<Variance::Co>(p, y);
        auto f = delta_at<Variance::Contra>(p, x);
        EXPECT_EQ(Integer(euler(KComplex(g, f).tor())), p->moebius(y, x));
      }
  }
}

TEST(KComplex, OracleLimit) {
  auto p = partition_lattice(5);
  auto g = delta_at<Variance::Co>(p, 0);
  auto f = delta_at<Variance::Contra>(p, 0);
  EXPECT_THROW(KComplex(g, f, 10), OracleTooLarge);
}

TEST(Shuffle, OneOne) {
  auto s = shuffles(1, 1);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].sign, 1);
  EXPECT_EQ(s[1].sign, -1);
  EXPECT_EQ(shuffles(2, 3).size(), 10u);
}

TEST(Cross, DegreeZero) {
  KChain a{{KCell{{2}, 0, 0}, 3}}, b{{KCell{{1}, 0, 0}, 5}};
  auto c = cross_chain(a, b, 4);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.begin()->first.chain, (Chain{9}));
  EXPECT_EQ(c.begin()->second, 15);
}

TEST(Cross, Leibniz) {
  std::mt19937 rng(17);
  auto p = boolean_lattice(2);
  std::map<CoverKey, IntMatrix> twist;
  for (auto [lo, hi] : p->cover_pairs())
    twist.emplace(CoverKey{lo, hi}, IntMatrix{{1, 0}, {0, 1}});
  twist[{0, 1}] = IntMatrix{{0, 1}, {1, 0}};
  twist[{2, 3}] = IntMatrix{{0, 1}, {1, 0}};
  Copresheaf g(p, {2, 2, 2, 2}, twist);
  auto f = constant_sheaf<Variance::Contra>(p);
  auto q = partition_lattice(3);
  auto h = constant_sheaf<Variance::Co>(q);
  auto e = constant_sheaf<Variance::Contra>(q, 2);
  KComplex kp(g, f), kq(h, e);
  ProductSheafView<Variance::Co> gh{g, h};
  ProductSheafView<Variance::Contra> fe{f, e};
  auto hr = [&](std::size_t y) { return h.rank(y); };
  auto er = [&](std::size_t y) { return e.rank(y); };
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t dp = rng() % kp.degrees(), dq = rng() % kq.degrees();
    KChain a = random_chain(rng, kp, dp), b = random_chain(rng, kq, dq);
    KChain lhs = k_boundary(cross_chain(a, b, q->size(), hr, er), gh, fe);
    KChain rhs = cross_chain(kp.boundary(a), b, q->size(), hr, er) +
                 scaled(cross_chain(a, kq.boundary(b), q->size(), hr, er),
                        dp % 2 ? -1 : 1);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Induced, IdentityAndZero) {
  auto p3 = partition_lattice(3);
  PosetMap id{p3, p3, {0, 1, 2, 3, 4}};
  auto g = std::make_shared<Copresheaf>(delta_at<Variance::Co>(p3, *p3->minimum()));
  auto f = std::make_shared<Presheaf>(delta_at<Variance::Contra>(p3, *p3->maximum()));
  std::vector<IntMatrix> ones, zeros;
  for (std::size_t x = 0; x < 5; ++x) {
    ones.push_back(IntMatrix::identity(f->rank(x)));
    zeros.push_back(IntMatrix(f->rank(x), f->rank(x)));
  }
  std::vector<IntMatrix> gid;
  for (std::size_t x = 0; x < 5; ++x)
    gid.push_back(IntMatrix::identity(g->rank(x)));
  CopresheafMorphism t{g, g, id, gid};
  PresheafMorphism k{f, f, id, ones}, k0{f, f, id, zeros};
  KComplex kc(*g, *f);
  for (const auto &cell : kc.cells(2)) {
    KChain c{{cell, 1}};
    EXPECT_EQ(induced_tor_map(c, t, k), c);
    EXPECT_TRUE(induced_tor_map(c, t, k0).empty());
  }
}

TEST(GM, Examples) {
  auto two = std::make_shared<Poset>(Poset::from_covers({"C2", "pt"}, {{0, 1}}));
  auto gm = gm_cohomology(two, 0, {0, 2}, Mode::Complex);
  EXPECT_EQ(gm.poincare(), (std::vector<std::size_t>{1, 0, 0, 1}));

  auto p3 = partition_lattice(3);
  std::vector<int> codim;
  for (std::size_t x = 0; x < p3->size(); ++x)
    codim.push_back(p3->rank(x));
  gm = gm_cohomology(p3, *p3->minimum(), codim, Mode::Complex);
  EXPECT_EQ(gm.poincare(), (std::vector<std::size_t>{1, 3, 2}));

  auto pt = chain_poset(1);
  EXPECT_EQ(gm_cohomology(pt, 0, {0}, Mode::Complex).poincare(),
            (std::vector<std::size_t>{1}));
  EXPECT_THROW(gm_cohomology(partition_lattice(5), 0, std::vector<int>(52, 0),
                             Mode::Complex, 20),
               OracleTooLarge);
}

TEST(OracleCup, PartitionLattice) {
  auto p3 = partition_lattice(3);
  JoinTable join(*p3);
  std::vector<int> codim;
  for (std::size_t x = 0; x < p3->size(); ++x)
    codim.push_back(p3->rank(x));
  const auto bot = *p3->minimum(), top = *p3->maximum();
  auto a = p3->index_of("aab"), b = p3->index_of("aba");
  KChain ca{{KCell{{std::uint32_t(bot), std::uint32_t(a)}, 0, 0}, 1}};
  KChain cb{{KCell{{std::uint32_t(bot), std::uint32_t(b)}, 0, 0}, 1}};
  EXPECT_TRUE(oracle_cup(p3, join, bot, codim, a, {}, b, cb).empty());
  EXPECT_TRUE(oracle_cup(p3, join, bot, codim, a, ca, a, ca).empty());
  auto prod = oracle_cup(p3, join, bot, codim, a, ca, b, cb);
  auto g = delta_at<Variance::Co>(p3, bot);
  auto f = delta_at<Variance::Contra>(p3, top);
  KComplex k(g, f);
  EXPECT_TRUE(k.is_cycle(prod));
  EXPECT_FALSE(k.boundaries(2).contains(k.to_vector(prod, 2)));
  KChain open{{KCell{{std::uint32_t(bot), std::uint32_t(a), std::uint32_t(top)}, 0, 0}, 1}};
  EXPECT_THROW(oracle_cup(p3, join, bot, codim, top, open, b, cb), NotCycle);
}
