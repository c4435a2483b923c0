#include "helpers.hpp"
#include "orbitcell/os/os_algebra.hpp"

#include <gtest/gtest.h>

using namespace orbitcell;
using namespace testing_helpers;

namespace {

Monomial mono(const OSAlgebra &a, std::initializer_list<const char *> labels) {
  Monomial m = 0;
  for (const char *l : labels)
    for (std::size_t i = 0; i < a.atoms().size(); ++i)
      if (a.lattice().label(a.atoms()[i]) == l)
        m |= Monomial{1} << i;
  return m;
}

std::size_t degree(Monomial m) { return static_cast<std::size_t>(std::popcount(m)); }

OSElement times(const OSElement &a, long f) {
  OSElement out;
  for (const auto &[m, x] : a)
    out.emplace(m, x * f);
  return out;
}

OSElement plus(OSElement a, const OSElement &b) {
  for (const auto &[m, x] : b) {
    a[m] += x;
    if (a[m] == 0)
      a.erase(m);
  }
  return a;
}

} // namespace

TEST(NBC, PartitionLatticeThree) {
  OSAlgebra a(partition_lattice(3));
  auto top = a.lattice().index_of("aaa");
  ASSERT_EQ(a.basis(top).size(), 2u);
  EXPECT_EQ(a.basis(top)[0], mono(a, {"aab", "aba"}));
  EXPECT_EQ(a.basis(top)[1], mono(a, {"aab", "abb"}));
}

TEST(NBC, Ranks) {
  EXPECT_EQ(OSAlgebra(partition_lattice(4)).ranks_by_degree(),
            (std::vector<std::size_t>{1, 6, 11, 6}));
  EXPECT_EQ(OSAlgebra(partition_lattice(5)).ranks_by_degree(),
            (std::vector<std::size_t>{1, 10, 35, 50, 24}));
  EXPECT_EQ(OSAlgebra(boolean_lattice(2)).ranks_by_degree(),
            (std::vector<std::size_t>{1, 2, 1}));
}

TEST(NBC, NotGeometric) {
  EXPECT_THROW(OSAlgebra(chain_poset(3)), NotGeometric);
  auto pentagon = std::make_shared<Poset>(Poset::from_covers(
      {"0", "a", "b", "c", "1"}, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}}));
  EXPECT_THROW(OSAlgebra{pentagon}, NotGeometric);
}

TEST(Multiply, Examples) {
  OSAlgebra a(partition_lattice(3));
  auto e12 = mono(a, {"aab"}), e13 = mono(a, {"aba"}), e23 = mono(a, {"abb"});
  EXPECT_EQ(a.multiply(0, e23), (OSElement{{e23, 1}}));
  EXPECT_EQ(a.multiply(e13, e23), (OSElement{{e12 | e23, 1}, {e12 | e13, -1}}));
  EXPECT_TRUE(a.multiply(e12, e12).empty());
  EXPECT_EQ(a.multiply(e13, e12), (OSElement{{e12 | e13, -1}}));
}

TEST(Multiply, AlgebraLaws) {
  OSAlgebra a(partition_lattice(4));
  std::vector<Monomial> all;
  for (std::size_t x = 0; x < a.lattice().size(); ++x)
    for (Monomial m : a.basis(x))
      all.push_back(m);
  for (Monomial s : all)
    for (Monomial t : all) {
      auto st = a.multiply(s, t), ts = a.multiply(t, s);
      EXPECT_EQ(st, times(ts, degree(s) * degree(t) % 2 ? -1 : 1));
      // Leibniz
      OSElement lhs;
      for (const auto &[u, x] : st)
        lhs = plus(lhs, times(OSAlgebra::differential(u), x.get_si()));
      OSElement rhs = plus(a.multiply(OSAlgebra::differential(s), OSElement{{t, 1}}),
                           times(a.multiply(OSElement{{s, 1}}, OSAlgebra::differential(t)),
                                 degree(s) % 2 ? -1 : 1));
      EXPECT_EQ(lhs, rhs);
    }
  for (std::size_t i = 0; i < all.size(); i += 3)
    for (Monomial t : all)
      for (std::size_t k = 1; k < all.size(); k += 4) {
        OSElement s{{all[i], 1}}, u{{all[k], 1}}, tt{{t, 1}};
        EXPECT_EQ(a.multiply(a.multiply(s, tt), u), a.multiply(s, a.multiply(tt, u)));
      }
}

TEST(OSForm, VerifiesAsCellularForm) {
  for (int n = 3; n <= 5; ++n) {
    OSAlgebra a(partition_lattice(n));
    auto g = delta_at<Variance::Co>(a.lattice_ptr(), *a.lattice().minimum());
    auto f = a.as_cellular_form();
    EXPECT_TRUE(verify_cellular_form(f, g));
    if (n <= 4)
      EXPECT_TRUE(verify_cellular_form(f, g, true));
  }
}

TEST(OSForm, JoinMorphismIsProduct) {
  for (int n = 2; n <= 4; ++n) {
    OSAlgebra a(partition_lattice(n));
    const Poset &l = a.lattice();
    auto jp = join_product(a.as_cellular_form());
    for (std::size_t x = 0; x < l.size(); ++x)
      for (std::size_t y = 0; y < l.size(); ++y) {
        const IntMatrix &m = jp.at(x, y);
        const std::size_t z = l.join(x, y);
        for (std::size_t i = 0; i < a.basis(x).size(); ++i)
          for (std::size_t j = 0; j < a.basis(y).size(); ++j) {
            IntVector expect(a.basis(z).size());
            for (const auto &[u, c] : a.multiply(a.basis(x)[i], a.basis(y)[j])) {
              auto [w, k] = a.position(u);
              ASSERT_EQ(w, z);
              expect[k] = c;
            }
            EXPECT_EQ(m.column(i * a.basis(y).size() + j), expect);
          }
      }
  }
}

TEST(OSForm, AgreesWithConstructedForm) {
  for (auto lat : {partition_lattice(3), partition_lattice(4), boolean_lattice(2)}) {
    OSAlgebra a(lat);
    auto g = std::make_shared<Copresheaf>(delta_at<Variance::Co>(lat, *lat->minimum()));
    auto os = a.as_cellular_form();
    auto built = std::get<CellularForm>(construct_cellular_form(*g));
    EXPECT_EQ(os.piece_rank, built.piece_rank);
    std::vector<IntMatrix> id;
    for (std::size_t x = 0; x < lat->size(); ++x)
      id.push_back(IntMatrix::identity(g->rank(x)));
    PosetMap idm{lat, lat, {}};
    for (std::size_t x = 0; x < lat->size(); ++x)
      idm.image.push_back(x);
    CopresheafMorphism t{g, g, idm, id};
    auto to = form_morphism(t, os, built), from = form_morphism(t, built, os);
    for (std::size_t x = 0; x < lat->size(); ++x)
      EXPECT_EQ(from.component[x] * to.component[x], IntMatrix::identity(os.piece_rank[x]));
    // products agree after the change of basis
    auto po = join_product(os), pb = join_product(built);
    for (std::size_t x = 0; x < lat->size(); ++x)
      for (std::size_t y = 0; y < lat->size(); ++y) {
        std::size_t z = lat->join(x, y);
        EXPECT_EQ(to.component[z] * po.at(x, y),
                  pb.at(x, y) * IntMatrix::kronecker(to.component[x], to.component[y]));
      }
  }
}
