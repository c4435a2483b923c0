#include "helpers.hpp"
#include "orbitcell/sheaf/sheaf.hpp"

#include <gtest/gtest.h>

using namespace orbitcell;
using namespace testing_helpers;

TEST(Delta, Examples) {
  auto c = chain_poset(3);
  auto d = delta_at<Variance::Contra>(c, 1);
  EXPECT_EQ(d.ranks(), (std::vector<std::size_t>{0, 1, 0}));
  auto k = constant_sheaf<Variance::Co>(c);
  EXPECT_EQ(k.map(0, 2), IntMatrix::identity(1));
  Bits ends(3);
  ends.set(0);
  ends.set(2);
  EXPECT_THROW(delta_sheaf<Variance::Co>(c, ends), NotConvex);
}

TEST(Sheaf, FunctorialityChecked) {
  auto b2 = boolean_lattice(2);
  std::map<CoverKey, IntMatrix> maps;
  for (auto [lo, hi] : b2->cover_pairs())
    maps.emplace(CoverKey{lo, hi}, IntMatrix::identity(1));
  maps[{0, 1}] = IntMatrix{{-1}};
  EXPECT_THROW(Copresheaf(b2, {1, 1, 1, 1}, maps), Incompatible);
  maps[{2, 3}] = IntMatrix{{-1}};
  EXPECT_NO_THROW(Copresheaf(b2, {1, 1, 1, 1}, maps));
}

TEST(Pullback, Examples) {
  auto p3 = partition_lattice(3);
  auto c = constant_sheaf<Variance::Co>(p3, 2);
  PosetMap id{p3, p3, {0, 1, 2, 3, 4}};
  auto same = pullback(id, c);
  for (auto [lo, hi] : p3->cover_pairs())
    EXPECT_EQ(same.cover_map(lo, hi), c.cover_map(lo, hi));
  auto pt = chain_poset(1);
  auto r3 = constant_sheaf<Variance::Contra>(pt, 3);
  PosetMap to_pt{p3, pt, std::vector<std::size_t>(5, 0)};
  auto pulled = pullback(to_pt, r3);
  for (std::size_t x = 0; x < 5; ++x)
    EXPECT_EQ(pulled.rank(x), 3u);
  for (auto [lo, hi] : p3->cover_pairs())
    EXPECT_EQ(pulled.cover_map(lo, hi), IntMatrix::identity(3));
}

TEST(Morphism, Examples) {
  auto p3 = partition_lattice(3);
  PosetMap id{p3, p3, {0, 1, 2, 3, 4}};
  auto m = star_morphism<Variance::Contra>(id, 2, 2);
  EXPECT_EQ(m.component[2], IntMatrix::identity(1));

  // zero morphism between constant sheaves
  CopresheafMorphism zero{std::make_shared<Copresheaf>(constant_sheaf<Variance::Co>(p3)),
                          std::make_shared<Copresheaf>(constant_sheaf<Variance::Co>(p3)),
                          id, std::vector<IntMatrix>(5, IntMatrix(1, 1))};
  EXPECT_NO_THROW(zero.validate());
  auto bad = zero;
  bad.component[0] = IntMatrix{{3}};
  EXPECT_THROW(bad.validate(), Incompatible);

  // canonical morphism f^*E => E
  auto pt = chain_poset(1);
  auto e = std::make_shared<Presheaf>(constant_sheaf<Variance::Contra>(pt, 2));
  PosetMap to_pt{p3, pt, std::vector<std::size_t>(5, 0)};
  PresheafMorphism canon{std::make_shared<Presheaf>(pullback(to_pt, *e)), e, to_pt,
                         std::vector<IntMatrix>(5, IntMatrix::identity(2))};
  EXPECT_NO_THROW(canon.validate());
}

TEST(Morphism, StarOnJoin) {
  auto p3 = partition_lattice(3);
  auto pp = std::make_shared<Poset>(product_poset(*p3, *p3));
  const std::size_t n = p3->size();
  PosetMap join{pp, p3, {}};
  for (std::size_t v = 0; v < pp->size(); ++v)
    join.image.push_back(p3->join(v / n, v % n));
  auto a = p3->index_of("aab"), b = p3->index_of("aba");
  auto top = p3->index_of("aaa");
  EXPECT_NO_THROW(star_morphism<Variance::Contra>(join, top, a * n + b));
  EXPECT_THROW(star_morphism<Variance::Contra>(join, top, top * n + b), NotExtremal);
  auto bot = p3->index_of("abc");
  EXPECT_NO_THROW(star_morphism<Variance::Co>(join, bot, bot * n + bot));
}
