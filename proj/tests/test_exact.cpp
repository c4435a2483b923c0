#include "orbitcell/exact/chain_complex.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace orbitcell;

namespace {

IntMatrix random_matrix(std::mt19937 &rng, std::size_t r, std::size_t c, int span) {
  std::uniform_int_distribution<int> d(-span, span);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = d(rng) * (d(rng) % 2 ? 1 : 0);
  return m;
}

bool is_diagonal_chain(const SmithForm &s) {
  for (std::size_t i = 0; i < s.d.rows(); ++i)
    for (std::size_t j = 0; j < s.d.cols(); ++j)
      if (i != j && s.d(i, j) != 0)
        return false;
  for (std::size_t i = 0; i + 1 < s.rank; ++i)
    if (s.d(i + 1, i + 1) % s.d(i, i) != 0)
      return false;
  return true;
}

} // namespace

TEST(Smith, TwoByTwo) {
  auto s = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
  EXPECT_EQ(s.d, (IntMatrix{{2, 0}, {0, 4}}));
  EXPECT_EQ((s.u * IntMatrix{{2, 4}, {6, 8}} * s.v), s.d);
}

TEST(Smith, IdentityAndZero) {
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).d, IntMatrix::identity(3));
  EXPECT_EQ(smith_normal_form(IntMatrix(2, 2)).d, IntMatrix(2, 2));
}

TEST(Smith, RandomTransformsAreUnimodular) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6, 9);
    auto s = smith_normal_form(a);
    EXPECT_EQ(s.u * a * s.v, s.d);
    EXPECT_EQ(abs(determinant(s.u)), 1);
    EXPECT_EQ(abs(determinant(s.v)), 1);
    EXPECT_TRUE(is_diagonal_chain(s));
  }
}

TEST(Solve, Examples) {
  EXPECT_EQ(solve_unique(IntMatrix{{2}}, {4}), IntVector{2});
  EXPECT_EQ(solve_unique(IntMatrix{{1, 1}, {1, -1}}, {2, 0}), (IntVector{1, 1}));
  EXPECT_THROW(solve_unique(IntMatrix{{2}}, {3}), NoIntegerSolution);
  EXPECT_THROW(solve_unique(IntMatrix{{1, 1}}, {3}), NonUnique);
  EXPECT_THROW(solve_unique(IntMatrix{{1}, {1}}, {1, 2}), NoIntegerSolution);
}

TEST(Solve, RoundTrip) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_matrix(rng, 5, 3, 5);
    UniqueSolver s(a);
    if (!s.injective())
      continue;
    IntVector x{int(rng() % 7) - 3, int(rng() % 7) - 3, int(rng() % 7) - 3};
    EXPECT_EQ(s.solve(a.apply(x)), x);
  }
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_basis(IntMatrix{{1, 1}}), (std::vector<IntVector>{{1, -1}}));
  EXPECT_TRUE(kernel_basis(IntMatrix::identity(2)).empty());
  EXPECT_EQ(kernel_basis(IntMatrix{{2, 4}}), (std::vector<IntVector>{{2, -1}}));
}

TEST(Kernel, SaturatedAndCanonical) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_matrix(rng, 3, 6, 4);
    auto ker = kernel_basis(a);
    EXPECT_EQ(ker.size(), 6 - invariant_factors(a).size());
    for (const auto &v : ker)
      EXPECT_TRUE(std::all_of(a.apply(v).begin(), a.apply(v).end(),
                              [](const Integer &x) { return x == 0; }));
    if (!ker.empty()) {
      auto f = invariant_factors(IntMatrix::from_columns(ker, 6));
      EXPECT_TRUE(std::all_of(f.begin(), f.end(), [](const Integer &x) { return x == 1; }));
    }
    // same kernel from a row-mixed matrix
    IntMatrix b = a;
    b.add_row(0, 1, 3);
    b.swap_rows(1, 2);
    EXPECT_EQ(kernel_basis(b), ker);
  }
}

TEST(Homology, Examples) {
  ChainComplex point({1});
  auto h = homology(point);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].to_string(), "Z");

  ChainComplex zero_map({1, 1});
  h = homology(zero_map);
  EXPECT_EQ(h[0].to_string(), "Z");
  EXPECT_EQ(h[1].to_string(), "Z");

  // 4-cycle: vertices 0..3, edges (i, i+1)
  ChainComplex cycle({4, 4});
  IntMatrix d(4, 4);
  for (int e = 0; e < 4; ++e) {
    d((e + 1) % 4, e) += 1;
    d(e, e) -= 1;
  }
  cycle.set_boundary(1, SparseMatrix::from_dense(d));
  h = homology(cycle);
  EXPECT_EQ(h[0].to_string(), "Z");
  EXPECT_EQ(h[1].to_string(), "Z");
}

TEST(Homology, Torsion) {
  ChainComplex rp2({1, 1, 1});
  rp2.set_boundary(2, SparseMatrix::from_dense(IntMatrix{{2}}));
  auto h = homology(rp2);
  EXPECT_EQ(h[0].to_string(), "Z");
  EXPECT_EQ(h[1].to_string(), "Z/2");
  EXPECT_EQ(h[2].to_string(), "0");
  auto h2 = homology_mod_p(rp2, 2);
  EXPECT_EQ(h2, (std::vector<std::size_t>{1, 1, 1}));
}

TEST(Homology, NonComplexRejected) {
  ChainComplex c({1, 1, 1});
  c.set_boundary(1, SparseMatrix::from_dense(IntMatrix{{1}}));
  c.set_boundary(2, SparseMatrix::from_dense(IntMatrix{{1}}));
  EXPECT_THROW(homology(c), InvalidComplex);
}

TEST(Homology, SparseMatchesDense) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_matrix(rng, 1 + rng() % 7, 1 + rng() % 7, 6);
    auto prof = rank_profile(SparseMatrix::from_dense(a));
    auto f = invariant_factors(a);
    std::vector<Integer> nonunit;
    for (auto &x : f)
      if (x != 1)
        nonunit.push_back(x);
    EXPECT_EQ(prof.rank, f.size());
    EXPECT_EQ(prof.torsion, nonunit);
  }
}

TEST(Lattice, Membership) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_matrix(rng, 4, 3, 5);
    LatticeBasis l;
    for (std::size_t c = 0; c < a.cols(); ++c)
      l.insert(to_sparse(a.column(c)));
    EXPECT_EQ(l.rank(), invariant_factors(a).size());
    IntVector x{int(rng() % 5) - 2, int(rng() % 5) - 2, int(rng() % 5) - 2};
    EXPECT_TRUE(l.contains(to_sparse(a.apply(x))));
    IntVector probe{1, 0, 0, 0};
    bool solvable = true;
    try {
      UniqueSolver s(a);
      if (s.injective())
        s.solve(probe);
      else
        solvable = l.contains(to_sparse(probe));
    } catch (const NoIntegerSolution &) {
      solvable = false;
    }
    EXPECT_EQ(l.contains(to_sparse(probe)), solvable);
  }
}
