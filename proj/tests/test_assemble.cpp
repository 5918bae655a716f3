#include <gtest/gtest.h>

#include "koszul/assemble.hpp"
#include "koszul/io.hpp"
#include "test_util.hpp"

using namespace koszul;
using koszul::testing::random_matrix;
using koszul::testing::random_vector;

namespace {

Fixture fixture(const std::string &name) {
  return load_fixture(std::string(KOSZUL_FIXTURE_DIR) + "/" + name + ".json");
}

DiscGrid grid_of(const Fixture &fx) {
  return fx.grid ? fx.grid->build() : DiscGrid::standard();
}

AssemblyOptions options_for(const Fixture &fx,
                            AssemblyStrategy s = AssemblyStrategy::direct) {
  AssemblyOptions o;
  o.degree_cap = 2 * fx.degree_cap + 4;
  o.norm_mode = fx.norm_mode;
  o.expected_k = fx.k;
  o.strategy = s;
  return o;
}

std::vector<std::vector<cd>> rows_of(const CMatrix &f, const IndexTuple &pi) {
  std::vector<std::vector<cd>> out;
  for (std::size_t l = 0; l < pi.size(); ++l) {
    const CVector r = f.row(pi.index(l)).transpose();
    out.push_back(to_entries(r));
  }
  return out;
}

// f_j A(alpha) for every row j of f, with A built on the rows in pi.
CMatrix row_images(const CMatrix &f, const IndexTuple &pi, const CVector &alpha) {
  std::vector<cd> a;
  for (std::size_t l = 0; l < pi.size(); ++l)
    a.push_back(alpha(pi.index(l)));
  return f * wedge_block<cd>(rows_of(f, pi), a);
}

} // namespace

TEST(WedgeBlock, KOneIsScaledIdentity) {
  const CMatrix f = random_matrix(1, 3);
  const CMatrix a = wedge_block<cd>(rows_of(f, IndexTuple({1}, 1)), {cd(2.0)});
  EXPECT_EQ(a, 2.0 * CMatrix::Identity(3, 3));
}

TEST(WedgeBlock, RowIdentityWhenKEqualsM) {
  // f_j A(alpha) = alpha_j R_pi for any alpha once pi covers every row.
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + trial % 3;
    const int d = k + trial % 3;
    const CMatrix f = random_matrix(k, d);
    const CVector alpha = random_vector(k);
    const IndexTuple pi = enumerate_tuples(k, k).front();
    const CMatrix r = factorial(k) * chain_row(rows_of(f, pi));
    const CMatrix img = row_images(f, pi, alpha);
    for (int j = 0; j < k; ++j)
      EXPECT_LT((img.row(j) - alpha(j) * r).norm(), 1e-12 * (1.0 + r.norm()))
          << "k=" << k << " d=" << d << " j=" << j;
  }
}

TEST(WedgeBlock, RowIdentityForRangeAlphaWhenRankAtMostK) {
  // Rank-k data with m > k: the identity holds for alpha = F u.
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + trial % 2;
    const int m = k + 1 + trial % 2;
    const int d = k + 1 + trial % 2;
    const CMatrix f = random_matrix(m, k) * random_matrix(k, d);
    const CVector alpha = f * random_vector(d);
    for (const auto &pi : enumerate_tuples(m, k)) {
      const CMatrix r = factorial(k) * chain_row(rows_of(f, pi));
      const CMatrix img = row_images(f, pi, alpha);
      for (int j = 0; j < m; ++j)
        EXPECT_LT((img.row(j) - alpha(j) * r).norm(), 1e-11 * (1.0 + r.norm()));
    }
  }
}

TEST(WedgeBlock, SelectorIsNotInRangeForKBelowM) {
  // F = [[1], [2]], k = 1: the selector e_1 gives f_2 A = 2 R, not 0.
  CMatrix f(2, 1);
  f << 1.0, 2.0;
  CVector e1(2);
  e1 << 1.0, 0.0;
  const CMatrix img = row_images(f, IndexTuple({1}, 2), e1);
  EXPECT_EQ(img(1, 0), cd(2.0));
}

TEST(SelectorBlock, ZeroOffTuple) {
  const auto f = koszul::testing::random_poly_matrix(3, 3, 1);
  const auto s = selector_block(f, IndexTuple({2, 3}, 3), 0, 2);
  EXPECT_EQ(s, PolyMatrix::zero(3, 3));
}

TEST(SolveFull, SingleRowIdentity) {
  PolyMatrix f(1, 2);
  f(0, 0) = 1.0;
  f(0, 1) = 0.0;
  PolyMatrix h(1, 1);
  h(0, 0) = ComplexPolynomial(std::vector<cd>{0.25, 0.5});
  AssemblyOptions o;
  o.tol = 1e-12;
  const auto b = solve_full(f, h, DiscGrid::standard(), o);
  EXPECT_LT(b.max_residual, 1e-15);
  EXPECT_LT(std::abs(b.g(0, 0)(0.3) - h(0, 0)(0.3)), 1e-15);
  EXPECT_LT(std::abs(b.g(1, 0)(0.3)), 1e-15);
}

TEST(SolveFull, DiagonalConstantKOne) {
  const auto fx = fixture("diag_rank1");
  const auto b = solve_full(fx.f, fx.h, grid_of(fx), options_for(fx));
  EXPECT_EQ(b.k, 1);
  EXPECT_LE(b.max_residual, 1e-12);
  for (const auto &p : b.parts)
    EXPECT_LE(p.annihilation.max_offdiagonal, 1e-12);
}

TEST(SolveFull, ShippedFixturesReproduce) {
  for (const auto *name : {"scalar_trivial", "wolff_scalar", "rank2_m2d3", "rank3_m3d4",
                           "diag_rank1"}) {
    const auto fx = fixture(name);
    const auto b = solve_full(fx.f, fx.h, grid_of(fx), options_for(fx));
    EXPECT_TRUE(b.all_solves_succeeded) << name;
    EXPECT_LE(b.max_residual, kEndToEndTolerance * b.h_scale) << name;
    EXPECT_TRUE(b.annihilation_ok) << name;
    EXPECT_TRUE(b.chain_ok) << name;
    for (const auto &p : b.parts) {
      EXPECT_LE(p.annihilation.max_offdiagonal, 1e-6) << name;
      EXPECT_LE(p.g_sup_norm,
                factorial(b.k) * binomial(b.m - 1, b.k - 1) * p.solve.v_sup_norm *
                    (1.0 + 1e-12))
          << name;
    }
    EXPECT_LE(b.g_sup_norm, b.bound_data * (1.0 + 1e-12)) << name;
  }
}

TEST(SolveFull, RankTwoFixtureShape) {
  const auto fx = fixture("rank2_m2d3");
  ASSERT_EQ(fx.m, 2);
  ASSERT_EQ(fx.d, 3);
  const auto b = solve_full(fx.f, fx.h, grid_of(fx), options_for(fx));
  EXPECT_EQ(b.k, 2);
  EXPECT_EQ(b.parts.size(), 2u);
}

TEST(SolveFull, DependentRowsNeedRowSubset) {
  const auto fx = fixture("dependent_rows");
  const auto direct = solve_full(fx.f, fx.h, grid_of(fx), options_for(fx));
  EXPECT_EQ(direct.k, 1);
  EXPECT_FALSE(direct.annihilation_ok);
  const auto reduced = solve_full(fx.f, fx.h, grid_of(fx),
                                  options_for(fx, AssemblyStrategy::row_subset));
  EXPECT_TRUE(reduced.annihilation_ok);
  EXPECT_TRUE(reduced.residual_ok);
  EXPECT_EQ(reduced.assembled_rows.size(), 1u);
}

TEST(SolveFull, RangeFailureIsPrecondition) {
  const auto fx = fixture("range_failure");
  EXPECT_THROW(solve_full(fx.f, fx.h, grid_of(fx), options_for(fx)),
               precondition_failed);
}

TEST(SolveFull, BoundsReported) {
  const auto fx = fixture("rank3_m3d4");
  const auto b = solve_full(fx.f, fx.h, grid_of(fx), options_for(fx));
  EXPECT_DOUBLE_EQ(b.bound_binom_K, norm_bound(b.m, b.k));
  EXPECT_DOUBLE_EQ(b.bound_k_factorial, b.bound_binom_K * factorial(b.k));
}

TEST(Annihilation, RankDropPointsAreExcluded) {
  // F = diag(1, z): rank 2 except at the origin.
  PolyMatrix f = PolyMatrix::zero(2, 2);
  f(0, 0) = 1.0;
  f(1, 1) = ComplexPolynomial::z();
  PolyMatrix g(2, 1);
  g(0, 0) = 1.0;
  g(1, 0) = 1.0;
  const DiscGrid grid({0.0, 0.5}, 4);
  const auto rep = offdiagonal_annihilation_check(f, g, 0, grid, 2);
  ASSERT_EQ(rep.excluded.size(), 1u);
  EXPECT_EQ(rep.excluded[0], 0u);
  EXPECT_NEAR(rep.max_offdiagonal, 0.5, 1e-15);
  EXPECT_NEAR(rep.max_offdiagonal_all, 0.5, 1e-15);
}

TEST(Radical, ScalarIdentity) {
  PolyMatrix f(1, 1);
  f(0, 0) = 1.0;
  PolyMatrix h(1, 1);
  h(0, 0) = ComplexPolynomial(std::vector<cd>{0.5, 0.25});
  const auto grid = DiscGrid::standard();
  const auto rep = radical_necessary_check(f, h, h, 1, grid);
  EXPECT_TRUE(rep.pass);
  EXPECT_GE(rep.min_margin, 0.0);
  EXPECT_NEAR(rep.c_implemented, std::pow(sup_operator_norm(h, grid), 2), 1e-15);
}

TEST(Radical, ScalesHomogeneously) {
  const auto fx = fixture("rank2_m2d3");
  const auto grid = grid_of(fx);
  const auto b = solve_full(fx.f, fx.h, grid, options_for(fx));
  const auto r1 = radical_necessary_check(fx.f, b.g, fx.h, 1, grid);
  const auto r2 = radical_necessary_check(fx.f, ComplexPolynomial(2.0) * b.g,
                                          ComplexPolynomial(2.0) * fx.h, 1, grid);
  EXPECT_TRUE(r1.pass);
  EXPECT_NEAR(r2.min_margin, 4.0 * r1.min_margin, 1e-12);
  EXPECT_NEAR(r2.c_implemented, 4.0 * r1.c_implemented, 1e-12);
  EXPECT_EQ(r1.c_stated, std::pow(r1.g_sup_norm, 4.0));
}

TEST(Radical, WrongPowerIsPrecondition) {
  const auto fx = fixture("rank2_m2d3");
  const auto grid = grid_of(fx);
  const auto b = solve_full(fx.f, fx.h, grid, options_for(fx));
  EXPECT_THROW(radical_necessary_check(fx.f, b.g, fx.h, 2, grid), precondition_failed);
}

TEST(Concat, EmptySecondBlockReducesToSolveFull) {
  const auto fx = fixture("rank2_m2d3");
  const auto grid = grid_of(fx);
  const auto direct = solve_full(fx.f, fx.h, grid, options_for(fx));
  const auto c = concat_solve(fx.f, PolyMatrix(2, 0), fx.h, grid, options_for(fx));
  EXPECT_EQ(c.g2.rows(), 0);
  EXPECT_EQ(c.g1, direct.g);
  EXPECT_EQ(c.split_difference, 0.0);
}

TEST(Concat, TrivialSplit) {
  PolyMatrix f1(1, 2);
  f1(0, 0) = 1.0;
  f1(0, 1) = 0.0;
  PolyMatrix h(1, 1);
  h(0, 0) = 0.5;
  AssemblyOptions o;
  const auto c = concat_solve(f1, PolyMatrix(1, 0), h, DiscGrid::standard(), o);
  EXPECT_LT(std::abs(c.g1(0, 0)(0.0) - 0.5), 1e-15);
}

TEST(Concat, BlockSplitIsExact) {
  const auto a = fixture("concat_a");
  const auto b = fixture("concat_b");
  const auto c = concat_solve(a.f, b.f, a.h, grid_of(a), options_for(a));
  EXPECT_EQ(c.split_difference, 0.0);
  EXPECT_TRUE(c.bundle.residual_ok);
}

TEST(Concat, RowMismatchRejected) {
  EXPECT_THROW(concat_solve(PolyMatrix(1, 1), PolyMatrix(2, 1), PolyMatrix(1, 1),
                            DiscGrid::standard()),
               std::invalid_argument);
}
