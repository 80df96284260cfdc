#include <gtest/gtest.h>

#include "support.hpp"

using namespace bsv;

namespace {

IntPoly P(const std::string& text) { return parse_polynomial<IntegerRing>(text); }

IntMatrix M(std::vector<std::vector<std::string>> rows) {
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = P(rows[r][c]);
  }
  return m;
}

IntMatrix random_matrix(gen::Rng& rng, std::size_t n, const std::vector<VarId>& vars) {
  IntMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = gen::random_int_poly(rng, vars, 2, 1, 3);
  }
  return m;
}

}  // namespace

TEST(Determinant, Examples) {
  EXPECT_EQ(determinant(IntMatrix::identity(3)), P("1"));
  EXPECT_EQ(determinant(M({{"x11", "x12"}, {"x13", "x14"}})), P("x11*x14 - x12*x13"));
  EXPECT_TRUE(determinant(IntMatrix(3, 3)).is_zero());
  EXPECT_THROW((void)determinant(IntMatrix(2, 3)), DomainError);
}

TEST(Determinant, CofactorAndBareissAgreeOnRandomMatrices) {
  gen::Rng rng(77);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < (n <= 3 ? 20 : 6); ++trial) {
      const auto vars = gen::random_universe(rng, 3);
      const IntMatrix a = random_matrix(rng, n, vars);
      const IntPoly d1 = determinant_cofactor(a);
      const IntPoly d2 = determinant_bareiss(a);
      ASSERT_EQ(d1, d2) << a.to_string();
      const auto pt = gen::random_point(rng, vars, 1000003);
      oracle::Dense dense(n, std::vector<std::uint64_t>(n));
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) dense[r][c] = evaluate(a(r, c), pt, 1000003);
      }
      EXPECT_EQ(evaluate(d1, pt, 1000003), oracle::leibniz_det(dense, 1000003));
    }
  }
}

TEST(Determinant, BareissHandlesZeroPivots) {
  const IntMatrix a = M({{"0", "x11", "1"}, {"x12", "0", "0"}, {"1", "x22", "0"}});
  EXPECT_EQ(determinant_bareiss(a), determinant_cofactor(a));
}

TEST(Unitriangular, InverseExamples) {
  const IntMatrix g = M({{"1", "0"}, {"u21", "1"}});
  EXPECT_EQ(invert_unitriangular(g), M({{"1", "0"}, {"-u21", "1"}}));
  EXPECT_EQ(invert_unitriangular(IntMatrix::identity(3)), IntMatrix::identity(3));
  const IntMatrix g3inv = invert_unitriangular(generic_unitriangular_lower(3));
  EXPECT_EQ(g3inv(2, 0), P("u21*u32 - u31"));
  EXPECT_THROW((void)invert_unitriangular(M({{"2", "0"}, {"u21", "1"}})), DomainError);
  EXPECT_THROW((void)invert_unitriangular(M({{"1", "x12"}, {"u21", "1"}})), DomainError);
  const IntMatrix up = M({{"1", "x12", "x13"}, {"0", "1", "x23"}, {"0", "0", "1"}});
  EXPECT_EQ(up * invert_unitriangular(up), IntMatrix::identity(3));
}

TEST(Unitriangular, InverseIsTwoSidedUpToFour) {
  for (int n = 1; n <= 4; ++n) {
    const IntMatrix g = generic_unitriangular_lower(n);
    const IntMatrix inv = invert_unitriangular(g);
    EXPECT_EQ(g * inv, IntMatrix::identity(n));
    EXPECT_EQ(inv * g, IntMatrix::identity(n));
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(symbolic_rank(IntMatrix(2, 3)).rank, 0U);
  EXPECT_EQ(symbolic_rank(M({{"x11"}, {"x12"}})).rank, 1U);
  const auto r = symbolic_rank(M({{"0", "x12"}, {"0", "x22"}}));
  EXPECT_EQ(r.rank, 1U);
  EXPECT_EQ(r.witness_rows.size(), 1U);
  EXPECT_EQ(symbolic_rank(M({{"x11", "x12"}, {"x12", "x22"}})).rank, 2U);
}

TEST(Rank, RandomizedAgreesWithSymbolic) {
  gen::Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto vars = gen::random_universe(rng, 3);
    IntMatrix a = random_matrix(rng, 3, vars);
    if (trial % 3 == 0) {
      for (std::size_t c = 0; c < 3; ++c) a(2, c) = a(0, c) + a(1, c);
    }
    RankOptions ro;
    ro.mode = RankMode::randomized;
    ro.seed = static_cast<std::uint64_t>(trial);
    EXPECT_EQ(symbolic_rank(a).rank, symbolic_rank(a, ro).rank) << a.to_string();
  }
}

TEST(FpHelpers, InverseAndDet) {
  const std::uint64_t p = 101;
  const FpMatrix a{{2, 3, 5}, {7, 11, 13}, {17, 19, 23}};
  const FpMatrix inv = inverse_mod_p(a, p);
  EXPECT_EQ(multiply_mod_p(a, inv, p), (FpMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(det_mod_p(a, p), oracle::leibniz_det(a, p));
  EXPECT_EQ(rank_mod_p({{1, 2}, {2, 4}}, p), 1U);
}
