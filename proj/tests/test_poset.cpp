#include <gtest/gtest.h>

#include "support.hpp"

using namespace bsv;

namespace {

PosetIdeal I(int n, std::vector<Position> ms) { return PosetIdeal(n, std::move(ms)); }

// [A,B] for elementary matrices computed as dense products.
bool span_closed_by_matrices(const std::vector<Position>& span, int n) {
  auto unit = [n](Position p) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    m[p.i - 1][p.j - 1] = 1;
    return m;
  };
  const std::set<Position> in(span.begin(), span.end());
  for (int k = 1; k <= n; ++k) {
    for (int l = k; l <= n; ++l) {
      for (const auto& p : span) {
        const auto a = unit({k, l});
        const auto b = unit(p);
        for (int r = 0; r < n; ++r) {
          for (int c = 0; c < n; ++c) {
            int v = 0;
            for (int t = 0; t < n; ++t) v += a[r][t] * b[t][c] - b[r][t] * a[t][c];
            if (v != 0 && !in.contains({r + 1, c + 1})) return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace

TEST(Order, Examples) {
  EXPECT_TRUE(leq({2, 1}, {1, 2}));
  EXPECT_TRUE(leq({1, 1}, {1, 1}));
  EXPECT_FALSE(leq({1, 1}, {2, 2}));
  EXPECT_FALSE(leq({2, 2}, {1, 1}));
}

TEST(IsIdeal, Examples) {
  const std::vector<Position> a{{2, 1}};
  const std::vector<Position> b{{1, 1}};
  const std::vector<Position> none;
  const std::vector<Position> bad{{3, 1}};
  EXPECT_TRUE(is_ideal(a, 2));
  EXPECT_FALSE(is_ideal(b, 2));
  EXPECT_TRUE(is_ideal(none, 2));
  EXPECT_THROW((void)is_ideal(bad, 2), DomainError);
  EXPECT_THROW(I(2, {{1, 1}}), DomainError);
}

TEST(EnumerateIdeals, SmallCounts) {
  EXPECT_EQ(enumerate_ideals(1).size(), 2U);
  const auto two = enumerate_ideals(2);
  ASSERT_EQ(two.size(), 6U);
  const std::vector<PosetIdeal> expected{
      I(2, {}),
      I(2, {{2, 1}}),
      I(2, {{2, 1}, {1, 1}}),
      I(2, {{2, 1}, {2, 2}}),
      I(2, {{2, 1}, {1, 1}, {2, 2}}),
      PosetIdeal::full(2),
  };
  EXPECT_EQ(two, expected);
}

TEST(EnumerateIdeals, AgreesWithBruteForce) {
  for (int n = 1; n <= 3; ++n) {
    const auto oracle_sets = oracle::brute_force_ideals(n);
    const auto ideals = enumerate_ideals(n);
    std::set<std::vector<Position>> got;
    for (const auto& s : ideals) got.insert(s.members());
    EXPECT_EQ(got.size(), ideals.size()) << "duplicates at n=" << n;
    EXPECT_EQ(got, oracle_sets) << "n=" << n;
  }
}

TEST(EnumerateIdeals, GrowthPathMatchesClosureFilterAtFour) {
  // n=4 goes through incremental growth; every ideal is a lattice path, so
  // the count is C(8,4).
  const auto ideals = enumerate_ideals(4);
  EXPECT_EQ(ideals.size(), 70U);
  for (const auto& s : ideals) EXPECT_TRUE(oracle::closed_downward(s.members(), 4));
  EXPECT_TRUE(std::is_sorted(ideals.begin(), ideals.end()));
  EXPECT_EQ(enumerate_ideals(3).size(), 20U);
}

TEST(EnumerateIdeals, CapacityGuard) {
  EXPECT_THROW((void)enumerate_ideals(5, Order::dominance, 4), CapacityError);
  EXPECT_THROW((void)enumerate_ideals(6), CapacityError);
}

TEST(MaximalElements, Examples) {
  EXPECT_EQ(maximal_elements(I(2, {{2, 1}, {1, 1}, {2, 2}})), (std::vector<Position>{{1, 1}, {2, 2}}));
  EXPECT_TRUE(maximal_elements(PosetIdeal::empty(2)).empty());
  EXPECT_EQ(maximal_elements(PosetIdeal::full(2)), (std::vector<Position>{{1, 2}}));
}

TEST(PeelSequence, TieBreakAndBaseCase) {
  const auto seq = peel_sequence(I(2, {{2, 1}, {1, 1}, {2, 2}}));
  EXPECT_EQ(seq, (std::vector<PeelStep>{{{1, 1}, 2}, {{2, 2}, 2}}));
  EXPECT_TRUE(peel_sequence(PosetIdeal::strict_lower(3)).empty());
  const auto full3 = peel_sequence(PosetIdeal::full(3));
  ASSERT_FALSE(full3.empty());
  EXPECT_EQ(full3.front().position, (Position{1, 3}));
  EXPECT_EQ(full3.front().r, 1);
}

TEST(Parabolic, Examples) {
  EXPECT_EQ(parabolic_to_ideal(BlockComposition({1, 1})), I(2, {{2, 1}, {1, 1}, {2, 2}}));
  EXPECT_TRUE(free_positions(parabolic_to_ideal(BlockComposition({1, 1}))) == (std::vector<Position>{{1, 2}}));
  EXPECT_EQ(parabolic_to_ideal(BlockComposition({2})), PosetIdeal::full(2));
  EXPECT_EQ(free_positions(parabolic_to_ideal(BlockComposition({2, 1}))), (std::vector<Position>{{1, 3}, {2, 3}}));
  EXPECT_THROW(BlockComposition({}), DomainError);
  EXPECT_THROW(BlockComposition({2, 0}), DomainError);
}

TEST(FreePositions, Examples) {
  EXPECT_EQ(free_positions(PosetIdeal::empty(2)), (std::vector<Position>{{1, 1}, {1, 2}, {2, 2}}));
  EXPECT_EQ(free_positions(I(2, {{2, 1}, {1, 1}})), (std::vector<Position>{{1, 2}, {2, 2}}));
  EXPECT_TRUE(free_positions(PosetIdeal::full(2)).empty());
}

TEST(LieIdeal, Examples) {
  const std::vector<Position> a{{1, 1}, {1, 2}};
  const std::vector<Position> b{{1, 1}};
  EXPECT_TRUE(is_coordinate_lie_ideal(a, 2));
  EXPECT_FALSE(is_coordinate_lie_ideal(b, 2));
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(is_coordinate_lie_ideal(free_positions(PosetIdeal::empty(n)), n));
}

TEST(LieIdeal, AgreesWithMatrixCommutatorsOnAllSubsets) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<Position> upper;
    for (int i = 1; i <= n; ++i) {
      for (int j = i; j <= n; ++j) upper.push_back({i, j});
    }
    for (std::uint32_t mask = 0; mask < (1U << upper.size()); ++mask) {
      std::vector<Position> span;
      for (std::size_t k = 0; k < upper.size(); ++k) {
        if (mask & (1U << k)) span.push_back(upper[k]);
      }
      EXPECT_EQ(is_coordinate_lie_ideal(span, n), span_closed_by_matrices(span, n));
    }
  }
}

TEST(BInvariance, Examples) {
  EXPECT_TRUE(check_b_invariance(I(2, {{2, 1}, {1, 1}, {2, 2}}), 5, 50, 1).pass);
  EXPECT_TRUE(check_b_invariance(PosetIdeal::empty(1), 7, 10, 1).pass);
  EXPECT_TRUE(check_b_invariance(PosetIdeal::full(1), 7, 10, 1).pass);
  EXPECT_TRUE(check_b_invariance(parabolic_to_ideal(BlockComposition({2, 1})), 7, 50, 1).pass);
}

TEST(BInvariance, DetectsNonInvariantSpan) {
  const std::vector<Position> span{{1, 1}};
  const std::vector<Position> forbidden{{1, 2}, {2, 2}};
  const auto rep = detail::b_conjugation_check(2, span, forbidden, 101, 50, 3);
  EXPECT_FALSE(rep.pass);
  EXPECT_TRUE(rep.witness.has_value());
}

// ---- invariants over every ideal ----

TEST(Invariants, EveryIdealForNUpToFour) {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& s : enumerate_ideals(n)) {
      ASSERT_TRUE(is_ideal(s.members(), n));
      for (const auto& m : maximal_elements(s)) EXPECT_NO_THROW((void)s.without(m)) << s.to_string();
      const auto seq = peel_sequence(s);
      EXPECT_EQ(seq.size(), s.upper_members().size());
      const auto rest = peel_remainder(s);
      for (const auto& m : rest.members()) EXPECT_GT(m.i, m.j);
      for (const auto& st : seq) EXPECT_LE(st.r, n);
      EXPECT_TRUE(is_coordinate_lie_ideal(free_positions(s), n)) << s.to_string();
      EXPECT_TRUE(span_closed_by_matrices(free_positions(s), n)) << s.to_string();
    }
  }
}

TEST(Invariants, EveryParabolicIsAnIdeal) {
  const std::vector<std::vector<int>> comps{{1}, {2}, {1, 1}, {3}, {1, 2}, {2, 1}, {1, 1, 1},
                                            {4}, {1, 3}, {3, 1}, {2, 2}, {1, 1, 2}, {1, 2, 1}, {2, 1, 1}, {1, 1, 1, 1}};
  for (const auto& c : comps) {
    const auto s = parabolic_to_ideal(BlockComposition(c));
    EXPECT_TRUE(is_ideal(s.members(), s.n()));
    EXPECT_TRUE(check_b_invariance(s, 7, 10, 11).pass);
  }
}

TEST(Census, BStableCoordinateIdealsAreExactlyTheBOfIdeals) {
  for (int n = 1; n <= 3; ++n) {
    const auto c = coordinate_ideal_census(n, 101, 20, 5);
    EXPECT_TRUE(c.every_b_stable_is_b_of_ideal) << n;
    EXPECT_TRUE(c.every_b_of_ideal_is_lie_ideal) << n;
    EXPECT_EQ(c.ideal_count, enumerate_ideals(n).size());
    EXPECT_EQ(c.subsets_scanned, 1U << (n * (n + 1) / 2));
  }
}
