#include <gtest/gtest.h>

#include "modcsp/error.hpp"
#include "modcsp/generate.hpp"
#include "modcsp/horn.hpp"
#include "modcsp/oracle.hpp"
#include "support.hpp"

namespace modcsp {
namespace {

using test::bits;

HornInstance plain(std::uint32_t n, std::vector<HornClause> clauses, std::vector<UnitConstraint> units = {}) {
  return {n, std::move(clauses), std::move(units), ModularSideConstraint::unit(n, 2, {0, 1})};
}

TEST(FindMinimal, Propagates) {
  auto h = plain(3, {{2, {0, 1}}});
  EXPECT_EQ(horn::find_minimal(h, bits("110")), bits("111"));
}

TEST(FindMinimal, AlreadySatisfying) {
  auto h = plain(4, {});
  EXPECT_EQ(horn::find_minimal(h, bits("0000")), bits("0000"));
}

TEST(FindMinimal, UnitConflict) {
  auto h = plain(1, {}, {{0, false}});
  EXPECT_FALSE(horn::find_minimal(h, bits("1")));
}

TEST(FindMinimal, PositiveUnitsForced) {
  auto h = plain(3, {{2, {0}}}, {{0, true}});
  EXPECT_EQ(horn::find_minimal(h, bits("000")), bits("101"));
}

TEST(FindMinimal, EqualsMeetOfSolutionsAbove) {
  gen::Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    const std::uint32_t n = 1 + i % 10;
    auto h = gen::random_horn({n, {2}, static_cast<std::size_t>(i % 12), 3}, rng);
    const std::uint64_t seed_mask = rng() & ((std::uint64_t{1} << n) - 1);
    Assignment seed(n);
    for (std::uint32_t j = 0; j < n; ++j) seed.set(j, (seed_mask >> j) & 1U);
    std::optional<Assignment> meet;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      Assignment x(n);
      for (std::uint32_t j = 0; j < n; ++j) x.set(j, (m >> j) & 1U);
      if (!seed.subset_of(x) || !h.satisfies_local(x)) continue;
      meet = meet ? (*meet & x) : x;
    }
    EXPECT_EQ(horn::find_minimal(h, seed), meet);
  }
}

TEST(FindMinimal, Monotone) {
  gen::Rng rng(78);
  for (int i = 0; i < 300; ++i) {
    const std::uint32_t n = 2 + i % 10;
    auto h = gen::random_horn({n, {2}, static_cast<std::size_t>(i % 15), 3}, rng);
    Assignment x(n), y(n);
    for (std::uint32_t j = 0; j < n; ++j) {
      const bool a = rng() & 1U;
      x.set(j, a);
      y.set(j, a || (rng() & 1U));
    }
    auto mx = horn::find_minimal(h, x), my = horn::find_minimal(h, y);
    if (mx && my) EXPECT_TRUE(mx->subset_of(*my));
    if (!mx) EXPECT_FALSE(my);
  }
}

TEST(SolveRounds, WeightTwoModThree) {
  HornInstance h{3, {}, {}, ModularSideConstraint::unit(3, 3, {2})};
  ASSERT_TRUE(oracle::brute_solve(h));
  auto x = horn::solve_rounds(h, 2);
  ASSERT_TRUE(x);
  EXPECT_EQ(x->popcount(), 2U);
}

TEST(SolveRounds, ForcedUnits) {
  HornInstance h{2, {}, {{0, true}, {1, true}}, ModularSideConstraint::unit(2, 2, {0})};
  EXPECT_EQ(horn::solve_rounds(h, 1), bits("11"));
}

TEST(SolveRounds, ForcedOddWeight) {
  HornInstance h{1, {}, {{0, true}}, ModularSideConstraint::unit(1, 2, {0})};
  EXPECT_FALSE(horn::solve_rounds(h, 1));
}

TEST(SolveRounds, NegativeRoundsRejected) {
  HornInstance h{1, {}, {}, ModularSideConstraint::unit(1, 2, {0})};
  try {
    horn::solve_rounds(h, -1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_rounds);
  }
}

TEST(SolveRounds, ZeroRoundsOnlyEmptySeed) {
  HornInstance h{3, {}, {}, ModularSideConstraint::unit(3, 2, {1})};
  EXPECT_FALSE(horn::solve_rounds(h, 0));
  EXPECT_TRUE(horn::solve_rounds(h, 1));
}

TEST(AutoRounds, PrimePowers) {
  EXPECT_EQ(horn::auto_rounds(4), 3);
  EXPECT_EQ(horn::auto_rounds(9), 8);
  EXPECT_EQ(horn::auto_rounds(2), 1);
  try {
    horn::auto_rounds(6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::auto_rounds_unavailable);
  }
}

TEST(HornSolve, AutoOnCompositeThrows) {
  HornInstance h{2, {}, {}, ModularSideConstraint::unit(2, 6, {1})};
  EXPECT_THROW(horn::solve(h), Error);
}

TEST(HornSolve, PrimePowerAutoMatchesOracle) {
  gen::Rng rng(404);
  for (std::uint32_t m : {2U, 3U, 4U, 5U, 7U, 8U, 9U}) {
    for (int i = 0; i < 120; ++i) {
      gen::RandomSpec spec{static_cast<std::uint32_t>(1 + i % 8), {m}, static_cast<std::size_t>(i % 7), 3, i % 3 == 0,
                           static_cast<std::size_t>(1 + i % 2)};
      auto h = gen::random_horn(spec, rng);
      auto got = horn::solve(h);
      EXPECT_EQ(got.has_value(), oracle::brute_solve(h).has_value()) << "M=" << m << " i=" << i;
      if (got) EXPECT_TRUE(h.satisfies(*got));
    }
  }
}

TEST(HornSolve, CompositeFullRoundsMatchesOracle) {
  gen::Rng rng(405);
  for (std::uint32_t m : {6U, 10U, 12U}) {
    for (int i = 0; i < 100; ++i) {
      gen::RandomSpec spec{static_cast<std::uint32_t>(1 + i % 8), {m}, static_cast<std::size_t>(i % 7), 3};
      auto h = gen::random_horn(spec, rng);
      horn::SolveConfig cfg;
      cfg.rounds = Rounds::fixed(h.n);
      auto got = horn::solve(h, cfg);
      EXPECT_EQ(got.has_value(), oracle::brute_solve(h).has_value());
      if (got) EXPECT_TRUE(h.satisfies(*got));
    }
  }
}

TEST(HornSolve, ProductGroupMatchesOracle) {
  gen::Rng rng(406);
  for (int i = 0; i < 60; ++i) {
    gen::RandomSpec spec{static_cast<std::uint32_t>(1 + i % 4), {2, 3}, static_cast<std::size_t>(i % 4), 2};
    auto h = gen::random_horn(spec, rng);
    horn::SolveConfig cfg;
    cfg.rounds = Rounds::fixed(1'000'000);
    auto got = horn::solve(h, cfg);
    EXPECT_EQ(got.has_value(), oracle::brute_solve(h).has_value());
    if (got) EXPECT_TRUE(h.satisfies(*got));
  }
}

TEST(HornSolve, Deterministic) {
  gen::Rng rng(9);
  auto h = gen::random_horn({8, {5}, 4, 3, false, 2}, rng);
  EXPECT_EQ(horn::solve(h), horn::solve(h));
}

}  // namespace
}  // namespace modcsp
