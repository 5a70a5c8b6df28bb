#include <gtest/gtest.h>

#include "modcsp/error.hpp"
#include "modcsp/poly.hpp"

namespace modcsp {
namespace {

IntPoly from_terms(std::size_t n, std::initializer_list<std::pair<Monomial, int>> terms) {
  IntPoly p(n);
  for (const auto& [m, c] : terms) p.add_term(m, c);
  return p;
}

TEST(IntPoly, Invariants) {
  auto p = from_terms(3, {{{}, 2}, {{0}, -1}, {{1, 2}, 3}, {{0}, 1}});
  EXPECT_EQ(p.sparsity(), 2U);  // x1 cancels
  EXPECT_EQ(p.degree(), 2U);
  EXPECT_EQ(p.coeff_norm(), 5);
  EXPECT_FALSE(p.has_negative_coefficients());
  EXPECT_EQ(p.coefficient({0}), 0);
}

TEST(IntPoly, RejectsNonCanonicalMonomial) {
  IntPoly p(3);
  EXPECT_THROW(p.add_term({1, 0}, 1), Error);
  EXPECT_THROW(p.add_term({0, 0}, 1), Error);
  EXPECT_THROW(p.add_term({3}, 1), Error);
}

TEST(IntPoly, ReducedMod) {
  auto p = from_terms(2, {{{}, -1}, {{0}, 7}});
  auto r = p.reduced_mod(3);
  EXPECT_EQ(r.coefficient({}), 2);
  EXPECT_EQ(r.coefficient({0}), 1);
}

TEST(Multiply, BooleanIdempotent) {
  auto x = IntPoly::variable(2, 0);
  auto sq = multiply(x, x, Basis::zero_one);
  EXPECT_EQ(sq, x);
  auto pm = multiply(x, x, Basis::plus_minus_one);
  EXPECT_EQ(pm, IntPoly::constant(2, 1));
}

TEST(Eval, NandAtAllOnes) {
  auto p = from_terms(2, {{{}, 1}, {{0, 1}, -1}});
  std::vector<int> pt{1, 1};
  EXPECT_EQ(eval(p, pt, Basis::zero_one), 0);
}

TEST(Eval, SignedMod3) {
  auto p = from_terms(2, {{{}, 1}, {{0}, 1}, {{1}, 1}});
  std::vector<int> pt{1, 1};
  EXPECT_EQ(eval(p, pt, Basis::plus_minus_one, 3), 0);
}

TEST(Eval, Constant) {
  auto p = IntPoly::constant(3, 5);
  std::vector<int> a{0, 1, 0}, b{-1, 1, -1};
  EXPECT_EQ(eval(p, a, Basis::zero_one), 5);
  EXPECT_EQ(eval(p, b, Basis::plus_minus_one), 5);
}

TEST(Eval, BasisMismatch) {
  auto p = IntPoly::variable(1, 0);
  std::vector<int> pt{-1};
  try {
    eval(p, pt, Basis::zero_one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::basis_mismatch);
  }
}

TEST(NandCheck, Examples) {
  EXPECT_TRUE(is_nand_rep_01(from_terms(2, {{{}, 1}, {{0, 1}, -1}}), 2, 2));
  EXPECT_TRUE(is_nand_rep_01(from_terms(2, {{{}, 2}, {{0}, -1}, {{1}, -1}}), 2, 3));
  EXPECT_FALSE(is_nand_rep_01(IntPoly(1), 1, 2));
}

TEST(OrCheck, Examples) {
  EXPECT_TRUE(is_or_rep_pm1(from_terms(2, {{{}, 1}, {{0}, 1}, {{1}, 1}}), 2, 3));
  EXPECT_TRUE(is_or_rep_pm1(from_terms(1, {{{}, -1}, {{0}, 1}}), 1, 3));
  EXPECT_FALSE(is_or_rep_pm1(IntPoly::constant(1, 1), 1, 2));
}

TEST(NandCheck, SizeLimit) {
  try {
    is_nand_rep_01(IntPoly(30), 30, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::size_limit);
  }
}

TEST(CubeValues, IndexConvention) {
  auto p = from_terms(2, {{{0}, 1}, {{1}, 2}});
  auto v = cube_values(p, 2, Basis::zero_one, 100);
  EXPECT_EQ(v, (std::vector<std::uint64_t>{0, 1, 2, 3}));
}

}  // namespace
}  // namespace modcsp
