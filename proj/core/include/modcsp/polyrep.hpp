#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "modcsp/bitvec.hpp"
#include "modcsp/lin2.hpp"
#include "modcsp/number.hpp"
#include "modcsp/poly.hpp"

namespace modcsp::polyrep {

inline constexpr std::size_t kMaxMonomials = 2'000'000;

// C(a, b) mod p from base-p digits.
std::uint64_t lucas_binom(std::uint64_t a, std::uint64_t b, std::uint32_t p);

// Over {0,1}^n, degree p^l - 1: value 0 mod p when Ham(x) = a mod p^l, else 1.
// Coefficients in [0, p).
IntPoly residue_indicator_poly(std::uint32_t p, unsigned l, std::uint64_t a, std::size_t n);

// weights = (a_0, a_1, ..., a_n) with entries in [0, p^k). Result over n
// variables is 0 mod p iff sum a_i x_i = a_0 mod p^k, else 1. Coefficients in [0, p).
IntPoly linear_to_prime_poly(const std::vector<std::uint64_t>& weights, std::uint32_t p, unsigned k);

// Sum over M-1 blocks of (1 - prod block); degree ceil(d / (M-1)).
IntPoly nand_trivial(std::size_t d, std::uint32_t modulus);

// OR over {-1,1}^d for odd M, blocks of (1 - prod (1 + z_i) / 2). Coefficients in [0, M).
IntPoly or_trivial_pm1(std::size_t d, std::uint32_t modulus);

struct BbrPlan {
  std::vector<PrimePower> prime_powers;  // (p_i, l_i) per distinct prime of M
  std::size_t degree = 0;                // max_i p_i^l_i - 1
};

// Exponents l_i with prod p_i^l_i > d minimizing the degree, ties broken by
// the smaller product. Requires at least two distinct primes.
BbrPlan bbr_plan(std::size_t d, std::uint32_t modulus);

// NAND_d mod M from one residue indicator per prime, combined by CRT.
// Coefficients in [0, M).
IntPoly nand_bbr(std::size_t d, std::uint32_t modulus);

// Whichever of nand_trivial / nand_bbr has the lower degree (trivial on ties).
IntPoly nand_best(std::size_t d, std::uint32_t modulus);
std::size_t nand_best_degree(std::size_t d, std::uint32_t modulus);

enum class CoverMode { exact, greedy };

// Fewest monomials whose variables together cover every variable of p.
std::size_t covering_number(const IntPoly& p, CoverMode mode);

struct MrdSystem {
  std::size_t d = 0;
  std::vector<BitVector> sets;  // subsets of [d]
  std::uint32_t modulus = 2;
  std::size_t r = 0;
};

struct MrdCheck {
  bool intersection_closed = false;
  bool sizes_avoid_d = false;
  bool covers_small_subsets = false;
  bool ok() const { return intersection_closed && sizes_avoid_d && covers_small_subsets; }
};

MrdCheck check_mrd(const MrdSystem& sys);

// One variable per maximal set; throws InvalidSystem on an invalid input.
IntPoly mrd_to_poly(const MrdSystem& sys);

// p must be a NAND rep over all its variables with nonnegative coefficients.
MrdSystem poly_to_mrd(const IntPoly& p, std::uint32_t modulus, std::size_t r);

// Vectors need not be independent, so this is not an AffineSubspace.
struct SubspaceData {
  BitVector offset;
  std::vector<BitVector> vectors;
};

// p(z) = sum_t (-1)^{b_t} prod_{i : u_i[t] = 1} z_i, so that
// n - 2 Ham(b + sum y_i u_i) = p((-1)^y).
IntPoly subspace_to_poly(const BitVector& offset, const std::vector<BitVector>& vectors);
SubspaceData poly_to_subspace(const IntPoly& p);

// U must contain exactly one point of weight a mod M; M odd.
IntPoly unique_point_subspace_to_or_poly(const AffineSubspace& space, std::uint32_t target, std::uint32_t modulus);

struct UniquePointSpace {
  AffineSubspace space;
  std::uint32_t target;  // the offset is the only point of this weight residue
};

UniquePointSpace or_poly_to_subspace(const IntPoly& p, std::uint32_t modulus);

class MatchingVectorFamily {
 public:
  MatchingVectorFamily(std::uint32_t modulus, std::size_t rank, std::vector<std::uint32_t> u, std::vector<std::uint32_t> v);

  std::uint32_t modulus() const noexcept { return modulus_; }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return rank_ ? u_.size() / rank_ : 0; }
  const std::uint32_t* u(std::size_t i) const { return u_.data() + i * rank_; }
  const std::uint32_t* v(std::size_t i) const { return v_.data() + i * rank_; }
  std::uint32_t inner(std::size_t i, std::size_t j) const;

  // All N^2 inner products: zero on the diagonal, nonzero elsewhere.
  bool verify() const;

 private:
  std::uint32_t modulus_;
  std::size_t rank_;
  std::vector<std::uint32_t> u_;  // row-major N x rank
  std::vector<std::uint32_t> v_;
};

inline constexpr std::size_t kMaxMvfVars = 12;

MatchingVectorFamily mvf_from_or_poly(const IntPoly& p, std::uint32_t modulus);

// Random valid representations, for measuring covering numbers and sparsity.
IntPoly random_nand_rep_01(std::size_t d, std::uint32_t modulus, std::mt19937_64& rng);
IntPoly random_or_rep_pm1(std::size_t d, std::uint32_t modulus, std::mt19937_64& rng);

}  // namespace modcsp::polyrep
