#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "modcsp/bitvec.hpp"
#include "modcsp/instance.hpp"
#include "modcsp/rounds.hpp"

namespace modcsp {

// offset + span(basis) inside GF(2)^n, basis linearly independent.
class AffineSubspace {
 public:
  AffineSubspace(BitVector offset, std::vector<BitVector> basis);
  static AffineSubspace full(std::size_t n);

  std::size_t ambient() const noexcept { return offset_.size(); }
  std::size_t dim() const noexcept { return basis_.size(); }
  const BitVector& offset() const noexcept { return offset_; }
  const std::vector<BitVector>& basis() const noexcept { return basis_; }

  // offset + sum of basis vectors selected by coeffs (length dim()).
  BitVector point(const BitVector& coeffs) const;
  bool contains(const BitVector& x) const;

 private:
  BitVector offset_;
  std::vector<BitVector> basis_;
  std::vector<BitVector> echelon_;  // reduced copy of the basis
  std::vector<std::size_t> pivots_;
};

// Rank of a list of GF(2) vectors of equal length.
std::size_t gf2_rank(std::vector<BitVector> rows);

// Basis of {w : <w, v> = 0 for every v in vectors}, all of length n.
std::vector<BitVector> orthogonal_complement(const std::vector<BitVector>& vectors, std::size_t n);

}  // namespace modcsp

namespace modcsp::lin2 {

std::optional<AffineSubspace> gaussian_basis(const Lin2Instance& inst);

enum class BoundCase {
  power_of_two,
  odd_prime_power,
  twice_odd_prime_power,
  power_of_two_times_odd_prime_power,
  trivial,
};

const char* to_string(BoundCase c);

struct DimensionBound {
  std::uint32_t modulus;
  std::size_t n;
  std::size_t bound;
  BoundCase bound_case;
};

inline constexpr unsigned kDefaultBoundFactor = 8;

// Upper bound on the largest dimension of an affine subspace of GF(2)^n with
// exactly one point of some weight residue mod M. `factor` stands in for the
// unknown constant of the 2^l * odd case.
DimensionBound dimension_bound(std::size_t n, std::uint32_t modulus, unsigned factor = kDefaultBoundFactor);

// Side constraint must be cyclic with unit weights over space.ambient()
// variables. AUTO picks min(dimension_bound, dim).
std::optional<BitVector> solve_deterministic(const AffineSubspace& space, const ModularSideConstraint& side,
                                             Rounds rounds, unsigned factor = kDefaultBoundFactor);

// Uniform samples via random coefficient vectors. AUTO trials are
// 4 * 2^bound; whenever the trial count reaches |space| the search becomes
// exhaustive.
std::optional<BitVector> solve_randomized(const AffineSubspace& space, const ModularSideConstraint& side, Trials trials,
                                          std::uint64_t seed, unsigned factor = kDefaultBoundFactor);

// Direct sum of `copies` Hadamard codes of dimension d, each in GF(2)^(2^d).
AffineSubspace hadamard_direct_sum(std::size_t d, std::size_t copies);

struct SolveConfig {
  bool randomized = false;
  Rounds rounds = Rounds::automatic();
  Trials trials = Trials::automatic();
  std::uint64_t seed = 0;
  unsigned bound_factor = kDefaultBoundFactor;
  std::size_t max_vars_after_normalize = 2'000'000;
};

std::optional<Assignment> solve(const Lin2Instance& inst, const SolveConfig& cfg = {});

}  // namespace modcsp::lin2
