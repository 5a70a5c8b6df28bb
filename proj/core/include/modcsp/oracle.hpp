#pragma once

#include <cstdint>
#include <optional>

#include "modcsp/instance.hpp"
#include "modcsp/lin2.hpp"
#include "modcsp/reductions.hpp"

namespace modcsp::oracle {

inline constexpr std::size_t kMaxVars = 24;
inline constexpr std::size_t kMaxSearchDim = 6;

// Lexicographically least satisfying assignment, reading x_1 as the most
// significant position, by trying all 2^n assignments.
std::optional<Assignment> brute_solve(const HornInstance& inst);
std::optional<Assignment> brute_solve(const Lin2Instance& inst);
std::optional<Assignment> brute_solve(const TwoSatInstance& inst);
std::optional<Assignment> brute_solve(const reductions::ThreeSatInstance& phi);

// |{x in space : Ham(x) = a mod M}|.
std::uint64_t count_solutions(const AffineSubspace& space, std::uint32_t a, std::uint32_t modulus);

// Largest dimension of an affine subspace of GF(2)^n holding exactly one point
// of some weight residue mod M.
std::size_t search_max_unique_dimension(std::size_t n, std::uint32_t modulus);

}  // namespace modcsp::oracle
