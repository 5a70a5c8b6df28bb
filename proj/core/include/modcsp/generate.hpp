#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "modcsp/instance.hpp"
#include "modcsp/lin2.hpp"
#include "modcsp/reductions.hpp"

namespace modcsp::gen {

using Rng = std::mt19937_64;

struct RandomSpec {
  std::uint32_t n = 6;
  std::vector<std::uint32_t> moduli{3};
  std::size_t constraints = 4;
  std::size_t max_arity = 3;     // Horn body size / equation length
  bool unit_weights = false;     // g_j(0) = 0, g_j(1) = 1
  std::size_t allowed = 1;       // number of distinct residues in S (capped at |G|)
};

ModularSideConstraint random_side(std::uint32_t n, const GroupSpec& group, bool unit_weights, std::size_t allowed, Rng& rng);

HornInstance random_horn(const RandomSpec& spec, Rng& rng);
Lin2Instance random_lin2(const RandomSpec& spec, Rng& rng);
TwoSatInstance random_twosat(const RandomSpec& spec, Rng& rng);

// Clause widths uniform in 1..3, variables distinct within a clause.
reductions::ThreeSatInstance random_3sat(std::uint32_t t, std::size_t clauses, Rng& rng);

// Random offset and `dim` independent vectors in GF(2)^n.
AffineSubspace random_subspace(std::size_t n, std::size_t dim, Rng& rng);

// LIN-2 instance whose solution space is the given subspace, unit weights mod M.
Lin2Instance subspace_instance(const AffineSubspace& space, std::uint32_t modulus, std::vector<std::uint32_t> targets);

}  // namespace modcsp::gen
