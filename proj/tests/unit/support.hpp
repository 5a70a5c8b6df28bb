#pragma once

#include <cstdint>
#include <vector>

#include "modcsp/instance.hpp"

namespace modcsp::test {

inline ResidueVector z(std::uint32_t modulus, std::uint32_t r) { return GroupSpec::cyclic(modulus).element({r}); }

// g_j(0) = 0, g_j(1) = w_j over Z/M.
inline ModularSideConstraint weighted(std::uint32_t modulus, const std::vector<std::uint32_t>& w,
                                      std::vector<std::uint32_t> targets) {
  auto g = GroupSpec::cyclic(modulus);
  std::vector<WeightPair> weights;
  for (auto v : w) weights.push_back({g.zero(), g.element({v % modulus})});
  std::vector<ResidueVector> s;
  for (auto t : targets) s.push_back(g.element({t}));
  return ModularSideConstraint(g, std::move(weights), std::move(s));
}

inline Assignment bits(const char* s) { return BitVector::from_string(s); }

}  // namespace modcsp::test
