#pragma once

#include <cstdint>
#include <vector>

#include "modcsp/instance.hpp"
#include "modcsp/poly.hpp"

namespace modcsp::reductions {

inline constexpr std::size_t kMaxGeneratedVars = 2'000'000;

struct ThreeSatInstance {
  std::uint32_t t = 0;
  std::vector<std::vector<Literal>> clauses;  // 1 to 3 literals each

  void validate() const;
  bool satisfied_by(const Assignment& x) const;
  friend bool operator==(const ThreeSatInstance&, const ThreeSatInstance&) = default;
};

// Multi-component group to a single modulus for one allowed tuple. The first
// inst.n variables of the result are the original ones. A cyclic group passes
// through with S narrowed to {target}.
HornInstance flatten_horn(const HornInstance& inst, const ResidueVector& target);
Lin2Instance flatten_lin2(const Lin2Instance& inst, const ResidueVector& target);

// Polynomial h over n variables with sum_j g_j(x_j) = target iff h(x) = 0 mod
// the returned modulus, for x in {0,1}^n. Exposed for tests.
struct FlatPoly {
  IntPoly poly;
  std::uint64_t modulus = 0;
};
FlatPoly flatten_poly_01(const ModularSideConstraint& side, const ResidueVector& target);
// Same condition over z = (-1)^x.
FlatPoly flatten_poly_pm1(const ModularSideConstraint& side, const ResidueVector& target);

// rep must represent NAND over {0,1}^m with m = number of clauses. The output
// has no unit constraints; the first t variables are the 3-SAT variables.
HornInstance gadget_3sat_to_horn(const ThreeSatInstance& phi, std::uint32_t modulus, const IntPoly& rep);

// rep must represent OR over {-1,1}^m, M odd. Variables are monomial
// coordinates, so there is no direct projection back to phi.
Lin2Instance gadget_3sat_to_lin2(const ThreeSatInstance& phi, std::uint32_t modulus, const IntPoly& rep);

}  // namespace modcsp::reductions
