#pragma once

#include <cstdint>
#include <vector>

#include "modcsp/bitvec.hpp"
#include "modcsp/group.hpp"

namespace modcsp {

// (g_j(0), g_j(1)) for one variable.
struct WeightPair {
  ResidueVector at_zero;
  ResidueVector at_one;
  friend bool operator==(const WeightPair&, const WeightPair&) = default;
};

// sum_j g_j(x_j) must land in the allowed set.
class ModularSideConstraint {
 public:
  ModularSideConstraint(GroupSpec group, std::vector<WeightPair> weights, std::vector<ResidueVector> allowed);

  // g_j(0) = 0, g_j(1) = 1 for every variable over Z/M.
  static ModularSideConstraint unit(std::size_t n, std::uint32_t modulus, std::vector<std::uint32_t> targets);

  const GroupSpec& group() const noexcept { return group_; }
  std::size_t num_vars() const noexcept { return weights_.size(); }
  const WeightPair& weight(std::size_t j) const { return weights_[j]; }
  const std::vector<WeightPair>& weights() const noexcept { return weights_; }
  // Sorted, duplicate free.
  const std::vector<ResidueVector>& allowed() const noexcept { return allowed_; }
  bool allows(const ResidueVector& value) const;

  // True when the group is cyclic and every g_j(0) = 0, g_j(1) in {0, 1}.
  bool has_unit_weights() const;

  friend bool operator==(const ModularSideConstraint&, const ModularSideConstraint&) = default;

 private:
  GroupSpec group_;
  std::vector<WeightPair> weights_;
  std::vector<ResidueVector> allowed_;
};

struct SideEvaluation {
  ResidueVector value;
  bool satisfied;
};

SideEvaluation eval_side(const ModularSideConstraint& side, const Assignment& x);

struct Literal {
  std::uint32_t var = 0;
  bool negated = false;
  Literal operator~() const { return {var, !negated}; }
  bool holds(const Assignment& x) const { return x[var] != negated; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct HornClause {
  std::uint32_t head = 0;
  std::vector<std::uint32_t> body;  // body -> head
  friend bool operator==(const HornClause&, const HornClause&) = default;
};

struct UnitConstraint {
  std::uint32_t var = 0;
  bool value = false;
  friend bool operator==(const UnitConstraint&, const UnitConstraint&) = default;
};

struct HornInstance {
  std::uint32_t n = 0;
  std::vector<HornClause> clauses;
  std::vector<UnitConstraint> units;
  ModularSideConstraint side;

  void validate() const;
  bool satisfies_local(const Assignment& x) const;
  bool satisfies(const Assignment& x) const;
  friend bool operator==(const HornInstance&, const HornInstance&) = default;
};

struct Lin2Equation {
  std::vector<std::uint32_t> vars;  // XOR of these equals rhs
  bool rhs = false;
  friend bool operator==(const Lin2Equation&, const Lin2Equation&) = default;
};

struct Lin2Instance {
  std::uint32_t n = 0;
  std::vector<Lin2Equation> equations;
  ModularSideConstraint side;

  void validate() const;
  bool satisfies_local(const Assignment& x) const;
  bool satisfies(const Assignment& x) const;
  friend bool operator==(const Lin2Instance&, const Lin2Instance&) = default;
};

struct TwoSatClause {
  Literal first;
  Literal second;
  friend bool operator==(const TwoSatClause&, const TwoSatClause&) = default;
};

struct TwoSatInstance {
  std::uint32_t n = 0;
  std::vector<TwoSatClause> clauses;
  ModularSideConstraint side;

  void validate() const;
  bool satisfies_local(const Assignment& x) const;
  bool satisfies(const Assignment& x) const;
  friend bool operator==(const TwoSatInstance&, const TwoSatInstance&) = default;
};

}  // namespace modcsp
