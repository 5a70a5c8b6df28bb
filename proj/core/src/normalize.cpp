#include "modcsp/normalize.hpp"

#include "modcsp/error.hpp"

namespace modcsp {

namespace {

struct UnitPlan {
  std::vector<std::uint32_t> weight;  // g_j(1) - g_j(0) mod M
  std::vector<ResidueVector> allowed;  // S - sum_j g_j(0)
  std::uint32_t total_vars = 0;
};

UnitPlan plan(const ModularSideConstraint& side, std::uint32_t n) {
  if (side.group().rank() != 1)
    throw Error(Errc::multi_component_group, "normalize_unit_weights needs a single modulus; flatten first");
  const auto& g = side.group();
  UnitPlan p;
  auto shift = g.zero();
  p.total_vars = n;
  for (std::uint32_t j = 0; j < n; ++j) {
    const auto& w = side.weight(j);
    shift += w.at_zero;
    std::uint32_t d = (w.at_one - w.at_zero)[0];
    p.weight.push_back(d);
    if (d > 1) p.total_vars += d - 1;
  }
  for (const auto& s : side.allowed()) p.allowed.push_back(s - shift);
  return p;
}

ModularSideConstraint unit_side(const GroupSpec& g, const UnitPlan& p) {
  std::vector<WeightPair> w;
  w.reserve(p.total_vars);
  const auto zero = g.zero();
  const auto one = g.element({1});
  for (auto d : p.weight) w.push_back({zero, d == 0 ? zero : one});
  while (w.size() < p.total_vars) w.push_back({zero, one});
  return ModularSideConstraint(g, std::move(w), p.allowed);
}

}  // namespace

HornInstance normalize_unit_weights(const HornInstance& inst) {
  inst.validate();
  auto p = plan(inst.side, inst.n);
  HornInstance out{p.total_vars, inst.clauses, inst.units, unit_side(inst.side.group(), p)};
  std::uint32_t next = inst.n;
  for (std::uint32_t j = 0; j < inst.n; ++j) {
    for (std::uint32_t c = 1; c < p.weight[j]; ++c, ++next) {
      out.clauses.push_back({next, {j}});
      out.clauses.push_back({j, {next}});
    }
  }
  return out;
}

Lin2Instance normalize_unit_weights(const Lin2Instance& inst) {
  inst.validate();
  auto p = plan(inst.side, inst.n);
  Lin2Instance out{p.total_vars, inst.equations, unit_side(inst.side.group(), p)};
  std::uint32_t next = inst.n;
  for (std::uint32_t j = 0; j < inst.n; ++j)
    for (std::uint32_t c = 1; c < p.weight[j]; ++c, ++next) out.equations.push_back({{j, next}, false});
  return out;
}

Assignment restrict_to(const Assignment& x, std::size_t n) {
  Assignment out(n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, x[i]);
  return out;
}

}  // namespace modcsp
