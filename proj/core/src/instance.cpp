#include "modcsp/instance.hpp"

#include <algorithm>

#include "modcsp/error.hpp"

namespace modcsp {

ModularSideConstraint::ModularSideConstraint(GroupSpec group, std::vector<WeightPair> weights,
                                             std::vector<ResidueVector> allowed)
    : group_(std::move(group)), weights_(std::move(weights)), allowed_(std::move(allowed)) {
  for (const auto& w : weights_)
    if (!(w.at_zero.group() == group_) || !(w.at_one.group() == group_))
      throw Error(Errc::group_mismatch, "weight bound to a different group");
  if (allowed_.empty()) throw Error(Errc::semantic_error, "allowed set must be non-empty");
  for (const auto& s : allowed_)
    if (!(s.group() == group_)) throw Error(Errc::group_mismatch, "allowed residue bound to a different group");
  std::sort(allowed_.begin(), allowed_.end());
  allowed_.erase(std::unique(allowed_.begin(), allowed_.end()), allowed_.end());
}

ModularSideConstraint ModularSideConstraint::unit(std::size_t n, std::uint32_t modulus,
                                                  std::vector<std::uint32_t> targets) {
  auto g = GroupSpec::cyclic(modulus);
  std::vector<WeightPair> w(n, WeightPair{g.zero(), g.element({1 % modulus})});
  std::vector<ResidueVector> s;
  for (auto t : targets) s.push_back(g.element({t}));
  return ModularSideConstraint(g, std::move(w), std::move(s));
}

bool ModularSideConstraint::allows(const ResidueVector& value) const {
  return std::binary_search(allowed_.begin(), allowed_.end(), value);
}

bool ModularSideConstraint::has_unit_weights() const {
  if (group_.rank() != 1) return false;
  for (const auto& w : weights_)
    if (!w.at_zero.is_zero() || w.at_one[0] > 1) return false;
  return true;
}

SideEvaluation eval_side(const ModularSideConstraint& side, const Assignment& x) {
  if (x.size() != side.num_vars())
    throw Error(Errc::length_mismatch, "assignment has " + std::to_string(x.size()) + " bits, side constraint expects " +
                                           std::to_string(side.num_vars()));
  const auto& g = side.group();
  std::vector<std::uint64_t> acc(g.rank(), 0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto& r = x[j] ? side.weight(j).at_one : side.weight(j).at_zero;
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = (acc[i] + r[i]) % g.modulus(i);
  }
  std::vector<std::uint32_t> v(acc.begin(), acc.end());
  ResidueVector value(g, std::move(v));
  bool ok = side.allows(value);
  return {std::move(value), ok};
}

namespace {

void check_var(std::uint32_t v, std::uint32_t n, const char* what) {
  if (v >= n) throw Error(Errc::semantic_error, std::string(what) + " index " + std::to_string(v + 1) + " out of range");
}

void check_side(const ModularSideConstraint& side, std::uint32_t n) {
  if (side.num_vars() != n)
    throw Error(Errc::length_mismatch, "side constraint covers " + std::to_string(side.num_vars()) + " variables, instance has " +
                                           std::to_string(n));
}

}  // namespace

void HornInstance::validate() const {
  check_side(side, n);
  for (const auto& c : clauses) {
    check_var(c.head, n, "head");
    for (auto b : c.body) {
      check_var(b, n, "body");
      if (b == c.head) throw Error(Errc::semantic_error, "clause head appears in its own body");
    }
  }
  for (const auto& u : units) check_var(u.var, n, "unit");
}

bool HornInstance::satisfies_local(const Assignment& x) const {
  for (const auto& u : units)
    if (x[u.var] != u.value) return false;
  for (const auto& c : clauses) {
    if (x[c.head]) continue;
    bool body = std::all_of(c.body.begin(), c.body.end(), [&](auto b) { return x[b]; });
    if (body) return false;
  }
  return true;
}

bool HornInstance::satisfies(const Assignment& x) const {
  return x.size() == n && satisfies_local(x) && eval_side(side, x).satisfied;
}

void Lin2Instance::validate() const {
  check_side(side, n);
  for (const auto& e : equations) {
    auto vs = e.vars;
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
      throw Error(Errc::semantic_error, "duplicate variable within one equation");
    for (auto v : e.vars) check_var(v, n, "equation");
  }
}

bool Lin2Instance::satisfies_local(const Assignment& x) const {
  for (const auto& e : equations) {
    bool acc = false;
    for (auto v : e.vars) acc ^= x[v];
    if (acc != e.rhs) return false;
  }
  return true;
}

bool Lin2Instance::satisfies(const Assignment& x) const {
  return x.size() == n && satisfies_local(x) && eval_side(side, x).satisfied;
}

void TwoSatInstance::validate() const {
  check_side(side, n);
  for (const auto& c : clauses) {
    check_var(c.first.var, n, "literal");
    check_var(c.second.var, n, "literal");
  }
}

bool TwoSatInstance::satisfies_local(const Assignment& x) const {
  return std::all_of(clauses.begin(), clauses.end(), [&](const auto& c) { return c.first.holds(x) || c.second.holds(x); });
}

bool TwoSatInstance::satisfies(const Assignment& x) const {
  return x.size() == n && satisfies_local(x) && eval_side(side, x).satisfied;
}

}  // namespace modcsp
