#include "modcsp/generate.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "modcsp/error.hpp"

namespace modcsp::gen {

namespace {

std::uint32_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng));
}

// k distinct values from [0, n).
std::vector<std::uint32_t> sample(std::uint32_t n, std::size_t k, Rng& rng) {
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0U);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min<std::size_t>(k, n));
  return all;
}

}  // namespace

ModularSideConstraint random_side(std::uint32_t n, const GroupSpec& group, bool unit_weights, std::size_t allowed, Rng& rng) {
  std::vector<WeightPair> weights;
  for (std::uint32_t j = 0; j < n; ++j) {
    if (unit_weights) {
      weights.push_back({group.zero(), group.reduce(std::vector<std::int64_t>(group.rank(), 1))});
      continue;
    }
    std::vector<std::uint32_t> zero, one;
    for (std::size_t c = 0; c < group.rank(); ++c) {
      zero.push_back(uniform(rng, 0, group.modulus(c) - 1));
      one.push_back(uniform(rng, 0, group.modulus(c) - 1));
    }
    weights.push_back({group.element(zero), group.element(one)});
  }
  const std::size_t want = static_cast<std::size_t>(std::min<std::uint64_t>(std::max<std::size_t>(allowed, 1), group.order()));
  std::set<std::uint64_t> picked;
  while (picked.size() < want) picked.insert(std::uniform_int_distribution<std::uint64_t>(0, group.order() - 1)(rng));
  std::vector<ResidueVector> s;
  for (auto i : picked) s.push_back(group.at(i));
  return ModularSideConstraint(group, std::move(weights), std::move(s));
}

HornInstance random_horn(const RandomSpec& spec, Rng& rng) {
  if (spec.n == 0 && spec.constraints) throw Error(Errc::invalid_argument, "constraints need at least one variable");
  HornInstance inst{spec.n, {}, {}, random_side(spec.n, GroupSpec(spec.moduli), spec.unit_weights, spec.allowed, rng)};
  for (std::size_t i = 0; i < spec.constraints; ++i) {
    // Roughly one record in six is a unit.
    if (uniform(rng, 0, 5) == 0) {
      inst.units.push_back({uniform(rng, 0, spec.n - 1), uniform(rng, 0, 1) == 1});
      continue;
    }
    const std::size_t k = uniform(rng, 0, std::min<std::size_t>(spec.max_arity, spec.n - 1));
    auto vars = sample(spec.n, k + 1, rng);
    inst.clauses.push_back({vars[0], std::vector<std::uint32_t>(vars.begin() + 1, vars.end())});
  }
  return inst;
}

Lin2Instance random_lin2(const RandomSpec& spec, Rng& rng) {
  if (spec.n == 0 && spec.constraints) throw Error(Errc::invalid_argument, "constraints need at least one variable");
  Lin2Instance inst{spec.n, {}, random_side(spec.n, GroupSpec(spec.moduli), spec.unit_weights, spec.allowed, rng)};
  for (std::size_t i = 0; i < spec.constraints; ++i) {
    const std::size_t k = uniform(rng, 1, std::min<std::size_t>(spec.max_arity, spec.n));
    inst.equations.push_back({sample(spec.n, k, rng), uniform(rng, 0, 1) == 1});
  }
  return inst;
}

TwoSatInstance random_twosat(const RandomSpec& spec, Rng& rng) {
  if (spec.n == 0 && spec.constraints) throw Error(Errc::invalid_argument, "constraints need at least one variable");
  TwoSatInstance inst{spec.n, {}, random_side(spec.n, GroupSpec(spec.moduli), spec.unit_weights, spec.allowed, rng)};
  for (std::size_t i = 0; i < spec.constraints; ++i) {
    Literal a{uniform(rng, 0, spec.n - 1), uniform(rng, 0, 1) == 1};
    Literal b{uniform(rng, 0, spec.n - 1), uniform(rng, 0, 1) == 1};
    inst.clauses.push_back({a, b});
  }
  return inst;
}

reductions::ThreeSatInstance random_3sat(std::uint32_t t, std::size_t clauses, Rng& rng) {
  if (t == 0 && clauses) throw Error(Errc::invalid_argument, "clauses need at least one variable");
  reductions::ThreeSatInstance phi{t, {}};
  for (std::size_t i = 0; i < clauses; ++i) {
    std::vector<Literal> c;
    for (auto v : sample(t, uniform(rng, 1, 3), rng)) c.push_back({v, uniform(rng, 0, 1) == 1});
    phi.clauses.push_back(std::move(c));
  }
  return phi;
}

AffineSubspace random_subspace(std::size_t n, std::size_t dim, Rng& rng) {
  if (dim > n) throw Error(Errc::invalid_argument, "dimension exceeds ambient size");
  auto random_vector = [&] {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, uniform(rng, 0, 1) == 1);
    return v;
  };
  std::vector<BitVector> basis;
  while (basis.size() < dim) {
    basis.push_back(random_vector());
    if (gf2_rank(basis) < basis.size()) basis.pop_back();
  }
  return AffineSubspace(random_vector(), std::move(basis));
}

Lin2Instance subspace_instance(const AffineSubspace& space, std::uint32_t modulus, std::vector<std::uint32_t> targets) {
  const auto n = static_cast<std::uint32_t>(space.ambient());
  Lin2Instance inst{n, {}, ModularSideConstraint::unit(n, modulus, std::move(targets))};
  for (const auto& c : orthogonal_complement(space.basis(), n)) {
    Lin2Equation e{{}, c.dot(space.offset())};
    for (std::uint32_t i = 0; i < n; ++i)
      if (c[i]) e.vars.push_back(i);
    inst.equations.push_back(std::move(e));
  }
  return inst;
}

}  // namespace modcsp::gen
