#include "modcsp/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "modcsp/error.hpp"
#include "modcsp/number.hpp"
#include "modcsp/polyrep.hpp"

namespace modcsp::reductions {

void ThreeSatInstance::validate() const {
  for (const auto& c : clauses) {
    if (c.empty() || c.size() > 3) throw Error(Errc::semantic_error, "3-SAT clause must have 1 to 3 literals");
    for (const auto& l : c)
      if (l.var >= t) throw Error(Errc::semantic_error, "literal index " + std::to_string(l.var + 1) + " out of range");
  }
}

bool ThreeSatInstance::satisfied_by(const Assignment& x) const {
  return std::all_of(clauses.begin(), clauses.end(),
                     [&](const auto& c) { return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return l.holds(x); }); });
}

namespace {

double count_low_degree(std::size_t n, std::size_t d) {
  double total = 0, term = 1;
  for (std::size_t k = 0; k <= std::min(n, d); ++k) {
    total += term;
    term = term * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return total;
}

IntPoly one(std::size_t n) { return IntPoly::constant(n, 1); }

// One sum a_j x_j = a_0 (mod p^k) condition per prime power of every component.
struct LinearCondition {
  PrimePower q;
  std::vector<std::uint64_t> weights;  // a_0, a_1, ..., a_n
};

std::map<std::uint32_t, std::vector<LinearCondition>> conditions_by_prime(const ModularSideConstraint& side,
                                                                           const ResidueVector& target) {
  const auto& g = side.group();
  if (!(target.group() == g)) throw Error(Errc::group_mismatch, "target lives in a different group");
  std::map<std::uint32_t, std::vector<LinearCondition>> out;
  for (std::size_t c = 0; c < g.rank(); ++c) {
    for (const auto& pp : factorize(g.modulus(c))) {
      const std::uint64_t q = pp.value();
      LinearCondition cond{pp, {}};
      std::int64_t a0 = target[c];
      for (const auto& w : side.weights()) a0 -= w.at_zero[c];
      cond.weights.push_back(mod_reduce(a0, q));
      for (const auto& w : side.weights())
        cond.weights.push_back(mod_reduce(static_cast<std::int64_t>(w.at_one[c]) - w.at_zero[c], q));
      out[pp.prime].push_back(std::move(cond));
    }
  }
  return out;
}

void check_size(std::size_t n, std::size_t degree) {
  const double vars = count_low_degree(n, degree);
  if (vars > static_cast<double>(kMaxGeneratedVars))
    throw Error(Errc::size_limit, "flattening needs about " + std::to_string(static_cast<long long>(vars)) + " variables");
}

struct PerPrime {
  std::uint32_t prime;
  IntPoly poly;       // 0 mod p iff every condition of this prime holds
  std::size_t degree;  // sum over components of p^k - 1
};

std::vector<PerPrime> per_prime_polys(const ModularSideConstraint& side, const ResidueVector& target) {
  const std::size_t n = side.num_vars();
  const auto grouped = conditions_by_prime(side, target);
  std::size_t degree = 0;
  for (const auto& [p, conds] : grouped) {
    std::size_t di = 0;
    for (const auto& c : conds) di += c.q.value() - 1;
    degree = std::max(degree, di);
  }
  check_size(n, degree);
  std::vector<PerPrime> out;
  for (const auto& [p, conds] : grouped) {
    IntPoly keep = one(n);
    std::size_t di = 0;
    for (const auto& c : conds) {
      auto fij = polyrep::linear_to_prime_poly(c.weights, p, c.q.exponent);
      keep = multiply(keep, one(n) - fij, Basis::zero_one).reduced_mod(p);
      di += c.q.value() - 1;
    }
    out.push_back({p, (one(n) - keep).reduced_mod(p), di});
  }
  return out;
}

// x_T = prod_{i in T} (1 - z_i) / 2, scaled by 2^|T| (so the caller picks the inverse).
void add_pm1_expansion(IntPoly& out, const Monomial& t, const BigInt& coeff) {
  const std::size_t k = t.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Monomial u;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1U) u.push_back(t[i]);
    out.add_term(u, std::popcount(mask) % 2 ? BigInt(-coeff) : coeff);
  }
}

FlatPoly crt_combine(const std::vector<std::pair<IntPoly, std::uint64_t>>& parts, std::size_t n) {
  std::uint64_t modulus = 1;
  for (const auto& [p, m] : parts) modulus *= m;
  std::map<Monomial, bool> monomials;
  for (const auto& [p, m] : parts)
    for (const auto& [mono, c] : p.terms()) monomials[mono] = true;
  FlatPoly out{IntPoly(n), modulus};
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rm(parts.size());
  for (const auto& [mono, unused] : monomials) {
    for (std::size_t i = 0; i < parts.size(); ++i)
      rm[i] = {mod_u64(parts[i].first.coefficient(mono), parts[i].second), parts[i].second};
    out.poly.add_term(mono, BigInt(crt(rm)));
  }
  return out;
}

GroupSpec cyclic_checked(std::uint64_t modulus) {
  if (modulus > UINT32_MAX) throw Error(Errc::size_limit, "flattened modulus " + std::to_string(modulus) + " exceeds 32 bits");
  return GroupSpec::cyclic(static_cast<std::uint32_t>(modulus));
}

// Variables for monomials of degree >= 2, appended after the first n.
std::map<Monomial, std::uint32_t> monomial_vars(const IntPoly& p, std::uint32_t n) {
  std::map<Monomial, std::uint32_t> index;
  std::uint32_t next = n;
  for (const auto& [m, c] : p.terms())
    if (m.size() >= 2) index[m] = next++;
  if (next > kMaxGeneratedVars) throw Error(Errc::size_limit, "too many generated variables");
  return index;
}

std::uint32_t var_of(const Monomial& m, const std::map<Monomial, std::uint32_t>& index) {
  return m.size() == 1 ? m[0] : index.at(m);
}

// y_S -> y_i and AND_i y_i -> y_S for every product variable.
void tie_products(std::vector<HornClause>& clauses, const std::map<Monomial, std::uint32_t>& index) {
  for (const auto& [m, v] : index) {
    for (auto i : m) clauses.push_back({i, {v}});
    clauses.push_back({v, std::vector<std::uint32_t>(m.begin(), m.end())});
  }
}

// sum_S w_S y_S = target over Z/M with y_S given by `var_of`.
ModularSideConstraint weighted_side(const GroupSpec& g, std::uint32_t nvars, const std::map<Monomial, std::uint64_t>& weight,
                                    const std::map<Monomial, std::uint32_t>& index, std::uint64_t target) {
  const auto zero = g.zero();
  std::vector<WeightPair> w(nvars, {zero, zero});
  for (const auto& [m, c] : weight) {
    if (m.empty()) continue;
    w[var_of(m, index)].at_one = g.element({static_cast<std::uint32_t>(c)});
  }
  return ModularSideConstraint(g, std::move(w), {g.element({static_cast<std::uint32_t>(target)})});
}

template <class Inst>
Inst narrow(const Inst& inst, const ResidueVector& target) {
  if (!(target.group() == inst.side.group())) throw Error(Errc::group_mismatch, "target lives in a different group");
  Inst out = inst;
  out.side = ModularSideConstraint(inst.side.group(), inst.side.weights(), {target});
  return out;
}

}  // namespace

FlatPoly flatten_poly_01(const ModularSideConstraint& side, const ResidueVector& target) {
  const std::size_t n = side.num_vars();
  std::vector<std::pair<IntPoly, std::uint64_t>> parts;
  for (auto& pp : per_prime_polys(side, target)) parts.push_back({std::move(pp.poly), pp.prime});
  return crt_combine(parts, n);
}

FlatPoly flatten_poly_pm1(const ModularSideConstraint& side, const ResidueVector& target) {
  const std::size_t n = side.num_vars();
  std::vector<std::pair<IntPoly, std::uint64_t>> parts;
  for (auto& pp : per_prime_polys(side, target)) {
    IntPoly h(n);
    if (pp.prime == 2) {
      // 2^{d1} f((1 - z) / 2) has integer coefficients and is 0 mod 2^{d1+1} iff f is even.
      const std::uint64_t m = ipow(2, static_cast<unsigned>(pp.degree + 1));
      if (pp.degree + 1 >= 32) throw Error(Errc::size_limit, "power-of-two part of the flattened modulus exceeds 32 bits");
      for (const auto& [t, c] : pp.poly.terms()) add_pm1_expansion(h, t, c * BigInt(ipow(2, static_cast<unsigned>(pp.degree - t.size()))));
      parts.push_back({h.reduced_mod(m), m});
    } else {
      const std::uint64_t inv2 = mod_inverse(2, pp.prime);
      for (const auto& [t, c] : pp.poly.terms()) {
        std::uint64_t scale = 1;
        for (std::size_t i = 0; i < t.size(); ++i) scale = scale * inv2 % pp.prime;
        add_pm1_expansion(h, t, c * scale);
      }
      parts.push_back({h.reduced_mod(pp.prime), pp.prime});
    }
  }
  return crt_combine(parts, n);
}

HornInstance flatten_horn(const HornInstance& inst, const ResidueVector& target) {
  inst.validate();
  if (inst.side.group().rank() == 1) return narrow(inst, target);
  const auto flat = flatten_poly_01(inst.side, target);
  const auto index = monomial_vars(flat.poly, inst.n);
  const auto nvars = static_cast<std::uint32_t>(inst.n + index.size());
  const auto g = cyclic_checked(flat.modulus);

  std::map<Monomial, std::uint64_t> weight;
  for (const auto& [m, c] : flat.poly.terms()) weight[m] = mod_u64(c, flat.modulus);
  const std::uint64_t rhs = (flat.modulus - mod_u64(flat.poly.coefficient({}), flat.modulus)) % flat.modulus;

  HornInstance out{nvars, inst.clauses, inst.units, weighted_side(g, nvars, weight, index, rhs)};
  tie_products(out.clauses, index);
  return out;
}

Lin2Instance flatten_lin2(const Lin2Instance& inst, const ResidueVector& target) {
  inst.validate();
  if (inst.side.group().rank() == 1) return narrow(inst, target);
  const auto flat = flatten_poly_pm1(inst.side, target);
  const auto index = monomial_vars(flat.poly, inst.n);
  const auto nvars = static_cast<std::uint32_t>(inst.n + index.size());
  const auto g = cyclic_checked(flat.modulus);
  const std::uint64_t m = flat.modulus;

  // sum_S a_S (1 - 2 z_S) = 0 (mod M), z_empty = 0.
  std::map<Monomial, std::uint64_t> weight;
  std::uint64_t total = 0;
  for (const auto& [mono, c] : flat.poly.terms()) {
    const std::uint64_t a = mod_u64(c, m);
    total = (total + a) % m;
    weight[mono] = (m - (2 * a) % m) % m;
  }
  const std::uint64_t rhs = (m - total) % m;

  Lin2Instance out{nvars, inst.equations, weighted_side(g, nvars, weight, index, rhs)};
  for (const auto& [mono, v] : index) {
    Lin2Equation e{std::vector<std::uint32_t>(mono.begin(), mono.end()), false};
    e.vars.push_back(v);
    out.equations.push_back(std::move(e));
  }
  return out;
}

namespace {

void check_rep(const IntPoly& rep, std::size_t m, std::uint32_t modulus, bool pm1) {
  if (rep.nvars() != m)
    throw Error(Errc::invalid_rep, "representation has " + std::to_string(rep.nvars()) + " variables, formula has " +
                                       std::to_string(m) + " clauses");
  if (m > kMaxCubeVars) return;
  const bool ok = pm1 ? is_or_rep_pm1(rep, m, modulus) : is_nand_rep_01(rep, m, modulus);
  if (!ok) throw Error(Errc::invalid_rep, pm1 ? "not an OR rep over {-1,1}" : "not a NAND rep over {0,1}");
}

void check_gadget_size(std::size_t t, std::size_t degree) {
  const double vars = count_low_degree(t, 3 * degree);
  if (vars > static_cast<double>(kMaxGeneratedVars))
    throw Error(Errc::size_limit, "gadget needs about " + std::to_string(static_cast<long long>(vars)) + " variables");
}

// Composes rep with one polynomial per clause.
IntPoly compose(const IntPoly& rep, const std::vector<IntPoly>& clause_polys, std::size_t t, Basis basis,
                std::uint32_t modulus) {
  IntPoly out(t);
  for (const auto& [mono, c] : rep.terms()) {
    IntPoly term = IntPoly::constant(t, 1);
    for (auto k : mono) term = multiply(term, clause_polys[k], basis).reduced_mod(modulus);
    out += term * c;
  }
  return out.reduced_mod(modulus);
}

}  // namespace

HornInstance gadget_3sat_to_horn(const ThreeSatInstance& phi, std::uint32_t modulus, const IntPoly& rep) {
  phi.validate();
  if (modulus < 2) throw Error(Errc::invalid_modulus, "modulus must be >= 2");
  check_rep(rep, phi.clauses.size(), modulus, false);
  check_gadget_size(phi.t, rep.degree());

  // C_k = 1 - prod over literals of (1 - literal), 1 iff the clause holds.
  std::vector<IntPoly> clause_polys;
  for (const auto& clause : phi.clauses) {
    IntPoly none = IntPoly::constant(phi.t, 1);
    for (const auto& l : clause) {
      IntPoly falsity = l.negated ? IntPoly::variable(phi.t, l.var) : one(phi.t) - IntPoly::variable(phi.t, l.var);
      none = multiply(none, falsity, Basis::zero_one);
    }
    clause_polys.push_back(one(phi.t) - none);
  }
  const IntPoly gamma = compose(rep, clause_polys, phi.t, Basis::zero_one, modulus);

  const auto index = monomial_vars(gamma, phi.t);
  const auto nvars = static_cast<std::uint32_t>(phi.t + index.size());
  const auto g = GroupSpec::cyclic(modulus);
  std::map<Monomial, std::uint64_t> weight;
  for (const auto& [m, c] : gamma.terms()) weight[m] = mod_u64(c, modulus);
  const std::uint64_t rhs = (modulus - mod_u64(gamma.coefficient({}), modulus)) % modulus;
  HornInstance out{nvars, {}, {}, weighted_side(g, nvars, weight, index, rhs)};
  tie_products(out.clauses, index);
  return out;
}

Lin2Instance gadget_3sat_to_lin2(const ThreeSatInstance& phi, std::uint32_t modulus, const IntPoly& rep) {
  phi.validate();
  if (modulus % 2 == 0) throw Error(Errc::even_modulus, "LIN-2 gadget needs an odd modulus");
  if (modulus < 3) throw Error(Errc::invalid_modulus, "modulus must be >= 3");
  check_rep(rep, phi.clauses.size(), modulus, true);
  check_gadget_size(phi.t, rep.degree());
  const std::uint64_t inv2 = mod_inverse(2, modulus);

  // Over z = (-1)^x: C_k = 1 - 2 prod over literals of [literal false], +1 iff the clause holds.
  std::vector<IntPoly> clause_polys;
  for (const auto& clause : phi.clauses) {
    IntPoly none = IntPoly::constant(phi.t, 1);
    for (const auto& l : clause) {
      IntPoly falsity = IntPoly::constant(phi.t, inv2);
      falsity.add_term({l.var}, l.negated ? BigInt(modulus - inv2) : BigInt(inv2));
      none = multiply(none, falsity, Basis::plus_minus_one).reduced_mod(modulus);
    }
    clause_polys.push_back((one(phi.t) - none * 2).reduced_mod(modulus));
  }
  const IntPoly psi = compose(rep, clause_polys, phi.t, Basis::plus_minus_one, modulus);

  // One coordinate w_S = <x, 1_S> per monomial: Psi = sum_S a_S (1 - 2 w_S), and
  // w ranges over the column space of U, cut out by U-perp.
  const std::size_t k = psi.sparsity();
  std::vector<BitVector> columns(phi.t, BitVector(k));
  std::vector<WeightPair> weights;
  const auto g = GroupSpec::cyclic(modulus);
  std::uint64_t total = 0;
  std::size_t row = 0;
  for (const auto& [m, c] : psi.terms()) {
    for (auto i : m) columns[i].set(row);
    const std::uint64_t a = mod_u64(c, modulus);
    total = (total + a) % modulus;
    weights.push_back({g.zero(), g.element({static_cast<std::uint32_t>(a)})});
    ++row;
  }
  Lin2Instance out{static_cast<std::uint32_t>(k), {},
                   ModularSideConstraint(g, std::move(weights), {g.element({static_cast<std::uint32_t>(total * inv2 % modulus)})})};
  for (const auto& c : orthogonal_complement(columns, k)) {
    Lin2Equation e;
    for (std::size_t s = 0; s < k; ++s)
      if (c[s]) e.vars.push_back(static_cast<std::uint32_t>(s));
    out.equations.push_back(std::move(e));
  }
  return out;
}

}  // namespace modcsp::reductions
