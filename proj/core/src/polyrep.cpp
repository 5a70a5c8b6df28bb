#include "modcsp/polyrep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "colex.hpp"
#include "modcsp/error.hpp"

namespace modcsp::polyrep {

namespace {

// Constructions re-check themselves exhaustively up to this many variables.
constexpr std::size_t kSelfCheckVars = 20;
// Longest symmetric coefficient vector the product rule will handle.
constexpr std::size_t kMaxSymDegree = 256;

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(Errc::not_prime, std::to_string(p) + " is not prime");
}

double binom_double(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

// Pascal triangle mod p up to row n.
std::vector<std::vector<std::uint64_t>> binom_table(std::size_t n, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    c[i].assign(i + 1, 1);
    for (std::size_t j = 1; j < i; ++j) c[i][j] = (c[i - 1][j - 1] + c[i - 1][j]) % p;
  }
  return c;
}

// Symmetric multilinear polynomial sum_k c[k] s_k with coefficients mod p,
// truncated above degree c.size() - 1 (s_k vanishes for k > #variables).
class SymPoly {
 public:
  SymPoly(std::size_t max_degree, std::uint64_t p) : c_(max_degree + 1, 0), p_(p) {}

  std::uint64_t& operator[](std::size_t k) { return c_[k]; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }

  // s_i s_j = sum_k C(k, i) C(i, i + j - k) s_k.
  SymPoly times(const SymPoly& o, const std::vector<std::vector<std::uint64_t>>& binom) const {
    const std::size_t top = c_.size() - 1;
    SymPoly out(top, p_);
    for (std::size_t i = 0; i <= top; ++i) {
      if (!c_[i]) continue;
      for (std::size_t j = 0; j <= top; ++j) {
        if (!o.c_[j]) continue;
        const std::uint64_t ab = c_[i] * o.c_[j] % p_;
        for (std::size_t k = std::max(i, j); k <= std::min(i + j, top); ++k) {
          const std::uint64_t ways = binom[k][i] * binom[i][i + j - k] % p_;
          out.c_[k] = (out.c_[k] + ab * ways) % p_;
        }
      }
    }
    return out;
  }

  SymPoly power(unsigned e, const std::vector<std::vector<std::uint64_t>>& binom) const {
    SymPoly result(c_.size() - 1, p_), base = *this;
    result.c_[0] = 1;
    while (e) {
      if (e & 1U) result = result.times(base, binom);
      base = base.times(base, binom);
      e >>= 1;
    }
    return result;
  }

 private:
  std::vector<std::uint64_t> c_;
  std::uint64_t p_;
};

// Coefficients of 1 - prod_t (1 - (a_t - s_{p^t})^{p-1}) in the s_k basis,
// where a_t are the base-p digits of a. Degree at most min(p^l - 1, max_degree).
std::vector<std::uint64_t> indicator_sym(std::uint32_t p, unsigned l, std::uint64_t a, std::size_t max_degree) {
  const std::uint64_t pl = ipow(p, l);
  const std::size_t top = static_cast<std::size_t>(std::min<std::uint64_t>(pl - 1, max_degree));
  if (top > kMaxSymDegree) throw Error(Errc::size_limit, "indicator degree above " + std::to_string(kMaxSymDegree));
  const auto binom = binom_table(top, p);
  SymPoly prod(top, p);
  prod[0] = 1;
  std::uint64_t digits = a, pt = 1;
  for (unsigned t = 0; t < l; ++t, pt *= p) {
    SymPoly base(top, p);
    base[0] = digits % p;
    digits /= p;
    if (pt <= top) base[pt] = (base[pt] + p - 1) % p;
    SymPoly factor = base.power(p - 1, binom);
    for (std::size_t k = 0; k <= top; ++k) factor[k] = (p - factor[k]) % p;
    factor[0] = (factor[0] + 1) % p;
    prod = prod.times(factor, binom);
  }
  std::vector<std::uint64_t> out = prod.coeffs();
  for (auto& c : out) c = (p - c) % p;
  out[0] = (out[0] + 1) % p;
  return out;
}

// sum_k c[k] s_k(x_0..x_{n-1}) as an explicit polynomial.
IntPoly expand_symmetric(const std::vector<std::uint64_t>& c, std::size_t n) {
  double count = 0;
  for (std::size_t k = 0; k < c.size() && k <= n; ++k)
    if (c[k]) count += binom_double(n, k);
  if (count > static_cast<double>(kMaxMonomials))
    throw Error(Errc::size_limit, "expansion needs about " + std::to_string(static_cast<long long>(count)) + " monomials");
  IntPoly out(n);
  for (std::size_t k = 0; k < c.size() && k <= n; ++k) {
    if (!c[k]) continue;
    detail::ColexCombination comb(n, k);
    do {
      out.add_term(Monomial(comb.current().begin(), comb.current().end()), BigInt(c[k]));
    } while (comb.next());
  }
  return out;
}

void self_check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string(what) + " failed its own representation check");
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

std::uint64_t lucas_binom(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  require_prime(p);
  std::uint64_t result = 1;
  while (a || b) {
    const std::uint64_t ai = a % p, bi = b % p;
    if (bi > ai) return 0;
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t j = 0; j < bi; ++j) {
      num = num * ((ai - j) % p) % p;
      den = den * ((j + 1) % p) % p;
    }
    result = result * num % p * mod_inverse(den, p) % p;
    a /= p;
    b /= p;
  }
  return result % p;
}

IntPoly residue_indicator_poly(std::uint32_t p, unsigned l, std::uint64_t a, std::size_t n) {
  require_prime(p);
  if (l < 1) throw Error(Errc::invalid_argument, "exponent must be >= 1");
  if (a >= ipow(p, l)) throw Error(Errc::invalid_argument, "target residue out of range");
  return expand_symmetric(indicator_sym(p, l, a, n), n);
}

IntPoly linear_to_prime_poly(const std::vector<std::uint64_t>& weights, std::uint32_t p, unsigned k) {
  require_prime(p);
  if (weights.empty()) throw Error(Errc::invalid_argument, "weights must include the target a_0");
  const std::uint64_t pk = ipow(p, k);
  for (auto w : weights)
    if (w >= pk) throw Error(Errc::invalid_argument, "weight out of range [0, p^k)");
  const std::size_t n = weights.size() - 1;
  std::uint64_t total = 0;
  std::vector<std::uint32_t> active;
  for (std::size_t i = 0; i < n; ++i)
    if (weights[i + 1]) {
      total += weights[i + 1];
      active.push_back(static_cast<std::uint32_t>(i));
    }
  const auto sym = indicator_sym(p, k, weights[0], static_cast<std::size_t>(total));
  const std::size_t top = sym.size() - 1;

  // x-monomial T gets sum_k sym[k] [t^k] prod_{i in T} ((1 + t)^{a_i} - 1).
  std::vector<std::vector<std::uint64_t>> lift(active.size(), std::vector<std::uint64_t>(top + 1, 0));
  for (std::size_t i = 0; i < active.size(); ++i)
    for (std::size_t j = 1; j <= top; ++j) lift[i][j] = lucas_binom(weights[active[i] + 1], j, p);

  IntPoly out(n);
  std::size_t visited = 0;
  Monomial mono;
  std::function<void(std::size_t, const std::vector<std::uint64_t>&)> walk = [&](std::size_t from,
                                                                                const std::vector<std::uint64_t>& series) {
    if (++visited > kMaxMonomials) throw Error(Errc::size_limit, "linear_to_prime_poly exceeds the monomial cap");
    std::uint64_t coeff = 0;
    for (std::size_t j = 0; j <= top; ++j) coeff = (coeff + sym[j] * series[j]) % p;
    out.add_term(mono, BigInt(coeff));
    if (mono.size() >= top) return;
    for (std::size_t i = from; i < active.size(); ++i) {
      std::vector<std::uint64_t> next(top + 1, 0);
      for (std::size_t a = 0; a <= top; ++a) {
        if (!series[a]) continue;
        for (std::size_t b = 1; a + b <= top; ++b) next[a + b] = (next[a + b] + series[a] * lift[i][b]) % p;
      }
      mono.push_back(active[i]);
      walk(i + 1, next);
      mono.pop_back();
    }
  };
  std::vector<std::uint64_t> unit(top + 1, 0);
  unit[0] = 1;
  walk(0, unit);
  return out;
}

IntPoly nand_trivial(std::size_t d, std::uint32_t modulus) {
  if (modulus < 2) throw Error(Errc::invalid_modulus, "modulus must be >= 2");
  if (d < 1) throw Error(Errc::invalid_argument, "d must be >= 1");
  const std::size_t block = ceil_div(d, modulus - 1);
  IntPoly p(d);
  for (std::size_t start = 0; start < d; start += block) {
    Monomial m;
    for (std::size_t i = start; i < std::min(d, start + block); ++i) m.push_back(static_cast<std::uint32_t>(i));
    p.add_term({}, 1);
    p.add_term(m, -1);
  }
  if (d <= kSelfCheckVars) self_check(is_nand_rep_01(p, d, modulus), "nand_trivial");
  return p;
}

IntPoly or_trivial_pm1(std::size_t d, std::uint32_t modulus) {
  if (modulus % 2 == 0) throw Error(Errc::even_modulus, "OR over {-1,1} needs an odd modulus");
  if (modulus < 3) throw Error(Errc::invalid_modulus, "modulus must be >= 3");
  if (d < 1) throw Error(Errc::invalid_argument, "d must be >= 1");
  const std::size_t block = ceil_div(d, modulus - 1);
  if (block >= 40 || ceil_div(d, block) * (std::size_t{1} << block) > kMaxMonomials)
    throw Error(Errc::size_limit, "or_trivial_pm1 exceeds the monomial cap");
  const std::uint64_t inv2 = mod_inverse(2, modulus);
  IntPoly p(d);
  for (std::size_t start = 0; start < d; start += block) {
    const std::size_t len = std::min(d, start + block) - start;
    std::uint64_t scale = 1;
    for (std::size_t i = 0; i < len; ++i) scale = scale * inv2 % modulus;
    p.add_term({}, 1);
    for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
      Monomial m;
      for (std::size_t i = 0; i < len; ++i)
        if ((mask >> i) & 1U) m.push_back(static_cast<std::uint32_t>(start + i));
      p.add_term(m, -BigInt(scale));
    }
  }
  p = p.reduced_mod(modulus);
  if (d <= kSelfCheckVars) self_check(is_or_rep_pm1(p, d, modulus), "or_trivial_pm1");
  return p;
}

BbrPlan bbr_plan(std::size_t d, std::uint32_t modulus) {
  if (modulus < 2) throw Error(Errc::invalid_modulus, "modulus must be >= 2");
  if (d < 1) throw Error(Errc::invalid_argument, "d must be >= 1");
  const auto primes = factorize(modulus);
  if (primes.size() < 2)
    throw Error(Errc::prime_power_modulus, std::to_string(modulus) + " is a prime power; use nand_trivial");
  std::uint64_t max_p = 0;
  for (const auto& pp : primes) max_p = std::max<std::uint64_t>(max_p, pp.prime);
  const long double limit = 2.0L * static_cast<long double>(d) * static_cast<long double>(max_p);

  BbrPlan best;
  std::uint64_t best_product = std::numeric_limits<std::uint64_t>::max();
  bool found = false;
  std::vector<PrimePower> cur;
  std::function<void(std::size_t, long double, std::uint64_t)> search = [&](std::size_t i, long double product,
                                                                            std::uint64_t degree) {
    if (i == primes.size()) {
      if (product <= static_cast<long double>(d)) return;
      const auto prod = static_cast<std::uint64_t>(product);
      if (!found || degree < best.degree || (degree == best.degree && prod < best_product)) {
        found = true;
        best.prime_powers = cur;
        best.degree = degree;
        best_product = prod;
      }
      return;
    }
    long double pw = 1;
    for (unsigned l = 0; product * pw <= limit; ++l, pw *= primes[i].prime) {
      cur.push_back({primes[i].prime, l});
      search(i + 1, product * pw, std::max<std::uint64_t>(degree, static_cast<std::uint64_t>(pw) - 1));
      cur.pop_back();
    }
  };
  search(0, 1, 0);
  if (!found) throw std::logic_error("bbr_plan found no exponent tuple");
  return best;
}

IntPoly nand_bbr(std::size_t d, std::uint32_t modulus) {
  const auto plan = bbr_plan(d, modulus);
  const auto primes = factorize(modulus);
  std::vector<std::uint64_t> combined(plan.degree + 1, 0);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto l = plan.prime_powers[i].exponent;
    if (l == 0) continue;
    const std::uint32_t p = primes[i].prime;
    const std::uint64_t q = primes[i].value();
    const std::uint64_t rest = modulus / q;
    // mult = 0 mod every other prime power, p^{e-1} mod q.
    const std::uint64_t mult = rest * mod_inverse(rest % q, q) % modulus * (q / p) % modulus;
    const auto sym = indicator_sym(p, l, d % ipow(p, l), d);
    for (std::size_t k = 0; k < sym.size(); ++k) combined[k] = (combined[k] + mult * sym[k]) % modulus;
  }
  IntPoly out = expand_symmetric(combined, d);
  if (d <= kSelfCheckVars) self_check(is_nand_rep_01(out, d, modulus), "nand_bbr");
  return out;
}

std::size_t nand_best_degree(std::size_t d, std::uint32_t modulus) {
  const std::size_t trivial = ceil_div(d, modulus - 1);
  if (factorize(modulus).size() < 2) return trivial;
  return std::min(trivial, bbr_plan(d, modulus).degree);
}

IntPoly nand_best(std::size_t d, std::uint32_t modulus) {
  if (factorize(modulus).size() < 2) return nand_trivial(d, modulus);
  if (bbr_plan(d, modulus).degree < ceil_div(d, modulus - 1)) return nand_bbr(d, modulus);
  return nand_trivial(d, modulus);
}

std::size_t covering_number(const IntPoly& p, CoverMode mode) {
  std::vector<std::uint32_t> vars;
  for (const auto& [m, c] : p.terms()) vars.insert(vars.end(), m.begin(), m.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.empty()) return 0;

  if (mode == CoverMode::greedy) {
    std::vector<std::uint8_t> covered(p.nvars(), 0);
    std::size_t left = vars.size(), picks = 0;
    while (left > 0) {
      const Monomial* best = nullptr;
      std::size_t gain = 0;
      for (const auto& [m, c] : p.terms()) {
        std::size_t g = 0;
        for (auto v : m) g += !covered[v];
        if (g > gain) {
          gain = g;
          best = &m;
        }
      }
      for (auto v : *best)
        if (!covered[v]) {
          covered[v] = 1;
          --left;
        }
      ++picks;
    }
    return picks;
  }

  if (vars.size() > 64) throw Error(Errc::size_limit, "exact covering number supports at most 64 variables");
  std::vector<std::uint64_t> sets;
  for (const auto& [m, c] : p.terms()) {
    std::uint64_t mask = 0;
    for (auto v : m) mask |= std::uint64_t{1} << (std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
    if (mask) sets.push_back(mask);
  }
  // Drop duplicates and monomials contained in another one.
  std::sort(sets.begin(), sets.end(), [](auto a, auto b) { return std::popcount(a) > std::popcount(b); });
  std::vector<std::uint64_t> kept;
  for (auto s : sets)
    if (std::none_of(kept.begin(), kept.end(), [&](auto k) { return (s & ~k) == 0; })) kept.push_back(s);
  const std::uint64_t all = vars.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << vars.size()) - 1;
  const int widest = std::popcount(kept.front());

  std::size_t best = covering_number(p, CoverMode::greedy);
  std::uint64_t nodes = 0;
  constexpr std::uint64_t kMaxNodes = 50'000'000;
  std::function<void(std::uint64_t, std::size_t)> branch = [&](std::uint64_t covered, std::size_t used) {
    if (covered == all) {
      best = std::min(best, used);
      return;
    }
    if (++nodes > kMaxNodes) throw Error(Errc::size_limit, "exact covering search exceeded its node budget");
    const auto missing = static_cast<std::size_t>(std::popcount(all & ~covered));
    if (used + ceil_div(missing, static_cast<std::size_t>(widest)) >= best) return;
    // Branch on the uncovered variable with the fewest candidate monomials.
    int pick = -1;
    std::size_t fewest = SIZE_MAX;
    for (int v = 0; v < static_cast<int>(vars.size()); ++v) {
      if ((covered >> v) & 1U) continue;
      std::size_t cnt = 0;
      for (auto s : kept) cnt += (s >> v) & 1U;
      if (cnt < fewest) {
        fewest = cnt;
        pick = v;
      }
    }
    for (auto s : kept)
      if ((s >> pick) & 1U) branch(covered | s, used + 1);
  };
  branch(0, 0);
  return best;
}

MrdCheck check_mrd(const MrdSystem& sys) {
  MrdCheck out;
  std::vector<BitVector> family = sys.sets;
  for (const auto& s : family)
    if (s.size() != sys.d) throw Error(Errc::length_mismatch, "set length differs from the universe size");
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());

  out.intersection_closed = true;
  for (std::size_t i = 0; i < family.size() && out.intersection_closed; ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (!std::binary_search(family.begin(), family.end(), family[i] & family[j])) {
        out.intersection_closed = false;
        break;
      }

  out.sizes_avoid_d = std::none_of(family.begin(), family.end(),
                                   [&](const auto& s) { return s.popcount() % sys.modulus == sys.d % sys.modulus; });

  // Every r-subset (or the whole universe if r >= d) inside some member.
  const std::size_t k = std::min(sys.r, sys.d);
  if (binom_double(sys.d, k) > 1e7) throw Error(Errc::size_limit, "too many small subsets to check");
  out.covers_small_subsets = true;
  detail::ColexCombination comb(sys.d, k);
  do {
    BitVector sub(sys.d);
    for (auto i : comb.current()) sub.set(i);
    if (std::none_of(family.begin(), family.end(), [&](const auto& s) { return sub.subset_of(s); })) {
      out.covers_small_subsets = false;
      break;
    }
  } while (comb.next());
  return out;
}

IntPoly mrd_to_poly(const MrdSystem& sys) {
  if (!check_mrd(sys).ok()) throw Error(Errc::invalid_system, "not a valid (M, r, d)-system");
  std::vector<BitVector> maximal;
  for (const auto& s : sys.sets) {
    bool dominated = std::any_of(sys.sets.begin(), sys.sets.end(), [&](const auto& o) { return !(o == s) && s.subset_of(o); });
    if (!dominated && std::find(maximal.begin(), maximal.end(), s) == maximal.end()) maximal.push_back(s);
  }
  IntPoly p(maximal.size());
  for (std::size_t a = 0; a < sys.d; ++a) {
    Monomial m;
    for (std::size_t i = 0; i < maximal.size(); ++i)
      if (!maximal[i][a]) m.push_back(static_cast<std::uint32_t>(i));
    p.add_term(m, 1);
  }
  p.add_term({}, -BigInt(sys.d % sys.modulus));
  if (maximal.size() <= kMaxCubeVars) self_check(is_nand_rep_01(p, maximal.size(), sys.modulus), "mrd_to_poly");
  return p;
}

MrdSystem poly_to_mrd(const IntPoly& p, std::uint32_t modulus, std::size_t r) {
  if (p.has_negative_coefficients()) throw Error(Errc::negative_coefficients, "converse needs nonnegative coefficients");
  const std::size_t n = p.nvars();
  if (!is_nand_rep_01(p, n, modulus)) throw Error(Errc::invalid_rep, "polynomial is not a NAND rep mod " + std::to_string(modulus));
  const BigInt norm = p.coeff_norm();
  if (norm > 1'000'000) throw Error(Errc::size_limit, "coefficient norm too large for an explicit set system");
  const auto d = norm.convert_to<std::size_t>();

  std::vector<const Monomial*> element;
  for (const auto& [m, c] : p.terms())
    for (BigInt k = 0; k < c; ++k) element.push_back(&m);

  MrdSystem sys{d, {}, modulus, r};
  const std::size_t points = std::size_t{1} << n;
  for (std::size_t x = 0; x + 1 < points; ++x) {
    BitVector s(d);
    for (std::size_t a = 0; a < d; ++a)
      s.set(a, std::all_of(element[a]->begin(), element[a]->end(), [&](auto v) { return (x >> v) & 1U; }));
    sys.sets.push_back(std::move(s));
  }
  std::sort(sys.sets.begin(), sys.sets.end());
  sys.sets.erase(std::unique(sys.sets.begin(), sys.sets.end()), sys.sets.end());
  if (!check_mrd(sys).ok())
    throw Error(Errc::invalid_system, "derived family is not an (M, r, d)-system; r must stay below cov(p)");
  return sys;
}

IntPoly subspace_to_poly(const BitVector& offset, const std::vector<BitVector>& vectors) {
  const std::size_t n = offset.size();
  for (const auto& u : vectors)
    if (u.size() != n) throw Error(Errc::length_mismatch, "vector length differs from offset");
  IntPoly p(vectors.size());
  for (std::size_t t = 0; t < n; ++t) {
    Monomial m;
    for (std::size_t i = 0; i < vectors.size(); ++i)
      if (vectors[i][t]) m.push_back(static_cast<std::uint32_t>(i));
    p.add_term(m, offset[t] ? -1 : 1);
  }
  return p;
}

SubspaceData poly_to_subspace(const IntPoly& p) {
  const BigInt norm = p.coeff_norm();
  if (norm > (1 << 24)) throw Error(Errc::size_limit, "coefficient norm too large for an explicit subspace");
  const auto n = norm.convert_to<std::size_t>();
  SubspaceData out{BitVector(n), std::vector<BitVector>(p.nvars(), BitVector(n))};
  std::size_t t = 0;
  for (const auto& [m, c] : p.terms()) {
    const auto copies = abs(c).convert_to<std::size_t>();
    for (std::size_t k = 0; k < copies; ++k, ++t) {
      if (c < 0) out.offset.set(t);
      for (auto i : m) out.vectors[i].set(t);
    }
  }
  return out;
}

IntPoly unique_point_subspace_to_or_poly(const AffineSubspace& space, std::uint32_t target, std::uint32_t modulus) {
  if (modulus % 2 == 0) throw Error(Errc::even_modulus, "needs an odd modulus");
  const std::size_t d = space.dim();
  if (d > kMaxCubeVars) throw Error(Errc::size_limit, "subspace dimension above 24");
  std::size_t hits = 0, witness = 0;
  BitVector coeffs(d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    for (std::size_t i = 0; i < d; ++i) coeffs.set(i, (mask >> i) & 1U);
    if (space.point(coeffs).popcount() % modulus == target % modulus) {
      ++hits;
      witness = mask;
    }
  }
  if (hits != 1)
    throw Error(Errc::not_unique_point, std::to_string(hits) + " points have the target weight residue, expected 1");
  const IntPoly p = subspace_to_poly(space.offset(), space.basis());
  IntPoly f(d);
  for (const auto& [m, c] : p.terms()) {
    bool flip = false;
    for (auto i : m) flip ^= static_cast<bool>((witness >> i) & 1U);
    f.add_term(m, flip ? BigInt(-c) : c);
  }
  f.add_term({}, -(BigInt(space.ambient()) - 2 * BigInt(target)));
  if (d <= kSelfCheckVars) self_check(is_or_rep_pm1(f, d, modulus), "unique_point_subspace_to_or_poly");
  return f;
}

UniquePointSpace or_poly_to_subspace(const IntPoly& p, std::uint32_t modulus) {
  if (modulus % 2 == 0) throw Error(Errc::even_modulus, "needs an odd modulus");
  if (!is_or_rep_pm1(p, p.nvars(), modulus)) throw Error(Errc::invalid_rep, "polynomial is not an OR rep mod " + std::to_string(modulus));
  const IntPoly f = p.reduced_mod(modulus);
  auto data = poly_to_subspace(f);
  const auto n = data.offset.size();
  const auto target = static_cast<std::uint32_t>(n % modulus * mod_inverse(2, modulus) % modulus);
  return {AffineSubspace(std::move(data.offset), std::move(data.vectors)), target};
}

MatchingVectorFamily::MatchingVectorFamily(std::uint32_t modulus, std::size_t rank, std::vector<std::uint32_t> u,
                                           std::vector<std::uint32_t> v)
    : modulus_(modulus), rank_(rank), u_(std::move(u)), v_(std::move(v)) {
  if (u_.size() != v_.size() || (rank_ && u_.size() % rank_))
    throw Error(Errc::length_mismatch, "u and v families must have matching shapes");
}

std::uint32_t MatchingVectorFamily::inner(std::size_t i, std::size_t j) const {
  std::uint64_t acc = 0;
  const auto* a = u(i);
  const auto* b = v(j);
  for (std::size_t t = 0; t < rank_; ++t) acc += std::uint64_t{a[t]} * b[t];
  return static_cast<std::uint32_t>(acc % modulus_);
}

bool MatchingVectorFamily::verify() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((inner(i, j) == 0) != (i == j)) return false;
  return true;
}

MatchingVectorFamily mvf_from_or_poly(const IntPoly& p, std::uint32_t modulus) {
  const std::size_t d = p.nvars();
  if (d > kMaxMvfVars) throw Error(Errc::size_limit, "MVF construction capped at 12 variables");
  if (!is_or_rep_pm1(p, d, modulus)) throw Error(Errc::invalid_rep, "polynomial is not an OR rep mod " + std::to_string(modulus));
  const std::size_t n = std::size_t{1} << d;
  const std::size_t rank = p.sparsity();
  std::vector<std::uint32_t> u(n * rank), v(n * rank);
  std::size_t t = 0;
  for (const auto& [m, c] : p.terms()) {
    std::size_t set = 0;
    for (auto i : m) set |= std::size_t{1} << i;
    const auto a = static_cast<std::uint32_t>(mod_u64(c, modulus));
    for (std::size_t z = 0; z < n; ++z) {
      const bool negative = std::popcount(z & set) & 1;
      v[z * rank + t] = negative ? modulus - 1 : 1;
      u[z * rank + t] = negative ? (modulus - a) % modulus : a;
    }
    ++t;
  }
  MatchingVectorFamily family(modulus, rank, std::move(u), std::move(v));
  self_check(family.verify(), "mvf_from_or_poly");
  return family;
}

namespace {

// Multilinear coefficients of f: {0,1}^d -> Z (Moebius inversion).
IntPoly poly_from_values_01(std::vector<std::int64_t> f, std::size_t d) {
  const std::size_t size = std::size_t{1} << d;
  for (std::size_t bit = 1; bit < size; bit <<= 1)
    for (std::size_t mask = 0; mask < size; ++mask)
      if (mask & bit) f[mask] -= f[mask ^ bit];
  IntPoly p(d);
  for (std::size_t mask = 0; mask < size; ++mask) {
    Monomial m;
    for (std::size_t i = 0; i < d; ++i)
      if ((mask >> i) & 1U) m.push_back(static_cast<std::uint32_t>(i));
    p.add_term(m, f[mask]);
  }
  return p;
}

// Multilinear coefficients mod odd M of f: {-1,1}^d -> Z/M.
IntPoly poly_from_values_pm1(std::vector<std::uint64_t> f, std::size_t d, std::uint32_t modulus) {
  const std::size_t size = std::size_t{1} << d;
  for (std::size_t bit = 1; bit < size; bit <<= 1)
    for (std::size_t mask = 0; mask < size; ++mask) {
      if (mask & bit) continue;
      const auto lo = f[mask], hi = f[mask | bit];
      f[mask] = (lo + hi) % modulus;
      f[mask | bit] = (lo + modulus - hi) % modulus;
    }
  std::uint64_t scale = 1;
  const std::uint64_t inv2 = mod_inverse(2, modulus);
  for (std::size_t i = 0; i < d; ++i) scale = scale * inv2 % modulus;
  IntPoly p(d);
  for (std::size_t mask = 0; mask < size; ++mask) {
    Monomial m;
    for (std::size_t i = 0; i < d; ++i)
      if ((mask >> i) & 1U) m.push_back(static_cast<std::uint32_t>(i));
    p.add_term(m, BigInt(f[mask] * scale % modulus));
  }
  return p;
}

// A handful of random monomials plus the constant that zeroes the base point.
IntPoly sparse_candidate(std::size_t d, std::uint32_t modulus, std::mt19937_64& rng, Basis basis) {
  std::uniform_int_distribution<std::size_t> count(1, std::min<std::size_t>(6, std::size_t{1} << d));
  std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t{1} << d) - 1);
  std::uniform_int_distribution<std::uint32_t> coeff(1, modulus - 1);
  IntPoly p(d);
  BigInt total = 0;
  const std::size_t k = count(rng);
  for (std::size_t j = 0; j < k; ++j) {
    const auto bits = mask(rng);
    Monomial m;
    for (std::size_t i = 0; i < d; ++i)
      if ((bits >> i) & 1U) m.push_back(static_cast<std::uint32_t>(i));
    const BigInt c = coeff(rng);
    p.add_term(m, c);
    total += c;
  }
  (void)basis;
  p.add_term({}, -total);
  return p;
}

// Blocks of a random partition, each weighted by a random coefficient.
IntPoly block_candidate(std::size_t d, std::uint32_t modulus, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> blocks(1, std::min<std::size_t>(d, modulus - 1));
  std::uniform_int_distribution<std::uint32_t> coeff(1, modulus - 1);
  const std::size_t k = blocks(rng);
  std::vector<std::uint32_t> order(d);
  std::iota(order.begin(), order.end(), 0U);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Monomial> parts(k);
  for (std::size_t i = 0; i < d; ++i) parts[i < k ? i : std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)].push_back(order[i]);
  IntPoly p(d);
  for (auto& part : parts) {
    std::sort(part.begin(), part.end());
    const BigInt c = coeff(rng);
    p.add_term({}, c);
    p.add_term(part, -c);
  }
  return p;
}

}  // namespace

IntPoly random_nand_rep_01(std::size_t d, std::uint32_t modulus, std::mt19937_64& rng) {
  if (d < 1 || d > 16) throw Error(Errc::invalid_argument, "random search supports 1 <= d <= 16");
  std::uniform_int_distribution<int> strategy(0, 2);
  for (int attempt = 0; attempt < 64; ++attempt) {
    IntPoly p;
    switch (strategy(rng)) {
      case 0: p = sparse_candidate(d, modulus, rng, Basis::zero_one); break;
      case 1: p = block_candidate(d, modulus, rng); break;
      default: {
        std::uniform_int_distribution<std::int64_t> value(1, modulus - 1);
        std::vector<std::int64_t> f(std::size_t{1} << d);
        for (auto& x : f) x = value(rng);
        f.back() = 0;
        p = poly_from_values_01(std::move(f), d).reduced_mod(modulus);
      }
    }
    if (is_nand_rep_01(p, d, modulus)) return p;
  }
  std::uniform_int_distribution<std::int64_t> value(1, modulus - 1);
  std::vector<std::int64_t> f(std::size_t{1} << d);
  for (auto& x : f) x = value(rng);
  f.back() = 0;
  return poly_from_values_01(std::move(f), d).reduced_mod(modulus);
}

IntPoly random_or_rep_pm1(std::size_t d, std::uint32_t modulus, std::mt19937_64& rng) {
  if (modulus % 2 == 0) throw Error(Errc::even_modulus, "OR over {-1,1} needs an odd modulus");
  if (d < 1 || d > 16) throw Error(Errc::invalid_argument, "random search supports 1 <= d <= 16");
  std::uniform_int_distribution<std::uint64_t> value(1, modulus - 1);
  auto from_table = [&] {
    std::vector<std::uint64_t> f(std::size_t{1} << d);
    for (auto& x : f) x = value(rng);
    f[0] = 0;
    return poly_from_values_pm1(std::move(f), d, modulus);
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    IntPoly p = attempt % 2 ? from_table() : sparse_candidate(d, modulus, rng, Basis::plus_minus_one).reduced_mod(modulus);
    if (is_or_rep_pm1(p, d, modulus)) return p;
  }
  return from_table();
}

}  // namespace modcsp::polyrep
