#include "modcsp/lin2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "colex.hpp"
#include "modcsp/error.hpp"
#include "modcsp/normalize.hpp"
#include "modcsp/number.hpp"
#include "modcsp/reductions.hpp"
#include "modcsp/rng.hpp"

namespace modcsp {

namespace {

// Brings rows to reduced row echelon form on columns [0, ncols). Pivot rows
// end up first; returns their pivot columns.
std::vector<std::size_t> rref(std::vector<BitVector>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p][col]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i][col]) rows[i] ^= rows[r];
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

// Basis of the solution space of the homogeneous part given an RREF.
std::vector<BitVector> kernel_from_rref(const std::vector<BitVector>& rows, const std::vector<std::size_t>& pivots,
                                        std::size_t n) {
  std::vector<std::uint8_t> is_pivot(n, 0);
  for (auto p : pivots) is_pivot[p] = 1;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(n);
    v.set(f);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (rows[r][f]) v.set(pivots[r]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

AffineSubspace::AffineSubspace(BitVector offset, std::vector<BitVector> basis)
    : offset_(std::move(offset)), basis_(std::move(basis)), echelon_(basis_) {
  for (const auto& v : basis_)
    if (v.size() != offset_.size()) throw Error(Errc::length_mismatch, "basis vector length differs from offset");
  pivots_ = rref(echelon_, offset_.size());
  if (pivots_.size() != basis_.size()) throw Error(Errc::invalid_argument, "basis vectors are linearly dependent");
}

AffineSubspace AffineSubspace::full(std::size_t n) {
  std::vector<BitVector> basis;
  for (std::size_t i = 0; i < n; ++i) {
    BitVector e(n);
    e.set(i);
    basis.push_back(std::move(e));
  }
  return AffineSubspace(BitVector(n), std::move(basis));
}

BitVector AffineSubspace::point(const BitVector& coeffs) const {
  BitVector x = offset_;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (coeffs[i]) x ^= basis_[i];
  return x;
}

bool AffineSubspace::contains(const BitVector& x) const {
  if (x.size() != ambient()) return false;
  BitVector y = x ^ offset_;
  for (std::size_t r = 0; r < pivots_.size(); ++r)
    if (y[pivots_[r]]) y ^= echelon_[r];
  return !y.any();
}

std::size_t gf2_rank(std::vector<BitVector> rows) {
  if (rows.empty()) return 0;
  return rref(rows, rows.front().size()).size();
}

std::vector<BitVector> orthogonal_complement(const std::vector<BitVector>& vectors, std::size_t n) {
  std::vector<BitVector> rows = vectors;
  auto pivots = rref(rows, n);
  return kernel_from_rref(rows, pivots, n);
}

}  // namespace modcsp

namespace modcsp::lin2 {

std::optional<AffineSubspace> gaussian_basis(const Lin2Instance& inst) {
  inst.validate();
  const std::size_t n = inst.n;
  std::vector<BitVector> rows;
  rows.reserve(inst.equations.size());
  for (const auto& e : inst.equations) {
    BitVector r(n + 1);
    for (auto v : e.vars) r.flip(v);
    r.set(n, e.rhs);
    rows.push_back(std::move(r));
  }
  auto pivots = rref(rows, n);
  for (std::size_t r = pivots.size(); r < rows.size(); ++r)
    if (rows[r][n]) return std::nullopt;
  BitVector offset(n);
  for (std::size_t r = 0; r < pivots.size(); ++r) offset.set(pivots[r], rows[r][n]);
  return AffineSubspace(std::move(offset), kernel_from_rref(rows, pivots, n));
}

const char* to_string(BoundCase c) {
  switch (c) {
    case BoundCase::power_of_two: return "power-of-two";
    case BoundCase::odd_prime_power: return "odd-prime-power";
    case BoundCase::twice_odd_prime_power: return "twice-odd-prime-power";
    case BoundCase::power_of_two_times_odd_prime_power: return "power-of-two-times-odd-prime-power";
    case BoundCase::trivial: return "trivial";
  }
  return "unknown";
}

namespace {

// floor((m - 1) * log2(n + 1))
std::size_t log_bound(std::size_t n, std::uint32_t m) {
  long double v = static_cast<long double>(m - 1) * std::log2(static_cast<long double>(n + 1));
  return static_cast<std::size_t>(std::floor(v + 1e-12L));
}

}  // namespace

DimensionBound dimension_bound(std::size_t n, std::uint32_t modulus, unsigned factor) {
  if (modulus < 2) throw Error(Errc::invalid_modulus, "modulus must be >= 2");
  if (n < 1) throw Error(Errc::invalid_argument, "dimension bound needs n >= 1");
  unsigned twos = 0;
  std::uint32_t odd = modulus;
  while (odd % 2 == 0) {
    odd /= 2;
    ++twos;
  }
  DimensionBound out{modulus, n, n, BoundCase::trivial};
  if (odd == 1) {
    out.bound_case = BoundCase::power_of_two;
    out.bound = modulus - 1;
  } else if (is_prime_power(odd)) {
    if (twos == 0) {
      out.bound_case = BoundCase::odd_prime_power;
      out.bound = log_bound(n, odd);
    } else if (twos == 1) {
      out.bound_case = BoundCase::twice_odd_prime_power;
      out.bound = 1 + log_bound(n, odd);
    } else {
      out.bound_case = BoundCase::power_of_two_times_odd_prime_power;
      const long double base = static_cast<long double>(std::min(log_bound(n, odd), n));
      const long double exponent = static_cast<long double>((1U << (twos - 1)) - 1);
      const long double b = static_cast<long double>(factor) * twos * std::pow(base, exponent);
      out.bound = b >= static_cast<long double>(n) ? n : static_cast<std::size_t>(b);
    }
  }
  out.bound = std::min(out.bound, n);
  return out;
}

namespace {

struct WeightedTarget {
  std::uint32_t modulus;
  BitVector weighted;
  std::vector<int> rank;

  int rank_of(const BitVector& x) const { return rank[x.popcount_masked(weighted) % modulus]; }
};

WeightedTarget prepare(const AffineSubspace& space, const ModularSideConstraint& side) {
  if (side.num_vars() != space.ambient())
    throw Error(Errc::length_mismatch, "side constraint and subspace disagree on the variable count");
  if (!side.has_unit_weights()) throw Error(Errc::invalid_argument, "side constraint needs unit weights; normalize first");
  WeightedTarget t{side.group().modulus(0), BitVector(space.ambient()), {}};
  for (std::size_t j = 0; j < space.ambient(); ++j)
    if (side.weight(j).at_one[0] == 1) t.weighted.set(j);
  std::vector<std::uint32_t> targets;
  for (const auto& s : side.allowed()) targets.push_back(s[0]);
  t.rank = detail::target_ranks(t.modulus, targets);
  return t;
}

std::size_t weighted_bound(const WeightedTarget& t, unsigned factor) {
  return dimension_bound(std::max<std::size_t>(1, t.weighted.popcount()), t.modulus, factor).bound;
}

}  // namespace

std::optional<BitVector> solve_deterministic(const AffineSubspace& space, const ModularSideConstraint& side,
                                             Rounds rounds, unsigned factor) {
  const auto t = prepare(space, side);
  const std::size_t d = space.dim();
  std::size_t r = 0;
  if (rounds.is_auto()) {
    r = std::min(weighted_bound(t, factor), d);
  } else {
    if (rounds.value() < 0 || static_cast<std::size_t>(rounds.value()) > d)
      throw Error(Errc::invalid_rounds, "rounds must lie in [0, " + std::to_string(d) + "]");
    r = static_cast<std::size_t>(rounds.value());
  }

  const auto& basis = space.basis();
  int best_rank = INT32_MAX;
  std::optional<BitVector> best;
  for (std::size_t k = 0; k <= r; ++k) {
    detail::ColexCombination comb(d, k);
    BitVector x = space.offset();
    for (auto i : comb.current()) x ^= basis[i];
    do {
      int rk = t.rank_of(x);
      if (rk >= 0 && rk < best_rank) {
        best_rank = rk;
        best = x;
        if (rk == 0) return best;
      }
    } while (comb.next([&](std::uint32_t i) { x ^= basis[i]; }));
  }
  return best;
}

std::optional<BitVector> solve_randomized(const AffineSubspace& space, const ModularSideConstraint& side, Trials trials,
                                          std::uint64_t seed, unsigned factor) {
  const auto t = prepare(space, side);
  const std::size_t d = space.dim();
  std::uint64_t count = 0;
  bool exhaustive = false;
  if (trials.is_auto()) {
    const std::size_t bound = weighted_bound(t, factor);
    if (bound + 2 >= d) {
      exhaustive = true;
    } else {
      if (bound > 40) throw Error(Errc::size_limit, "automatic trial count 4*2^" + std::to_string(bound) + " is too large");
      count = std::uint64_t{4} << bound;
    }
  } else {
    if (trials.value() < 1) throw Error(Errc::invalid_trials, "trials must be >= 1");
    count = static_cast<std::uint64_t>(trials.value());
    exhaustive = d < 63 && count >= (std::uint64_t{1} << d);
  }
  if (exhaustive) return solve_deterministic(space, side, Rounds::fixed(static_cast<std::int64_t>(d)), factor);

  const std::size_t words = (d + 63) / 64;
  BitVector coeffs(d);
  for (std::uint64_t trial = 0; trial < count; ++trial) {
    for (std::size_t w = 0; w < words; ++w) coeffs.words()[w] = splitmix64(seed, trial * words + w);
    if (d % 64) coeffs.words().back() &= (std::uint64_t{1} << (d % 64)) - 1;
    BitVector x = space.point(coeffs);
    if (t.rank_of(x) >= 0) return x;
  }
  return std::nullopt;
}

AffineSubspace hadamard_direct_sum(std::size_t d, std::size_t copies) {
  if (d < 1 || copies < 1) throw Error(Errc::invalid_argument, "hadamard_direct_sum needs d >= 1 and copies >= 1");
  if (d > 24 || copies > (std::size_t{1} << 24) >> d)
    throw Error(Errc::size_limit, "copies * 2^d exceeds 2^24 coordinates");
  const std::size_t block = std::size_t{1} << d;
  const std::size_t n = copies * block;
  std::vector<BitVector> basis;
  for (std::size_t c = 0; c < copies; ++c) {
    for (std::size_t i = 0; i < d; ++i) {
      BitVector v(n);
      for (std::size_t j = 0; j < block; ++j)
        if ((j >> i) & 1U) v.set(c * block + j);
      basis.push_back(std::move(v));
    }
  }
  return AffineSubspace(BitVector(n), std::move(basis));
}

namespace {

std::optional<Assignment> solve_single_modulus(const Lin2Instance& inst, const SolveConfig& cfg) {
  auto norm = normalize_unit_weights(inst);
  if (norm.n > cfg.max_vars_after_normalize)
    throw Error(Errc::size_limit, "normalized instance has " + std::to_string(norm.n) + " variables");
  auto space = gaussian_basis(norm);
  if (!space) return std::nullopt;
  std::optional<BitVector> y;
  if (cfg.randomized) {
    y = solve_randomized(*space, norm.side, cfg.trials, cfg.seed, cfg.bound_factor);
  } else {
    Rounds r = cfg.rounds;
    if (!r.is_auto()) r = Rounds::fixed(std::min<std::int64_t>(r.value(), static_cast<std::int64_t>(space->dim())));
    y = solve_deterministic(*space, norm.side, r, cfg.bound_factor);
  }
  if (!y) return std::nullopt;
  return restrict_to(*y, inst.n);
}

}  // namespace

std::optional<Assignment> solve(const Lin2Instance& inst, const SolveConfig& cfg) {
  inst.validate();
  if (!cfg.randomized && !cfg.rounds.is_auto() && cfg.rounds.value() < 0)
    throw Error(Errc::invalid_rounds, "rounds must be >= 0");
  if (cfg.randomized && !cfg.trials.is_auto() && cfg.trials.value() < 1)
    throw Error(Errc::invalid_trials, "trials must be >= 1");
  std::optional<Assignment> x;
  if (inst.side.group().rank() == 1) {
    x = solve_single_modulus(inst, cfg);
  } else {
    for (const auto& target : inst.side.allowed()) {
      x = solve_single_modulus(reductions::flatten_lin2(inst, target), cfg);
      if (x) {
        x = restrict_to(*x, inst.n);
        break;
      }
    }
  }
  if (x && !inst.satisfies(*x)) throw std::logic_error("lin2 solver produced an assignment that fails verification");
  return x;
}

}  // namespace modcsp::lin2
