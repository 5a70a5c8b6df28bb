#include "modcsp/oracle.hpp"

#include <algorithm>
#include <bit>

#include "colex.hpp"
#include "modcsp/error.hpp"

namespace modcsp::oracle {

namespace {

void check_size(std::size_t n) {
  if (n > kMaxVars) throw Error(Errc::size_limit, "oracle enumerates at most 2^24 assignments, n = " + std::to_string(n));
}

// Walks assignments in lexicographic order (x_0 most significant) keeping the
// side sum current; only the flipped trailing positions are touched.
template <class Inst>
std::optional<Assignment> enumerate(const Inst& inst) {
  inst.validate();
  const std::size_t n = inst.n;
  check_size(n);
  const auto& side = inst.side;
  const auto& g = side.group();
  const std::size_t k = g.rank();
  std::vector<std::uint32_t> sum(k, 0), delta(n * k);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& w = side.weight(j);
    for (std::size_t c = 0; c < k; ++c) {
      sum[c] = (sum[c] + w.at_zero[c]) % g.modulus(c);
      delta[j * k + c] = (w.at_one[c] + g.modulus(c) - w.at_zero[c]) % g.modulus(c);
    }
  }
  std::vector<std::vector<std::uint32_t>> allowed;
  for (const auto& a : side.allowed()) allowed.push_back(a.residues());

  Assignment x(n);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t v = 0;; ) {
    if (std::binary_search(allowed.begin(), allowed.end(), sum) && inst.satisfies_local(x)) return x;
    if (++v == total) break;
    // Bits that changed: positions 0..tz of the counter, i.e. x_{n-1-b}.
    const int tz = std::countr_zero(v);
    for (int b = 0; b <= tz; ++b) {
      const std::size_t j = n - 1 - static_cast<std::size_t>(b);
      const bool now = (v >> b) & 1U;
      x.set(j, now);
      for (std::size_t c = 0; c < k; ++c) {
        const std::uint32_t m = g.modulus(c), d = delta[j * k + c];
        sum[c] = now ? (sum[c] + d) % m : (sum[c] + m - d) % m;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Assignment> brute_solve(const HornInstance& inst) { return enumerate(inst); }
std::optional<Assignment> brute_solve(const Lin2Instance& inst) { return enumerate(inst); }
std::optional<Assignment> brute_solve(const TwoSatInstance& inst) { return enumerate(inst); }

std::optional<Assignment> brute_solve(const reductions::ThreeSatInstance& phi) {
  phi.validate();
  check_size(phi.t);
  Assignment x(phi.t);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << phi.t); ++v) {
    for (std::size_t j = 0; j < phi.t; ++j) x.set(j, (v >> (phi.t - 1 - j)) & 1U);
    if (phi.satisfied_by(x)) return x;
  }
  return std::nullopt;
}

std::uint64_t count_solutions(const AffineSubspace& space, std::uint32_t a, std::uint32_t modulus) {
  if (modulus < 1) throw Error(Errc::invalid_modulus, "modulus must be >= 1");
  const std::size_t d = space.dim();
  check_size(d);
  BitVector x = space.offset();
  std::uint64_t count = x.popcount() % modulus == a % modulus;
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << d); ++i) {
    x ^= space.basis()[static_cast<std::size_t>(std::countr_zero(i))];
    count += x.popcount() % modulus == a % modulus;
  }
  return count;
}

std::size_t search_max_unique_dimension(std::size_t n, std::uint32_t modulus) {
  if (n > kMaxSearchDim) throw Error(Errc::size_limit, "exhaustive subspace search capped at n = 6");
  if (modulus < 2) throw Error(Errc::invalid_modulus, "modulus must be >= 2");
  const std::uint32_t cube = 1U << n;
  std::vector<std::uint32_t> span, counts(modulus);
  for (std::size_t k = n; k >= 1; --k) {
    // Reduced echelon bases: pivots at the lowest set bit of each row, every
    // other pivot column cleared, free bits above the pivot.
    detail::ColexCombination pivots(n, k);
    do {
      const auto& piv = pivots.current();
      std::uint32_t pivot_mask = 0;
      for (auto p : piv) pivot_mask |= 1U << p;
      std::vector<std::vector<std::uint32_t>> free(k);
      std::size_t free_bits = 0;
      for (std::size_t r = 0; r < k; ++r) {
        for (std::uint32_t c = piv[r] + 1; c < n; ++c)
          if (!((pivot_mask >> c) & 1U)) free[r].push_back(c);
        free_bits += free[r].size();
      }
      for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << free_bits); ++fill) {
        std::vector<std::uint32_t> rows(k);
        std::size_t used = 0;
        for (std::size_t r = 0; r < k; ++r) {
          rows[r] = 1U << piv[r];
          for (auto c : free[r]) rows[r] |= static_cast<std::uint32_t>((fill >> used++) & 1U) << c;
        }
        span.assign(1, 0);
        for (auto row : rows) {
          const std::size_t size = span.size();
          for (std::size_t i = 0; i < size; ++i) span.push_back(span[i] ^ row);
        }
        // Coset representatives: offsets with no pivot bits set.
        for (std::uint32_t b = 0; b < cube; ++b) {
          if (b & pivot_mask) continue;
          std::fill(counts.begin(), counts.end(), 0);
          for (auto s : span) ++counts[static_cast<std::uint32_t>(std::popcount(b ^ s)) % modulus];
          if (std::find(counts.begin(), counts.end(), 1U) != counts.end()) return k;
        }
      }
    } while (pivots.next());
  }
  return 0;
}

}  // namespace modcsp::oracle
