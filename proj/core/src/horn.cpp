#include "modcsp/horn.hpp"

#include <climits>
#include <map>
#include <stdexcept>

#include "colex.hpp"
#include "modcsp/error.hpp"
#include "modcsp/normalize.hpp"
#include "modcsp/number.hpp"
#include "modcsp/reductions.hpp"

namespace modcsp::horn {

Propagator::Propagator(const HornInstance& inst) : n_(inst.n), occurs_(inst.n), forced_zero_(inst.n, 0) {
  head_.reserve(inst.clauses.size());
  body_size_.reserve(inst.clauses.size());
  for (std::uint32_t c = 0; c < inst.clauses.size(); ++c) {
    const auto& cl = inst.clauses[c];
    head_.push_back(cl.head);
    body_size_.push_back(static_cast<std::uint32_t>(cl.body.size()));
    for (auto b : cl.body) occurs_[b].push_back(c);
  }
  std::vector<std::uint8_t> one(inst.n, 0);
  for (const auto& u : inst.units) {
    if (u.value) {
      if (!one[u.var]) forced_one_.push_back(u.var);
      one[u.var] = 1;
    } else {
      forced_zero_[u.var] = 1;
    }
  }
  for (std::uint32_t v = 0; v < inst.n; ++v)
    if (one[v] && forced_zero_[v]) unit_conflict_ = true;
}

std::optional<Assignment> Propagator::closure(const Assignment& seed) const {
  if (unit_conflict_) return std::nullopt;
  std::vector<std::uint8_t> y(n_, 0);
  std::vector<std::uint32_t> queue;
  queue.reserve(n_);
  auto raise = [&](std::uint32_t v) {
    if (y[v]) return true;
    if (forced_zero_[v]) return false;
    y[v] = 1;
    queue.push_back(v);
    return true;
  };
  for (std::uint32_t v = 0; v < n_; ++v)
    if (seed[v] && !raise(v)) return std::nullopt;
  for (auto v : forced_one_)
    if (!raise(v)) return std::nullopt;
  std::vector<std::uint32_t> missing = body_size_;
  for (std::uint32_t c = 0; c < missing.size(); ++c)
    if (missing[c] == 0 && !raise(head_[c])) return std::nullopt;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (auto c : occurs_[queue[q]])
      if (--missing[c] == 0 && !raise(head_[c])) return std::nullopt;
  }
  Assignment out(n_);
  for (std::uint32_t v = 0; v < n_; ++v)
    if (y[v]) out.set(v);
  return out;
}

std::optional<Assignment> find_minimal(const HornInstance& inst, const Assignment& seed) {
  if (seed.size() != inst.n) throw Error(Errc::length_mismatch, "seed length does not match instance");
  return Propagator(inst).closure(seed);
}

std::optional<Assignment> solve_rounds(const HornInstance& inst, std::int64_t rounds) {
  if (rounds < 0) throw Error(Errc::invalid_rounds, "rounds must be >= 0");
  inst.validate();
  if (!inst.side.has_unit_weights())
    throw Error(Errc::invalid_argument, "solve_rounds needs unit weights; normalize first");

  const std::uint32_t modulus = inst.side.group().modulus(0);
  BitVector weighted(inst.n);
  for (std::uint32_t j = 0; j < inst.n; ++j)
    if (inst.side.weight(j).at_one[0] == 1) weighted.set(j);
  std::vector<std::uint32_t> targets;
  for (const auto& s : inst.side.allowed()) targets.push_back(s[0]);
  const auto rank = detail::target_ranks(modulus, targets);

  Propagator prop(inst);
  std::map<BitVector, std::uint32_t> classes;
  std::vector<std::uint32_t> reps;
  for (std::uint32_t v = 0; v < inst.n; ++v) {
    BitVector seed(inst.n);
    seed.set(v);
    auto c = prop.closure(seed);
    if (c && classes.emplace(std::move(*c), v).second) reps.push_back(v);
  }

  const auto max_k = std::min<std::size_t>(static_cast<std::size_t>(rounds), reps.size());
  int best_rank = INT_MAX;
  std::optional<Assignment> best;
  for (std::size_t k = 0; k <= max_k; ++k) {
    detail::ColexCombination comb(reps.size(), k);
    do {
      BitVector seed(inst.n);
      for (auto i : comb.current()) seed.set(reps[i]);
      auto y = prop.closure(seed);
      if (!y) continue;
      int r = rank[y->popcount_masked(weighted) % modulus];
      if (r >= 0 && r < best_rank) {
        best_rank = r;
        best = std::move(y);
        if (r == 0) return best;
      }
    } while (comb.next());
  }
  return best;
}

std::int64_t auto_rounds(std::uint32_t modulus) {
  if (!is_prime_power(modulus))
    throw Error(Errc::auto_rounds_unavailable,
                "modulus " + std::to_string(modulus) + " is not a prime power; pass an explicit round count");
  return static_cast<std::int64_t>(modulus) - 1;
}

namespace {

std::optional<Assignment> solve_single_modulus(const HornInstance& inst, const SolveConfig& cfg) {
  auto norm = normalize_unit_weights(inst);
  if (norm.n > cfg.max_vars_after_normalize)
    throw Error(Errc::size_limit, "normalized instance has " + std::to_string(norm.n) + " variables");
  std::int64_t r = cfg.rounds.is_auto() ? auto_rounds(inst.side.group().modulus(0)) : cfg.rounds.value();
  auto y = solve_rounds(norm, r);
  if (!y) return std::nullopt;
  return restrict_to(*y, inst.n);
}

}  // namespace

std::optional<Assignment> solve(const HornInstance& inst, const SolveConfig& cfg) {
  inst.validate();
  if (!cfg.rounds.is_auto() && cfg.rounds.value() < 0) throw Error(Errc::invalid_rounds, "rounds must be >= 0");
  std::optional<Assignment> x;
  if (inst.side.group().rank() == 1) {
    x = solve_single_modulus(inst, cfg);
  } else {
    for (const auto& target : inst.side.allowed()) {
      x = solve_single_modulus(reductions::flatten_horn(inst, target), cfg);
      if (x) {
        x = restrict_to(*x, inst.n);
        break;
      }
    }
  }
  if (x && !inst.satisfies(*x)) throw std::logic_error("horn solver produced an assignment that fails verification");
  return x;
}

}  // namespace modcsp::horn
