#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "modcsp/instance.hpp"
#include "modcsp/rounds.hpp"

namespace modcsp::horn {

// Precomputed occurrence lists for repeated minimal-closure queries.
class Propagator {
 public:
  explicit Propagator(const HornInstance& inst);

  // Least y >= seed satisfying clauses and units, or nullopt.
  std::optional<Assignment> closure(const Assignment& seed) const;

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> head_;
  std::vector<std::uint32_t> body_size_;
  std::vector<std::vector<std::uint32_t>> occurs_;
  std::vector<std::uint32_t> forced_one_;
  std::vector<std::uint8_t> forced_zero_;
  bool unit_conflict_ = false;
};

std::optional<Assignment> find_minimal(const HornInstance& inst, const Assignment& seed);

// Tries the closure of every seed of weight <= rounds. The side constraint must
// already have unit weights (see normalize_unit_weights). Seeds range over one
// representative per distinct singleton closure, by increasing weight and then
// colex order; targets are tried in sorted order.
std::optional<Assignment> solve_rounds(const HornInstance& inst, std::int64_t rounds);

// M - 1 for prime powers; throws AutoRoundsUnavailable otherwise.
std::int64_t auto_rounds(std::uint32_t modulus);

struct SolveConfig {
  Rounds rounds = Rounds::automatic();
  std::size_t max_vars_after_normalize = 2'000'000;
};

// Flatten (product groups), normalize, pick rounds, search; the result is
// re-checked against the original instance.
std::optional<Assignment> solve(const HornInstance& inst, const SolveConfig& cfg = {});

}  // namespace modcsp::horn
