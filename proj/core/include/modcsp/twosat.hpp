#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "modcsp/instance.hpp"

namespace modcsp::twosat {

// g_{x_j}(1) and g_{not x_j}(1); both literals weigh 0 when false.
struct LiteralWeights {
  std::vector<ResidueVector> positive;
  std::vector<ResidueVector> negative;
};

LiteralWeights split_weights(const ModularSideConstraint& side);

// Node 2v is x_v, node 2v+1 is its negation.
constexpr std::uint32_t node_of(Literal l) noexcept { return 2 * l.var + (l.negated ? 1U : 0U); }
constexpr std::uint32_t complement(std::uint32_t node) noexcept { return node ^ 1U; }

struct ImplicationGraph {
  GroupSpec group;
  std::uint32_t num_vars = 0;
  std::vector<std::vector<std::uint32_t>> succ;  // per node
  std::vector<std::uint64_t> weight;             // group index of g_y(1) per node
};

ImplicationGraph build_graph(const TwoSatInstance& inst);

struct Contraction {
  ImplicationGraph graph;                // acyclic
  std::vector<std::uint32_t> node_map;   // original node -> contracted node
};

// Strongly connected components merged pairwise with their complements;
// nullopt when some x and not-x share a component.
std::optional<Contraction> preprocess(const TwoSatInstance& inst);

struct Stats {
  std::uint64_t calls = 0;
};

// Graph must be acyclic. Returns values for the graph's variables.
std::optional<Assignment> solve_dag(const ImplicationGraph& graph, const std::vector<ResidueVector>& allowed,
                                    Stats* stats = nullptr);

std::optional<Assignment> solve(const TwoSatInstance& inst, Stats* stats = nullptr);

}  // namespace modcsp::twosat
