#include "modcsp/twosat.hpp"

#include <algorithm>
#include <stdexcept>

#include "modcsp/error.hpp"

namespace modcsp::twosat {

LiteralWeights split_weights(const ModularSideConstraint& side) {
  LiteralWeights w;
  for (const auto& pair : side.weights()) {
    w.positive.push_back(pair.at_one);
    w.negative.push_back(pair.at_zero);
  }
  return w;
}

ImplicationGraph build_graph(const TwoSatInstance& inst) {
  inst.validate();
  const auto& g = inst.side.group();
  ImplicationGraph graph{g, inst.n, std::vector<std::vector<std::uint32_t>>(2 * inst.n),
                         std::vector<std::uint64_t>(2 * inst.n)};
  auto w = split_weights(inst.side);
  for (std::uint32_t j = 0; j < inst.n; ++j) {
    graph.weight[2 * j] = g.index_of(w.positive[j]);
    graph.weight[2 * j + 1] = g.index_of(w.negative[j]);
  }
  for (const auto& c : inst.clauses) {
    auto a = node_of(c.first), b = node_of(c.second);
    graph.succ[complement(a)].push_back(b);
    graph.succ[complement(b)].push_back(a);
  }
  return graph;
}

namespace {

// Iterative Tarjan; component ids come out sinks first.
std::vector<std::uint32_t> strongly_connected(const std::vector<std::vector<std::uint32_t>>& succ) {
  const std::uint32_t n = static_cast<std::uint32_t>(succ.size());
  constexpr std::uint32_t unseen = UINT32_MAX;
  std::vector<std::uint32_t> index(n, unseen), low(n, 0), comp(n, unseen), stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> frames;
  std::uint32_t counter = 0, comps = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != unseen) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    while (!frames.empty()) {
      auto& [v, edge] = frames.back();
      if (edge < succ[v].size()) {
        std::uint32_t w = succ[v][edge++];
        if (index[w] == unseen) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          frames.push_back({w, 0});
        } else if (comp[w] == unseen) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::uint32_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          comp[w] = comps;
        } while (w != done);
        ++comps;
      }
    }
  }
  return comp;
}

// Z/M1 x ... x Z/Mk on mixed-radix indices.
class IndexArithmetic {
 public:
  explicit IndexArithmetic(const GroupSpec& g) : moduli_(g.moduli()) {}

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return combine(a, b, false); }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return combine(a, b, true); }

 private:
  std::uint64_t combine(std::uint64_t a, std::uint64_t b, bool negate) const {
    std::uint64_t out = 0, place = 1;
    for (std::size_t i = moduli_.size(); i-- > 0;) {
      const std::uint64_t m = moduli_[i];
      std::uint64_t x = a % m, y = b % m;
      a /= m;
      b /= m;
      std::uint64_t z = negate ? (x + m - y) % m : (x + y) % m;
      out += z * place;
      place *= m;
    }
    return out;
  }
  std::vector<std::uint32_t> moduli_;
};

class DagSolver {
 public:
  DagSolver(const ImplicationGraph& g, Stats* stats)
      : g_(g), arith_(g.group), stats_(stats), nodes_(2 * g.num_vars), alive_(nodes_, 1), value_(nodes_, 0),
        pred_(nodes_) {
    for (std::uint32_t u = 0; u < nodes_; ++u)
      for (auto v : g.succ[u]) pred_[v].push_back(u);
    sinks_first_ = sinks_first_order();
  }

  std::optional<Assignment> run(std::vector<std::uint64_t> allowed) {
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    if (!recurse(allowed, g_.num_vars)) return std::nullopt;
    Assignment x(g_.num_vars);
    for (std::uint32_t v = 0; v < g_.num_vars; ++v) x.set(v, value_[2 * v]);
    return x;
  }

 private:
  std::vector<std::uint32_t> sinks_first_order() const {
    std::vector<std::uint32_t> outdeg(nodes_), order;
    for (std::uint32_t u = 0; u < nodes_; ++u) outdeg[u] = static_cast<std::uint32_t>(g_.succ[u].size());
    for (std::uint32_t u = 0; u < nodes_; ++u)
      if (outdeg[u] == 0) order.push_back(u);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (auto p : pred_[order[i]])
        if (--outdeg[p] == 0) order.push_back(p);
    if (order.size() != nodes_) throw std::logic_error("solve_dag needs an acyclic implication graph");
    return order;
  }

  std::vector<std::uint64_t> shifted(const std::vector<std::uint64_t>& s, std::uint64_t by) const {
    std::vector<std::uint64_t> out;
    out.reserve(s.size());
    for (auto x : s) out.push_back(arith_.sub(x, by));
    std::sort(out.begin(), out.end());
    return out;
  }

  void set_pair(std::uint32_t y, bool v) {
    alive_[y] = alive_[complement(y)] = 0;
    value_[y] = v;
    value_[complement(y)] = !v;
  }

  // Returns the weight contributed by the literals this call set to true.
  std::optional<std::uint64_t> recurse(const std::vector<std::uint64_t>& s, std::uint32_t remaining) {
    if (stats_) ++stats_->calls;
    if (remaining == 0) {
      if (std::binary_search(s.begin(), s.end(), 0)) return 0;
      return std::nullopt;
    }
    if (s.size() == g_.group.order()) {
      std::uint64_t sum = 0;
      for (auto u : sinks_first_)
        if (alive_[u]) {
          set_pair(u, true);
          sum = arith_.add(sum, g_.weight[u]);
        }
      return sum;
    }

    std::uint32_t y = nodes_;
    for (std::uint32_t u = 0; u < nodes_ && y == nodes_; ++u) {
      if (!alive_[u]) continue;
      if (std::none_of(g_.succ[u].begin(), g_.succ[u].end(), [&](auto v) { return alive_[v]; })) y = u;
    }
    if (y == nodes_) throw std::logic_error("no zero-outdegree literal in an acyclic graph");
    const std::uint32_t ny = complement(y);

    set_pair(y, true);
    if (auto r = recurse(shifted(s, g_.weight[y]), remaining - 1)) return arith_.add(*r, g_.weight[y]);
    alive_[y] = alive_[ny] = 1;

    // y = 0 forces every literal with a path to y.
    std::vector<std::uint32_t> forced{y};
    std::vector<std::uint8_t> in_w(nodes_, 0);
    in_w[y] = 1;
    for (std::size_t i = 0; i < forced.size(); ++i)
      for (auto p : pred_[forced[i]])
        if (alive_[p] && !in_w[p]) {
          in_w[p] = 1;
          forced.push_back(p);
        }
    std::uint64_t wbar_sum = 0;
    for (auto z : forced) {
      if (in_w[complement(z)]) return std::nullopt;
      wbar_sum = arith_.add(wbar_sum, g_.weight[complement(z)]);
    }
    const std::uint64_t keep_shift = wbar_sum;
    const std::uint64_t flip_shift = arith_.add(arith_.sub(wbar_sum, g_.weight[ny]), g_.weight[y]);
    auto kept = shifted(s, keep_shift);
    auto flipped = shifted(s, flip_shift);
    std::vector<std::uint64_t> grown;
    std::set_union(kept.begin(), kept.end(), flipped.begin(), flipped.end(), std::back_inserter(grown));
    if (grown.size() == s.size()) return std::nullopt;

    for (auto z : forced) set_pair(z, false);
    auto r = recurse(grown, remaining - static_cast<std::uint32_t>(forced.size()));
    if (!r) {
      for (auto z : forced) alive_[z] = alive_[complement(z)] = 1;
      return std::nullopt;
    }
    if (std::binary_search(kept.begin(), kept.end(), *r)) return arith_.add(*r, keep_shift);
    // Nothing alive points at y, so y can be raised without breaking a clause.
    value_[y] = 1;
    value_[ny] = 0;
    return arith_.add(*r, flip_shift);
  }

  const ImplicationGraph& g_;
  IndexArithmetic arith_;
  Stats* stats_;
  std::uint32_t nodes_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint8_t> value_;
  std::vector<std::vector<std::uint32_t>> pred_;
  std::vector<std::uint32_t> sinks_first_;
};

}  // namespace

std::optional<Contraction> preprocess(const TwoSatInstance& inst) {
  auto raw = build_graph(inst);
  const auto comp = strongly_connected(raw.succ);
  std::uint32_t comps = 0;
  for (auto c : comp) comps = std::max(comps, c + 1);

  constexpr std::uint32_t unlabeled = UINT32_MAX;
  std::vector<std::uint32_t> label(comps, unlabeled);
  std::uint32_t vars = 0;
  for (std::uint32_t j = 0; j < inst.n; ++j) {
    const auto c = comp[2 * j], nc = comp[2 * j + 1];
    if (c == nc) return std::nullopt;
    if (label[c] != unlabeled) continue;
    label[c] = 2 * vars;
    label[nc] = 2 * vars + 1;
    ++vars;
  }

  IndexArithmetic arith(raw.group);
  ImplicationGraph graph{raw.group, vars, std::vector<std::vector<std::uint32_t>>(2 * vars),
                         std::vector<std::uint64_t>(2 * vars, 0)};
  std::vector<std::uint32_t> node_map(raw.succ.size());
  for (std::uint32_t u = 0; u < raw.succ.size(); ++u) {
    node_map[u] = label[comp[u]];
    graph.weight[node_map[u]] = arith.add(graph.weight[node_map[u]], raw.weight[u]);
  }
  for (std::uint32_t u = 0; u < raw.succ.size(); ++u)
    for (auto v : raw.succ[u])
      if (node_map[u] != node_map[v]) graph.succ[node_map[u]].push_back(node_map[v]);
  for (auto& s : graph.succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return Contraction{std::move(graph), std::move(node_map)};
}

std::optional<Assignment> solve_dag(const ImplicationGraph& graph, const std::vector<ResidueVector>& allowed,
                                    Stats* stats) {
  std::vector<std::uint64_t> s;
  for (const auto& a : allowed) {
    if (!(a.group() == graph.group)) throw Error(Errc::group_mismatch, "allowed residue bound to a different group");
    s.push_back(graph.group.index_of(a));
  }
  return DagSolver(graph, stats).run(std::move(s));
}

std::optional<Assignment> solve(const TwoSatInstance& inst, Stats* stats) {
  auto pre = preprocess(inst);
  if (!pre) return std::nullopt;
  auto y = solve_dag(pre->graph, inst.side.allowed(), stats);
  if (!y) return std::nullopt;
  Assignment x(inst.n);
  for (std::uint32_t j = 0; j < inst.n; ++j) {
    const auto lit = pre->node_map[2 * j];
    x.set(j, (*y)[lit / 2] != static_cast<bool>(lit & 1U));
  }
  if (!inst.satisfies(x)) throw std::logic_error("2-SAT solver produced an assignment that fails verification");
  return x;
}

}  // namespace modcsp::twosat
