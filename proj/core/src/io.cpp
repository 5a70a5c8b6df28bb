#include "modcsp/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "modcsp/error.hpp"

namespace modcsp::io {

const char* to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::horn: return "horn";
    case ProblemKind::lin2: return "lin2";
    case ProblemKind::twosat: return "2sat";
  }
  return "?";
}

ProblemKind kind_of(const AnyInstance& inst) { return static_cast<ProblemKind>(inst.index()); }

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto line = text.substr(start, end - start);
    auto tokens = split(line);
    if (!tokens.empty()) out.push_back({number, line, std::move(tokens)});
    start = end + 1;
  }
  return out;
}

[[noreturn]] void parse_fail(const Line& l, const std::string& expected) {
  throw Error(Errc::parse_error, "line " + std::to_string(l.number) + ": expected " + expected, l.number);
}

[[noreturn]] void semantic_fail(const Line& l, const std::string& what) {
  throw Error(Errc::semantic_error, "line " + std::to_string(l.number) + ": " + what, l.number);
}

template <class Int>
Int number(const Line& l, std::size_t i, const char* production) {
  if (i >= l.tokens.size()) parse_fail(l, production);
  const auto tok = l.tokens[i];
  Int v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) parse_fail(l, production);
  return v;
}

std::string comment_text(const Line& l) {
  auto s = l.text;
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  return s.size() > 2 ? std::string(s.substr(2)) : std::string();
}

std::uint32_t var_index(const Line& l, std::int64_t v, std::uint32_t n) {
  if (v < 1 || v > n) semantic_fail(l, "variable " + std::to_string(v) + " out of range 1.." + std::to_string(n));
  return static_cast<std::uint32_t>(v - 1);
}

constexpr const char* kHeader = "p modcsp {horn|lin2|2sat} <n> <m>";
constexpr const char* kHorn = "h <head> <k> <b_1> ... <b_k>";
constexpr const char* kUnit = "u <var> <0|1>";
constexpr const char* kLin = "l <rhs-bit> <k> <v_1> ... <v_k>";
constexpr const char* kTwo = "t <lit_1> <lit_2>";
constexpr const char* kGroup = "g <M> <a> <w_1^0> <w_1^1> ... <w_n^0> <w_n^1>";
constexpr const char* kAllowed = "s <r_1> ... <r_k>";

struct GroupLine {
  std::uint32_t modulus;
  std::int64_t target;
  std::vector<std::int64_t> weights;  // 2n entries
  std::size_t line;
};

}  // namespace

InstanceFile parse_instance(std::string_view text) {
  std::vector<std::string> comments;
  std::optional<ProblemKind> kind;
  std::uint32_t n = 0;
  std::size_t m = 0, records = 0;
  std::vector<HornClause> horn;
  std::vector<UnitConstraint> units;
  std::vector<Lin2Equation> eqs;
  std::vector<TwoSatClause> twos;
  std::vector<GroupLine> groups;
  std::vector<std::pair<std::vector<std::int64_t>, const Line*>> allowed;

  const auto lines = lines_of(text);
  for (const auto& l : lines) {
    const auto tag = l.tokens[0];
    if (tag == "c") {
      comments.push_back(comment_text(l));
      continue;
    }
    if (tag == "p") {
      if (kind) semantic_fail(l, "duplicate header");
      if (l.tokens.size() != 5 || l.tokens[1] != "modcsp") parse_fail(l, kHeader);
      if (l.tokens[2] == "horn")
        kind = ProblemKind::horn;
      else if (l.tokens[2] == "lin2")
        kind = ProblemKind::lin2;
      else if (l.tokens[2] == "2sat")
        kind = ProblemKind::twosat;
      else
        parse_fail(l, kHeader);
      n = number<std::uint32_t>(l, 3, kHeader);
      m = number<std::size_t>(l, 4, kHeader);
      continue;
    }
    if (!kind) parse_fail(l, std::string("header ") + kHeader);

    if (tag == "h" && *kind == ProblemKind::horn) {
      const auto head = number<std::int64_t>(l, 1, kHorn);
      const auto k = number<std::size_t>(l, 2, kHorn);
      if (l.tokens.size() != 3 + k) parse_fail(l, kHorn);
      HornClause c{var_index(l, head, n), {}};
      for (std::size_t i = 0; i < k; ++i) c.body.push_back(var_index(l, number<std::int64_t>(l, 3 + i, kHorn), n));
      for (auto b : c.body)
        if (b == c.head) semantic_fail(l, "clause head appears in its own body");
      horn.push_back(std::move(c));
      ++records;
    } else if (tag == "u" && *kind == ProblemKind::horn) {
      if (l.tokens.size() != 3) parse_fail(l, kUnit);
      const auto v = number<std::int64_t>(l, 1, kUnit);
      const auto b = number<int>(l, 2, kUnit);
      if (b != 0 && b != 1) parse_fail(l, kUnit);
      units.push_back({var_index(l, v, n), b == 1});
      ++records;
    } else if (tag == "l" && *kind == ProblemKind::lin2) {
      const auto rhs = number<int>(l, 1, kLin);
      const auto k = number<std::size_t>(l, 2, kLin);
      if ((rhs != 0 && rhs != 1) || l.tokens.size() != 3 + k) parse_fail(l, kLin);
      Lin2Equation e{{}, rhs == 1};
      for (std::size_t i = 0; i < k; ++i) e.vars.push_back(var_index(l, number<std::int64_t>(l, 3 + i, kLin), n));
      auto sorted = e.vars;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) semantic_fail(l, "duplicate variable in equation");
      eqs.push_back(std::move(e));
      ++records;
    } else if (tag == "t" && *kind == ProblemKind::twosat) {
      if (l.tokens.size() != 3) parse_fail(l, kTwo);
      Literal lits[2];
      for (int i = 0; i < 2; ++i) {
        const auto v = number<std::int64_t>(l, 1 + i, kTwo);
        if (v == 0) parse_fail(l, kTwo);
        lits[i] = {var_index(l, v < 0 ? -v : v, n), v < 0};
      }
      twos.push_back({lits[0], lits[1]});
      ++records;
    } else if (tag == "g") {
      GroupLine g{number<std::uint32_t>(l, 1, kGroup), number<std::int64_t>(l, 2, kGroup), {}, l.number};
      if (g.modulus < 2) semantic_fail(l, "modulus must be >= 2");
      if (l.tokens.size() != 3 + 2 * static_cast<std::size_t>(n))
        semantic_fail(l, "expected " + std::to_string(2 * static_cast<std::size_t>(n)) + " weights, got " +
                             std::to_string(l.tokens.size() - 3));
      for (std::size_t i = 3; i < l.tokens.size(); ++i) {
        const auto w = number<std::int64_t>(l, i, kGroup);
        if (w < 0 || w >= g.modulus) semantic_fail(l, "weight " + std::to_string(w) + " out of range for Z/" + std::to_string(g.modulus));
        g.weights.push_back(w);
      }
      if (g.target < 0 || g.target >= g.modulus) semantic_fail(l, "target residue out of range");
      groups.push_back(std::move(g));
    } else if (tag == "s") {
      std::vector<std::int64_t> r;
      for (std::size_t i = 1; i < l.tokens.size(); ++i) r.push_back(number<std::int64_t>(l, i, kAllowed));
      if (r.empty()) parse_fail(l, kAllowed);
      allowed.push_back({std::move(r), &l});
    } else {
      parse_fail(l, std::string("a record valid for ") + to_string(*kind));
    }
  }

  const std::size_t last = lines.empty() ? 1 : lines.back().number;
  if (!kind) throw Error(Errc::parse_error, "missing header " + std::string(kHeader), last);
  if (groups.empty()) throw Error(Errc::semantic_error, "at least one g line is required", last);
  if (records != m)
    throw Error(Errc::semantic_error, "header promises " + std::to_string(m) + " constraints, found " + std::to_string(records), last);

  std::vector<std::uint32_t> moduli;
  for (const auto& g : groups) moduli.push_back(g.modulus);
  GroupSpec group(moduli);
  std::vector<WeightPair> weights;
  for (std::uint32_t j = 0; j < n; ++j) {
    std::vector<std::uint32_t> zero, one;
    for (const auto& g : groups) {
      zero.push_back(static_cast<std::uint32_t>(g.weights[2 * j]));
      one.push_back(static_cast<std::uint32_t>(g.weights[2 * j + 1]));
    }
    weights.push_back({group.element(std::move(zero)), group.element(std::move(one))});
  }
  std::vector<ResidueVector> targets;
  if (allowed.empty()) {
    std::vector<std::uint32_t> a;
    for (const auto& g : groups) a.push_back(static_cast<std::uint32_t>(g.target));
    targets.push_back(group.element(std::move(a)));
  }
  for (const auto& [r, l] : allowed) {
    if (r.size() != groups.size()) semantic_fail(*l, "allowed tuple needs " + std::to_string(groups.size()) + " residues");
    std::vector<std::uint32_t> res;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] < 0 || r[i] >= groups[i].modulus) semantic_fail(*l, "allowed residue out of range");
      res.push_back(static_cast<std::uint32_t>(r[i]));
    }
    targets.push_back(group.element(std::move(res)));
  }
  ModularSideConstraint side(group, std::move(weights), std::move(targets));

  switch (*kind) {
    case ProblemKind::horn: return {std::move(comments), HornInstance{n, std::move(horn), std::move(units), std::move(side)}};
    case ProblemKind::lin2: return {std::move(comments), Lin2Instance{n, std::move(eqs), std::move(side)}};
    case ProblemKind::twosat: break;
  }
  return {std::move(comments), TwoSatInstance{n, std::move(twos), std::move(side)}};
}

namespace {

void write_side(std::ostringstream& out, const ModularSideConstraint& side) {
  const auto& g = side.group();
  const auto& first = side.allowed().front();
  for (std::size_t c = 0; c < g.rank(); ++c) {
    out << "g " << g.modulus(c) << ' ' << first[c];
    for (const auto& w : side.weights()) out << ' ' << w.at_zero[c] << ' ' << w.at_one[c];
    out << '\n';
  }
  if (side.allowed().size() > 1)
    for (const auto& a : side.allowed()) {
      out << 's';
      for (auto r : a.residues()) out << ' ' << r;
      out << '\n';
    }
}

void write_body(std::ostringstream& out, const HornInstance& inst) {
  out << "p modcsp horn " << inst.n << ' ' << inst.clauses.size() + inst.units.size() << '\n';
  for (const auto& c : inst.clauses) {
    out << "h " << c.head + 1 << ' ' << c.body.size();
    for (auto b : c.body) out << ' ' << b + 1;
    out << '\n';
  }
  for (const auto& u : inst.units) out << "u " << u.var + 1 << ' ' << (u.value ? 1 : 0) << '\n';
  write_side(out, inst.side);
}

void write_body(std::ostringstream& out, const Lin2Instance& inst) {
  out << "p modcsp lin2 " << inst.n << ' ' << inst.equations.size() << '\n';
  for (const auto& e : inst.equations) {
    out << "l " << (e.rhs ? 1 : 0) << ' ' << e.vars.size();
    for (auto v : e.vars) out << ' ' << v + 1;
    out << '\n';
  }
  write_side(out, inst.side);
}

void write_body(std::ostringstream& out, const TwoSatInstance& inst) {
  out << "p modcsp 2sat " << inst.n << ' ' << inst.clauses.size() << '\n';
  auto lit = [](Literal l) { return l.negated ? -static_cast<std::int64_t>(l.var + 1) : static_cast<std::int64_t>(l.var + 1); };
  for (const auto& c : inst.clauses) out << "t " << lit(c.first) << ' ' << lit(c.second) << '\n';
  write_side(out, inst.side);
}

}  // namespace

std::string serialize(const InstanceFile& file) {
  std::ostringstream out;
  for (const auto& c : file.comments) out << (c.empty() ? "c" : "c " + c) << '\n';
  std::visit([&](const auto& inst) { write_body(out, inst); }, file.instance);
  return out.str();
}

std::string serialize(const AnyInstance& inst) { return serialize(InstanceFile{{}, inst}); }

IntPoly parse_poly(std::string_view text) {
  constexpr const char* kPolyHeader = "p poly <nvars>";
  constexpr const char* kMono = "m <coeff> <k> <v_1> ... <v_k>";
  std::optional<IntPoly> p;
  for (const auto& l : lines_of(text)) {
    const auto tag = l.tokens[0];
    if (tag == "c") continue;
    if (tag == "p") {
      if (p) semantic_fail(l, "duplicate header");
      if (l.tokens.size() != 3 || l.tokens[1] != "poly") parse_fail(l, kPolyHeader);
      p = IntPoly(number<std::uint32_t>(l, 2, kPolyHeader));
      continue;
    }
    if (!p) parse_fail(l, std::string("header ") + kPolyHeader);
    if (tag != "m" || l.tokens.size() < 3) parse_fail(l, kMono);
    BigInt coeff;
    try {
      coeff = BigInt(std::string(l.tokens[1]));
    } catch (const std::exception&) {
      parse_fail(l, kMono);
    }
    const auto k = number<std::size_t>(l, 2, kMono);
    if (l.tokens.size() != 3 + k) parse_fail(l, kMono);
    Monomial m;
    for (std::size_t i = 0; i < k; ++i)
      m.push_back(var_index(l, number<std::int64_t>(l, 3 + i, kMono), static_cast<std::uint32_t>(p->nvars())));
    std::sort(m.begin(), m.end());
    if (std::adjacent_find(m.begin(), m.end()) != m.end()) semantic_fail(l, "repeated variable in monomial");
    p->add_term(m, coeff);
  }
  if (!p) throw Error(Errc::parse_error, std::string("missing header ") + kPolyHeader, 1);
  return *p;
}

std::string serialize(const IntPoly& p) {
  std::ostringstream out;
  out << "p poly " << p.nvars() << '\n';
  for (const auto& [m, c] : p.terms()) {
    out << "m " << c << ' ' << m.size();
    for (auto v : m) out << ' ' << v + 1;
    out << '\n';
  }
  return out.str();
}

reductions::ThreeSatInstance parse_cnf(std::string_view text) {
  constexpr const char* kCnfHeader = "p cnf <vars> <clauses>";
  std::optional<reductions::ThreeSatInstance> phi;
  std::size_t declared = 0;
  std::vector<Literal> open;
  std::size_t last = 1;
  for (const auto& l : lines_of(text)) {
    last = l.number;
    const auto tag = l.tokens[0];
    if (tag == "c") continue;
    if (tag == "%") break;
    if (tag == "p") {
      if (phi) semantic_fail(l, "duplicate header");
      if (l.tokens.size() != 4 || l.tokens[1] != "cnf") parse_fail(l, kCnfHeader);
      phi = reductions::ThreeSatInstance{number<std::uint32_t>(l, 2, kCnfHeader), {}};
      declared = number<std::size_t>(l, 3, kCnfHeader);
      continue;
    }
    if (!phi) parse_fail(l, std::string("header ") + kCnfHeader);
    for (std::size_t i = 0; i < l.tokens.size(); ++i) {
      const auto v = number<std::int64_t>(l, i, "literal or 0");
      if (v == 0) {
        if (open.empty() || open.size() > 3) semantic_fail(l, "clause must have 1 to 3 literals");
        phi->clauses.push_back(std::move(open));
        open.clear();
      } else {
        open.push_back({var_index(l, v < 0 ? -v : v, phi->t), v < 0});
      }
    }
  }
  if (!phi) throw Error(Errc::parse_error, std::string("missing header ") + kCnfHeader, last);
  if (!open.empty()) throw Error(Errc::parse_error, "last clause is not terminated by 0", last);
  if (phi->clauses.size() != declared)
    throw Error(Errc::semantic_error, "header promises " + std::to_string(declared) + " clauses, found " +
                                          std::to_string(phi->clauses.size()), last);
  return *phi;
}

std::string serialize(const reductions::ThreeSatInstance& phi) {
  std::ostringstream out;
  out << "p cnf " << phi.t << ' ' << phi.clauses.size() << '\n';
  for (const auto& c : phi.clauses) {
    for (const auto& l : c) out << (l.negated ? "-" : "") << l.var + 1 << ' ';
    out << "0\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::invalid_argument, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace modcsp::io
