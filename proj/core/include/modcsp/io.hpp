#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "modcsp/instance.hpp"
#include "modcsp/poly.hpp"
#include "modcsp/reductions.hpp"

namespace modcsp::io {

enum class ProblemKind { horn, lin2, twosat };

const char* to_string(ProblemKind k);

using AnyInstance = std::variant<HornInstance, Lin2Instance, TwoSatInstance>;

ProblemKind kind_of(const AnyInstance& inst);

struct InstanceFile {
  std::vector<std::string> comments;  // text after "c ", in order
  AnyInstance instance;
};

// Line-oriented instance format; variables are 1-based in text. Throws
// ParseError / SemanticError carrying the 1-based line number.
InstanceFile parse_instance(std::string_view text);
std::string serialize(const InstanceFile& file);
std::string serialize(const AnyInstance& inst);

// "p poly <nvars>" then "m <coeff> <k> <v_1> ... <v_k>" per monomial.
IntPoly parse_poly(std::string_view text);
std::string serialize(const IntPoly& p);

// DIMACS "p cnf <vars> <clauses>", clauses of 1 to 3 literals ended by 0.
reductions::ThreeSatInstance parse_cnf(std::string_view text);
std::string serialize(const reductions::ThreeSatInstance& phi);

std::string read_file(const std::string& path);

}  // namespace modcsp::io
