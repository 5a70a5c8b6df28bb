#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <random>

#include "modcsp/error.hpp"
#include "modcsp/generate.hpp"
#include "modcsp/horn.hpp"
#include "modcsp/io.hpp"
#include "modcsp/lin2.hpp"
#include "modcsp/oracle.hpp"
#include "modcsp/polyrep.hpp"
#include "modcsp/reductions.hpp"
#include "modcsp/twosat.hpp"

namespace modcsp::cli {

namespace {

using nlohmann::json;

struct Options {
  bool json = false;
  std::string file;

  // solve
  std::int64_t rounds = 0;
  bool rounds_given = false;
  bool auto_rounds = false;
  bool randomized = false;
  std::string trials = "auto";
  std::uint64_t seed = 0;
  unsigned bound_factor = lin2::kDefaultBoundFactor;

  // gen
  std::string kind = "horn";
  std::uint32_t n = 6;
  std::size_t constraints = 4;
  std::vector<std::uint32_t> moduli{3};
  std::size_t allowed = 1;
  std::size_t max_arity = 3;
  bool unit_weights = false;
  std::size_t d = 2;
  std::size_t copies = 1;
  std::uint32_t modulus = 3;
  std::uint32_t target = 0;
  std::uint32_t t = 3;
  std::size_t clauses = 3;
  std::string cnf;

  // poly
  std::string construction = "nand-trivial";
  std::uint32_t prime = 2;
  unsigned exponent = 1;
  std::uint64_t residue = 0;
  std::string basis = "01";
  std::string mode = "exact";
};

std::string residue_line(const ResidueVector& r) {
  std::string s;
  for (auto v : r.residues()) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

template <class Inst>
int report(std::ostream& out, const Options& opt, const char* command, const io::InstanceFile& file, const Inst& inst,
           const std::optional<Assignment>& x, json extra = json::object()) {
  if (opt.json) {
    json j{{"format", 1}, {"command", command}, {"kind", io::to_string(io::kind_of(file.instance))}};
    j["status"] = x ? "SATISFIABLE" : "UNSATISFIABLE";
    if (x) {
      j["assignment"] = x->to_string();
      j["residue"] = eval_side(inst.side, *x).value.residues();
    }
    for (auto& [k, v] : extra.items()) j[k] = v;
    out << j.dump() << '\n';
  } else {
    for (const auto& c : file.comments) out << (c.empty() ? "c" : "c " + c) << '\n';
    if (x) {
      out << "s SATISFIABLE\n";
      out << "v " << x->to_string() << '\n';
      out << "r " << residue_line(eval_side(inst.side, *x).value) << '\n';
    } else {
      out << "s UNSATISFIABLE\n";
    }
  }
  return x ? kSat : kUnsat;
}

int cmd_solve(std::ostream& out, const Options& opt) {
  const auto file = io::parse_instance(io::read_file(opt.file));
  const Rounds rounds = opt.rounds_given ? Rounds::fixed(opt.rounds) : Rounds::automatic();
  if (const auto* h = std::get_if<HornInstance>(&file.instance)) {
    horn::SolveConfig cfg;
    cfg.rounds = rounds;
    return report(out, opt, "solve", file, *h, horn::solve(*h, cfg));
  }
  if (const auto* l = std::get_if<Lin2Instance>(&file.instance)) {
    lin2::SolveConfig cfg;
    cfg.rounds = rounds;
    cfg.randomized = opt.randomized;
    cfg.seed = opt.seed;
    cfg.bound_factor = opt.bound_factor;
    if (opt.trials != "auto") {
      try {
        cfg.trials = Trials::fixed(std::stoll(opt.trials));
      } catch (const std::logic_error&) {
        throw Error(Errc::invalid_trials, "--trials expects an integer or auto");
      }
    }
    return report(out, opt, "solve", file, *l, lin2::solve(*l, cfg));
  }
  const auto& ts = std::get<TwoSatInstance>(file.instance);
  twosat::Stats stats;
  auto x = twosat::solve(ts, &stats);
  return report(out, opt, "solve", file, ts, x, json{{"calls", stats.calls}});
}

int cmd_oracle(std::ostream& out, const Options& opt) {
  const auto file = io::parse_instance(io::read_file(opt.file));
  return std::visit([&](const auto& inst) { return report(out, opt, "oracle", file, inst, oracle::brute_solve(inst)); },
                    file.instance);
}

void emit_instance(std::ostream& out, const Options& opt, io::InstanceFile file) {
  if (opt.json)
    out << json{{"format", 1}, {"instance", io::serialize(file)}}.dump() << '\n';
  else
    out << io::serialize(file);
}

int cmd_gen_random(std::ostream& out, const Options& opt) {
  gen::Rng rng(opt.seed);
  gen::RandomSpec spec{opt.n, opt.moduli, opt.constraints, opt.max_arity, opt.unit_weights, opt.allowed};
  const std::string note = "random " + opt.kind + " seed " + std::to_string(opt.seed);
  if (opt.kind == "horn")
    emit_instance(out, opt, {{note}, gen::random_horn(spec, rng)});
  else if (opt.kind == "lin2")
    emit_instance(out, opt, {{note}, gen::random_lin2(spec, rng)});
  else if (opt.kind == "2sat")
    emit_instance(out, opt, {{note}, gen::random_twosat(spec, rng)});
  else
    throw Error(Errc::invalid_argument, "--kind must be horn, lin2 or 2sat");
  return kOk;
}

int cmd_gen_hadamard(std::ostream& out, const Options& opt) {
  auto space = lin2::hadamard_direct_sum(opt.d, opt.copies);
  if (opt.target >= opt.modulus) throw Error(Errc::invalid_argument, "--target must be below --modulus");
  emit_instance(out, opt,
                {{"hadamard d " + std::to_string(opt.d) + " copies " + std::to_string(opt.copies)},
                 gen::subspace_instance(space, opt.modulus, {opt.target})});
  return kOk;
}

reductions::ThreeSatInstance formula(const Options& opt) {
  if (!opt.cnf.empty()) return io::parse_cnf(io::read_file(opt.cnf));
  gen::Rng rng(opt.seed);
  return gen::random_3sat(opt.t, opt.clauses, rng);
}

int cmd_gen_3sat_horn(std::ostream& out, const Options& opt) {
  const auto phi = formula(opt);
  const auto m = phi.clauses.size();
  if (m == 0) throw Error(Errc::invalid_argument, "formula has no clauses");
  const auto rep = polyrep::nand_best(m, opt.modulus);
  emit_instance(out, opt, {{"3-SAT gadget, " + std::to_string(m) + " clauses"}, reductions::gadget_3sat_to_horn(phi, opt.modulus, rep)});
  return kOk;
}

int cmd_gen_3sat_lin2(std::ostream& out, const Options& opt) {
  const auto phi = formula(opt);
  const auto m = phi.clauses.size();
  if (m == 0) throw Error(Errc::invalid_argument, "formula has no clauses");
  const auto rep = polyrep::or_trivial_pm1(m, opt.modulus);
  emit_instance(out, opt, {{"3-SAT gadget, " + std::to_string(m) + " clauses"}, reductions::gadget_3sat_to_lin2(phi, opt.modulus, rep)});
  return kOk;
}

void emit_poly(std::ostream& out, const Options& opt, const IntPoly& p) {
  if (opt.json)
    out << json{{"format", 1}, {"poly", io::serialize(p)}, {"degree", p.degree()}, {"sparsity", p.sparsity()}}.dump() << '\n';
  else
    out << io::serialize(p);
}

int cmd_poly_build(std::ostream& out, const Options& opt) {
  const auto& c = opt.construction;
  if (c == "nand-trivial")
    emit_poly(out, opt, polyrep::nand_trivial(opt.d, opt.modulus));
  else if (c == "nand-bbr")
    emit_poly(out, opt, polyrep::nand_bbr(opt.d, opt.modulus));
  else if (c == "nand-best")
    emit_poly(out, opt, polyrep::nand_best(opt.d, opt.modulus));
  else if (c == "or-trivial")
    emit_poly(out, opt, polyrep::or_trivial_pm1(opt.d, opt.modulus));
  else if (c == "indicator")
    emit_poly(out, opt, polyrep::residue_indicator_poly(opt.prime, opt.exponent, opt.residue, opt.d));
  else
    throw Error(Errc::invalid_argument, "unknown construction " + c);
  return kOk;
}

Basis parse_basis(const std::string& b) {
  if (b == "01") return Basis::zero_one;
  if (b == "pm1") return Basis::plus_minus_one;
  throw Error(Errc::invalid_argument, "--basis must be 01 or pm1");
}

int cmd_poly_check(std::ostream& out, const Options& opt) {
  const auto p = io::parse_poly(io::read_file(opt.file));
  const bool valid = parse_basis(opt.basis) == Basis::zero_one ? is_nand_rep_01(p, p.nvars(), opt.modulus)
                                                               : is_or_rep_pm1(p, p.nvars(), opt.modulus);
  if (opt.json)
    out << json{{"format", 1}, {"command", "poly check"}, {"valid", valid}, {"basis", opt.basis}, {"modulus", opt.modulus}}.dump()
        << '\n';
  else
    out << (valid ? "valid" : "invalid") << '\n';
  return kOk;
}

int cmd_poly_cov(std::ostream& out, const Options& opt) {
  const auto p = io::parse_poly(io::read_file(opt.file));
  polyrep::CoverMode mode;
  if (opt.mode == "exact")
    mode = polyrep::CoverMode::exact;
  else if (opt.mode == "greedy")
    mode = polyrep::CoverMode::greedy;
  else
    throw Error(Errc::invalid_argument, "--mode must be exact or greedy");
  const auto cov = polyrep::covering_number(p, mode);
  if (opt.json)
    out << json{{"format", 1}, {"command", "poly cov"}, {"mode", opt.mode}, {"cov", cov}}.dump() << '\n';
  else
    out << "cov " << cov << '\n';
  return kOk;
}

int cmd_poly_mvf(std::ostream& out, const Options& opt) {
  const auto p = io::parse_poly(io::read_file(opt.file));
  const auto family = polyrep::mvf_from_or_poly(p, opt.modulus);
  const bool verified = family.verify();
  if (opt.json)
    out << json{{"format", 1}, {"command", "poly mvf"}, {"size", family.size()}, {"rank", family.rank()}, {"verified", verified}}.dump()
        << '\n';
  else
    out << "mvf size " << family.size() << " rank " << family.rank() << (verified ? " verified\n" : " NOT verified\n");
  return kOk;
}

int cmd_reduce_flatten(std::ostream& out, const Options& opt) {
  const auto file = io::parse_instance(io::read_file(opt.file));
  auto single_target = [](const ModularSideConstraint& side) {
    if (side.allowed().size() != 1)
      throw Error(Errc::semantic_error, "flatten needs a single allowed tuple; got " + std::to_string(side.allowed().size()));
    return side.allowed().front();
  };
  if (const auto* h = std::get_if<HornInstance>(&file.instance)) {
    emit_instance(out, opt, {file.comments, reductions::flatten_horn(*h, single_target(h->side))});
    return kOk;
  }
  if (const auto* l = std::get_if<Lin2Instance>(&file.instance)) {
    emit_instance(out, opt, {file.comments, reductions::flatten_lin2(*l, single_target(l->side))});
    return kOk;
  }
  throw Error(Errc::semantic_error, "flatten applies to horn and lin2 instances");
}

// Small end-to-end battery against the oracle.
int cmd_selftest(std::ostream& out, const Options& opt) {
  gen::Rng rng(opt.seed);
  std::size_t checks = 0, failures = 0;
  auto expect = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      out << "FAIL " << what << '\n';
    }
  };
  for (std::uint32_t m : {2U, 3U, 4U, 5U}) {
    for (int i = 0; i < 20; ++i) {
      gen::RandomSpec spec{static_cast<std::uint32_t>(1 + i % 7), {m}, static_cast<std::size_t>(i % 5), 3, false, 1};
      auto h = gen::random_horn(spec, rng);
      expect(horn::solve(h).has_value() == oracle::brute_solve(h).has_value(), "horn mod " + std::to_string(m));
      auto l = gen::random_lin2(spec, rng);
      expect(lin2::solve(l).has_value() == oracle::brute_solve(l).has_value(), "lin2 mod " + std::to_string(m));
      spec.allowed = 1 + i % m;
      auto t = gen::random_twosat(spec, rng);
      expect(twosat::solve(t).has_value() == oracle::brute_solve(t).has_value(), "2sat mod " + std::to_string(m));
    }
  }
  for (std::size_t d = 1; d <= 8; ++d) {
    expect(is_nand_rep_01(polyrep::nand_trivial(d, 4), d, 4), "nand_trivial d=" + std::to_string(d));
    expect(is_or_rep_pm1(polyrep::or_trivial_pm1(d, 3), d, 3), "or_trivial_pm1 d=" + std::to_string(d));
    expect(is_nand_rep_01(polyrep::nand_bbr(d, 6), d, 6), "nand_bbr d=" + std::to_string(d));
  }
  if (opt.json)
    out << json{{"format", 1}, {"command", "selftest"}, {"checks", checks}, {"failures", failures}}.dump() << '\n';
  else
    out << "selftest " << (failures ? "FAILED" : "passed") << ": " << checks - failures << "/" << checks << " checks\n";
  return failures ? kSelftestFailed : kOk;
}

int error_exit(const Error& e, const Options& opt, std::ostream& out, std::ostream& err) {
  const int code = e.code() == Errc::size_limit ? kSizeLimit : kInputError;
  if (opt.json) {
    json j{{"format", 1}, {"status", "ERROR"}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (e.line()) j["line"] = e.line();
    out << j.dump() << '\n';
  }
  err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Solvers and generators for CSPs with a global modular constraint", "modcsp"};
  app.require_subcommand(1, 1);
  std::function<int()> action;

  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", opt.json, "Machine-readable output"); };

  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  auto* rounds_opt = solve->add_option("--rounds", opt.rounds, "Round count R for the horn/lin2 searches");
  solve->add_flag("--auto", opt.auto_rounds, "Pick R from the modulus (default)")->excludes("--rounds");
  solve->add_flag("--randomized", opt.randomized, "Random sampling for lin2");
  solve->add_option("--trials", opt.trials, "Trial count T or auto")->needs("--randomized");
  solve->add_option("--seed", opt.seed, "Sampling seed");
  solve->add_option("--dim-bound-factor", opt.bound_factor, "Constant for the 2^l * odd dimension bound");
  solve->add_option("FILE", opt.file, "Instance file")->required();
  json_flag(solve);
  solve->callback([&] {
    opt.rounds_given = rounds_opt->count() > 0;
    action = [&] { return cmd_solve(out, opt); };
  });

  auto* orc = app.add_subcommand("oracle", "Brute-force an instance file (n <= 24)");
  orc->add_option("FILE", opt.file, "Instance file")->required();
  json_flag(orc);
  orc->callback([&] { action = [&] { return cmd_oracle(out, opt); }; });

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1, 1);
  auto* gen_random = gen->add_subcommand("random", "Random horn, lin2 or 2sat instance");
  gen_random->add_option("--kind", opt.kind, "horn, lin2 or 2sat");
  gen_random->add_option("--n", opt.n, "Variables");
  gen_random->add_option("-m,--constraints", opt.constraints, "Constraint records");
  gen_random->add_option("--moduli", opt.moduli, "Component moduli")->delimiter(',');
  gen_random->add_option("--allowed", opt.allowed, "Size of the allowed set S");
  gen_random->add_option("--max-arity", opt.max_arity, "Largest Horn body or equation length");
  gen_random->add_flag("--unit-weights", opt.unit_weights, "g_j(0) = 0, g_j(1) = 1");
  gen_random->add_option("--seed", opt.seed, "Generator seed");
  json_flag(gen_random);
  gen_random->callback([&] { action = [&] { return cmd_gen_random(out, opt); }; });

  auto* gen_had = gen->add_subcommand("hadamard", "lin2 instance over a direct sum of Hadamard codes");
  gen_had->add_option("--d", opt.d, "Code dimension");
  gen_had->add_option("--copies", opt.copies, "Number of copies");
  gen_had->add_option("--modulus", opt.modulus, "Side modulus");
  gen_had->add_option("--target", opt.target, "Target weight residue");
  json_flag(gen_had);
  gen_had->callback([&] { action = [&] { return cmd_gen_hadamard(out, opt); }; });

  for (const char* name : {"3sat-horn", "3sat-lin2"}) {
    const bool horn_gadget = std::string(name) == "3sat-horn";
    auto* g = gen->add_subcommand(name, horn_gadget ? "3-SAT to Horn gadget" : "3-SAT to lin2 gadget (odd modulus)");
    g->add_option("--t", opt.t, "Variables of a random formula");
    g->add_option("--clauses", opt.clauses, "Clauses of a random formula");
    g->add_option("--cnf", opt.cnf, "Read the formula from a DIMACS file instead");
    g->add_option("--modulus", opt.modulus, "Target modulus");
    g->add_option("--seed", opt.seed, "Generator seed");
    json_flag(g);
    g->callback([&, horn_gadget] {
      action = [&, horn_gadget] { return horn_gadget ? cmd_gen_3sat_horn(out, opt) : cmd_gen_3sat_lin2(out, opt); };
    });
  }

  auto* poly = app.add_subcommand("poly", "Polynomial representations");
  poly->require_subcommand(1, 1);
  auto* build = poly->add_subcommand("build", "Emit a construction");
  build->add_option("--kind", opt.construction, "nand-trivial, nand-bbr, nand-best, or-trivial or indicator");
  build->add_option("--d", opt.d, "Variables");
  build->add_option("--modulus", opt.modulus, "Modulus");
  build->add_option("--p", opt.prime, "Prime (indicator)");
  build->add_option("--l", opt.exponent, "Exponent (indicator)");
  build->add_option("--a", opt.residue, "Residue (indicator)");
  json_flag(build);
  build->callback([&] { action = [&] { return cmd_poly_build(out, opt); }; });

  auto* check = poly->add_subcommand("check", "Exhaustive representation check");
  check->add_option("--basis", opt.basis, "01 (NAND) or pm1 (OR)");
  check->add_option("--modulus", opt.modulus, "Modulus")->required();
  check->add_option("FILE", opt.file, "Polynomial file")->required();
  json_flag(check);
  check->callback([&] { action = [&] { return cmd_poly_check(out, opt); }; });

  auto* cov = poly->add_subcommand("cov", "Covering number");
  cov->add_option("--mode", opt.mode, "exact or greedy");
  cov->add_option("FILE", opt.file, "Polynomial file")->required();
  json_flag(cov);
  cov->callback([&] { action = [&] { return cmd_poly_cov(out, opt); }; });

  auto* mvf = poly->add_subcommand("mvf", "Matching vector family from an OR rep");
  mvf->add_option("--modulus", opt.modulus, "Modulus")->required();
  mvf->add_option("FILE", opt.file, "Polynomial file")->required();
  json_flag(mvf);
  mvf->callback([&] { action = [&] { return cmd_poly_mvf(out, opt); }; });

  auto* reduce = app.add_subcommand("reduce", "Instance transformations");
  reduce->require_subcommand(1, 1);
  auto* flatten = reduce->add_subcommand("flatten", "Product group to a single modulus");
  flatten->add_option("FILE", opt.file, "Instance file")->required();
  json_flag(flatten);
  flatten->callback([&] { action = [&] { return cmd_reduce_flatten(out, opt); }; });

  auto* self = app.add_subcommand("selftest", "Quick agreement check against the oracle");
  self->add_option("--seed", opt.seed, "Generator seed");
  json_flag(self);
  self->callback([&] { action = [&] { return cmd_selftest(out, opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kUsage;
  }

  try {
    return action();
  } catch (const Error& e) {
    return error_exit(e, opt, out, err);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace modcsp::cli
