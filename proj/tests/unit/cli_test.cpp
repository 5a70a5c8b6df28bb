#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "modcsp/io.hpp"
#include "modcsp/oracle.hpp"

namespace modcsp {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "modcsp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(MODCSP_FIXTURE_DIR) + "/" + name; }

std::string value_line(const std::string& out, char tag) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line))
    if (line.size() > 2 && line[0] == tag && line[1] == ' ') return line.substr(2);
  return {};
}

TEST(Cli, SolveSatReverifies) {
  auto r = run({"solve", "--auto", fixture("horn_sat.txt")});
  EXPECT_EQ(r.code, cli::kSat);
  EXPECT_NE(r.out.find("s SATISFIABLE"), std::string::npos);
  auto file = io::parse_instance(io::read_file(fixture("horn_sat.txt")));
  const auto& h = std::get<HornInstance>(file.instance);
  EXPECT_TRUE(h.satisfies(BitVector::from_string(value_line(r.out, 'v'))));
  EXPECT_EQ(value_line(r.out, 'r'), "1");
  EXPECT_EQ(r.out.rfind("c ", 0), 0U);
}

TEST(Cli, SolveUnsat) {
  auto r = run({"solve", fixture("twosat_unsat.txt")});
  EXPECT_EQ(r.code, cli::kUnsat);
  EXPECT_NE(r.out.find("s UNSATISFIABLE"), std::string::npos);
}

TEST(Cli, JsonFormat) {
  auto r = run({"solve", "--json", fixture("lin2_sat.txt")});
  EXPECT_EQ(r.code, cli::kSat);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["format"], 1);
  EXPECT_EQ(j["status"], "SATISFIABLE");
  EXPECT_EQ(j["kind"], "lin2");
  EXPECT_EQ(j["assignment"].get<std::string>().size(), 3U);
}

TEST(Cli, JsonError) {
  auto r = run({"solve", "--json", fixture("bad_index.txt")});
  EXPECT_EQ(r.code, cli::kInputError);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "ERROR");
  EXPECT_EQ(j["line"], 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"solve", "--bogus", fixture("horn_sat.txt")}).code, cli::kUsage);
  auto r = run({});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("solve"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

TEST(Cli, InputAndSizeErrors) {
  EXPECT_EQ(run({"solve", fixture("horn_mod6.txt")}).code, cli::kInputError);
  EXPECT_EQ(run({"solve", "--rounds", "3", fixture("horn_mod6.txt")}).code, cli::kSat);
  EXPECT_EQ(run({"solve", fixture("bad_parse.txt")}).code, cli::kInputError);
  EXPECT_EQ(run({"oracle", fixture("horn_n30.txt")}).code, cli::kSizeLimit);
}

TEST(Cli, SolveAndOracleAgreeOnGenerated) {
  for (const char* kind : {"horn", "lin2", "2sat"}) {
    for (int seed = 0; seed < 15; ++seed) {
      auto g = run({"gen", "random", "--kind", kind, "--n", "7", "--moduli", seed % 2 ? "4" : "2,3", "--constraints", "5",
                    "--seed", std::to_string(seed)});
      ASSERT_EQ(g.code, cli::kOk);
      auto file = io::parse_instance(g.out);
      const bool sat = std::visit([](const auto& i) { return oracle::brute_solve(i).has_value(); }, file.instance);
      const auto path = ::testing::TempDir() + "cli_gen.txt";
      {
        std::ofstream f(path);
        f << g.out;
      }
      auto s = run({"solve", "--rounds", "7", path});
      EXPECT_EQ(s.code, sat ? cli::kSat : cli::kUnsat) << kind << " seed " << seed;
    }
  }
}

TEST(Cli, PolyCommands) {
  auto b = run({"poly", "build", "--kind", "nand-trivial", "--d", "4", "--modulus", "3"});
  EXPECT_EQ(b.code, cli::kOk);
  EXPECT_EQ(io::parse_poly(b.out).degree(), 2U);
  EXPECT_EQ(run({"poly", "check", "--modulus", "3", fixture("nand_d2.poly")}).out, "valid\n");
  EXPECT_EQ(run({"poly", "check", "--modulus", "3", fixture("not_a_rep.poly")}).out, "invalid\n");
  auto cov = run({"poly", "cov", "--json", fixture("or_d2_mod3.poly")});
  EXPECT_EQ(nlohmann::json::parse(cov.out)["cov"], 2);
  auto m = run({"poly", "mvf", "--modulus", "3", fixture("or_d2_mod3.poly")});
  EXPECT_EQ(m.out, "mvf size 4 rank 3 verified\n");
}

TEST(Cli, Selftest) {
  auto r = run({"selftest"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("passed"), std::string::npos);
}

}  // namespace
}  // namespace modcsp
