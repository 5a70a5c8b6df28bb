// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "modcsp/error.hpp"
#include "modcsp/generate.hpp"
#include "modcsp/horn.hpp"
#include "modcsp/io.hpp"
#include "modcsp/lin2.hpp"
#include "modcsp/normalize.hpp"
#include "modcsp/number.hpp"
#include "modcsp/oracle.hpp"
#include "modcsp/poly.hpp"
#include "modcsp/polyrep.hpp"
#include "modcsp/reductions.hpp"
#include "modcsp/twosat.hpp"

namespace {

using namespace modcsp;
using Clock = std::chrono::steady_clock;

// Pinned thresholds.
constexpr std::size_t kOracleInstances = 600;  // per solver, >= 500 required
constexpr double kOracleSeconds = 120.0;
constexpr std::size_t kAmplifySpaces = 200;
constexpr std::size_t kRandomizedInstances = 100;
constexpr double kRandomizedRate = 2.0 / 3.0;
constexpr double kBinomialAlpha = 0.01;
constexpr std::size_t kRandomReps = 1000;
constexpr std::size_t kMvfMaxSize = 4096;
constexpr std::size_t kReductionInstances = 50;
constexpr double kBudgetC = 4.0;

int failures = 0;
double worst_budget_ratio = 0.0;
std::size_t budget_samples = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("criterion %2d %s  %s: %s\n", id, ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------

void oracle_equivalence() {
  const auto t0 = Clock::now();
  const std::vector<std::uint32_t> moduli{2, 3, 4, 5, 6, 8, 9, 12};
  std::vector<std::vector<std::uint32_t>> twosat_groups;
  for (auto m : moduli) twosat_groups.push_back({m});
  twosat_groups.push_back({2, 3});

  gen::Rng rng(20240601);
  std::size_t disagree[3] = {0, 0, 0}, bad_assign[3] = {0, 0, 0}, sat_count[3] = {0, 0, 0};
  for (std::size_t i = 0; i < kOracleInstances; ++i) {
    const auto n = static_cast<std::uint32_t>(1 + rng() % 10);
    const std::size_t m = rng() % (2 * n + 3);
    const bool unit = rng() % 3 == 0;
    const std::uint32_t mod = moduli[i % moduli.size()];
    const std::size_t allowed = 1 + rng() % std::min<std::uint32_t>(3, mod);

    {
      auto h = gen::random_horn({n, {mod}, m, 3, unit, allowed}, rng);
      horn::SolveConfig cfg;
      // AUTO needs a prime power; n rounds is complete for any modulus.
      if (!is_prime_power(mod)) cfg.rounds = Rounds::fixed(n);
      auto got = horn::solve(h, cfg);
      auto want = oracle::brute_solve(h);
      if (got.has_value() != want.has_value()) ++disagree[0];
      if (got && !h.satisfies(*got)) ++bad_assign[0];
      sat_count[0] += want.has_value();
    }
    {
      auto l = gen::random_lin2({n, {mod}, m / 2, 4, unit, allowed}, rng);
      auto got = lin2::solve(l);
      auto want = oracle::brute_solve(l);
      if (got.has_value() != want.has_value()) ++disagree[1];
      if (got && !l.satisfies(*got)) ++bad_assign[1];
      sat_count[1] += want.has_value();
    }
    {
      const auto& g = twosat_groups[i % twosat_groups.size()];
      const GroupSpec group(g);
      const std::size_t al = 1 + rng() % std::min<std::uint64_t>(3, group.order());
      auto t = gen::random_twosat({n, g, m, 2, unit && g.size() == 1, al}, rng);
      twosat::Stats stats;
      auto got = twosat::solve(t, &stats);
      auto want = oracle::brute_solve(t);
      if (got.has_value() != want.has_value()) ++disagree[2];
      if (got && !t.satisfies(*got)) ++bad_assign[2];
      sat_count[2] += want.has_value();
      const double k = static_cast<double>(group.order() - t.side.allowed().size());
      const double scale = (n + t.clauses.size()) * std::pow(std::max(1.0, double(n)), k);
      worst_budget_ratio = std::max(worst_budget_ratio, static_cast<double>(stats.calls) / scale);
      ++budget_samples;
    }
  }
  const double secs = seconds_since(t0);
  const std::size_t total_bad = disagree[0] + disagree[1] + disagree[2] + bad_assign[0] + bad_assign[1] + bad_assign[2];
  report(1, "oracle equivalence", total_bad == 0 && secs < kOracleSeconds,
         fmt("%zu instances per solver; disagreements horn/lin2/2sat = %zu/%zu/%zu; bad assignments %zu/%zu/%zu; "
             "sat %zu/%zu/%zu; %.1fs (limit %.0fs)",
             kOracleInstances, disagree[0], disagree[1], disagree[2], bad_assign[0], bad_assign[1], bad_assign[2],
             sat_count[0], sat_count[1], sat_count[2], secs, kOracleSeconds));
}

// ---------------------------------------------------------------------------

// Every set of at most four constraints drawn from the Horn clauses over n
// variables plus the negative units, with unit weights and every single
// target, for n <= 4. n = 5, 6 are sampled with arbitrary weights.
void horn_completeness() {
  const auto t0 = Clock::now();
  const std::vector<std::uint32_t> moduli{2, 3, 4, 5, 8, 9};
  std::size_t checked = 0, disagree = 0;

  auto check = [&](const HornInstance& h) {
    auto got = horn::solve(h);
    auto want = oracle::brute_solve(h);
    ++checked;
    if (got.has_value() != want.has_value() || (got && !h.satisfies(*got))) ++disagree;
  };

  for (std::uint32_t n = 1; n <= 4; ++n) {
    struct Item {
      bool is_unit;
      HornClause clause;
      UnitConstraint unit;
    };
    std::vector<Item> pool;
    for (std::uint32_t head = 0; head < n; ++head) {
      for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if (mask & (1U << head)) continue;
        HornClause c{head, {}};
        for (std::uint32_t v = 0; v < n; ++v)
          if (mask & (1U << v)) c.body.push_back(v);
        pool.push_back({false, c, {}});
      }
      pool.push_back({true, {}, {head, false}});
    }
    const std::size_t p = pool.size();
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      HornInstance base{n, {}, {}, ModularSideConstraint::unit(n, 2, {0})};
      for (auto idx : pick) {
        if (pool[idx].is_unit)
          base.units.push_back(pool[idx].unit);
        else
          base.clauses.push_back(pool[idx].clause);
      }
      for (auto mod : moduli) {
        for (std::uint32_t a = 0; a < mod; ++a) {
          base.side = ModularSideConstraint::unit(n, mod, {a});
          check(base);
        }
      }
      if (pick.size() == 4) return;
      for (std::size_t i = start; i < p; ++i) {
        pick.push_back(i);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }
  const std::size_t exhaustive = checked;

  gen::Rng rng(77);
  for (std::uint32_t n = 5; n <= 6; ++n)
    for (auto mod : moduli)
      for (int i = 0; i < 2000; ++i)
        check(gen::random_horn({n, {mod}, static_cast<std::size_t>(rng() % 5), 5, i % 2 == 0,
                                static_cast<std::size_t>(1 + rng() % 2)},
                               rng));

  report(2, "prime-power Horn completeness", disagree == 0,
         fmt("%zu exhaustive (n<=4, <=4 constraints, all targets) + %zu sampled (n=5,6); %zu disagreements; %.1fs",
             exhaustive, checked - exhaustive, disagree, seconds_since(t0)));
}

// ---------------------------------------------------------------------------

void dimension_bounds() {
  const auto t0 = Clock::now();
  std::size_t pairs = 0, violations = 0;
  std::string worst;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::uint32_t mod : {2U, 3U, 4U, 5U, 6U, 8U, 9U}) {
      const auto found = oracle::search_max_unique_dimension(n, mod);
      const auto bound = lin2::dimension_bound(n, mod).bound;
      ++pairs;
      if (found > bound) {
        ++violations;
        worst += fmt(" (n=%zu,M=%u: %zu>%zu)", n, mod, found, bound);
      }
    }
  }
  bool exact2 = true;
  for (std::size_t n = 1; n <= 6; ++n) {
    BitVector e1(n);
    e1.set(0, true);
    AffineSubspace line(BitVector(n), {e1});
    exact2 = exact2 && oracle::search_max_unique_dimension(n, 2) == 1 && oracle::count_solutions(line, 0, 2) == 1 &&
             lin2::dimension_bound(n, 2).bound == 1;
  }
  report(3, "dimension bounds", violations == 0 && exact2,
         fmt("%zu (n,M) pairs, %zu violations%s; D(n,2)=1 with line witness for n<=6: %s; %.1fs", pairs, violations,
             worst.c_str(), exact2 ? "yes" : "no", seconds_since(t0)));
}

// ---------------------------------------------------------------------------

void amplification() {
  gen::Rng rng(4242);
  std::size_t counts = 0, violations = 0;
  for (std::size_t i = 0; i < kAmplifySpaces; ++i) {
    const std::size_t n = 1 + rng() % 12;
    const std::size_t dim = rng() % (std::min<std::size_t>(n, 10) + 1);
    auto space = gen::random_subspace(n, dim, rng);
    for (std::uint32_t mod : {2U, 3U, 4U, 5U, 6U, 7U, 8U, 9U, 12U}) {
      const auto bound = lin2::dimension_bound(n, mod).bound;
      for (std::uint32_t a = 0; a < mod; ++a) {
        const auto c = oracle::count_solutions(space, a, mod);
        if (c == 0) continue;
        ++counts;
        // c >= 2^dim / 2^(bound + 1)
        if (bound + 1 < dim && (c << (bound + 1)) < (std::uint64_t{1} << dim)) ++violations;
      }
    }
  }
  report(4, "amplification", violations == 0,
         fmt("%zu subspaces, %zu nonzero counts checked, %zu violations", kAmplifySpaces, counts, violations));
}

// ---------------------------------------------------------------------------

// P(X <= k) for X ~ Bin(n, p).
double binomial_cdf(std::size_t k, std::size_t n, double p) {
  double sum = 0.0;
  for (std::size_t i = 0; i <= k; ++i) {
    const double log_term = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) + i * std::log(p) +
                            (n - i) * std::log1p(-p);
    sum += std::exp(log_term);
  }
  return std::min(1.0, sum);
}

void randomized_lin2() {
  const auto t0 = Clock::now();
  gen::Rng rng(31337);
  std::size_t sat_seen = 0, successes = 0, unsat_seen = 0, false_pos = 0, sampled = 0;
  while (sat_seen < kRandomizedInstances || unsat_seen < kRandomizedInstances) {
    const auto n = static_cast<std::uint32_t>(6 + rng() % 9);
    auto l = gen::random_lin2({n, {3}, static_cast<std::size_t>(rng() % 4), 4, rng() % 2 == 0, 1}, rng);
    const bool sat = oracle::brute_solve(l).has_value();
    if (sat && sat_seen >= kRandomizedInstances) continue;
    if (!sat && unsat_seen >= kRandomizedInstances) continue;
    lin2::SolveConfig cfg;
    cfg.randomized = true;
    cfg.seed = rng();
    auto got = lin2::solve(l, cfg);
    if (sat) {
      ++sat_seen;
      successes += got.has_value();
      auto norm = normalize_unit_weights(l);
      auto space = lin2::gaussian_basis(norm);
      if (space && lin2::dimension_bound(norm.n, 3).bound + 2 < space->dim()) ++sampled;
    } else {
      ++unsat_seen;
      false_pos += got.has_value();
    }
  }
  const double rate = static_cast<double>(successes) / kRandomizedInstances;
  // One-sided test of H0: rate >= 2/3; reject when the lower tail is below alpha.
  const double p_value = binomial_cdf(successes, kRandomizedInstances, kRandomizedRate);
  report(5, "randomized LIN-2", p_value >= kBinomialAlpha && false_pos == 0,
         fmt("%zu/%zu satisfiable solved (rate %.3f, P[X<=k | p=2/3] = %.3g, alpha %.2f; %zu used sampling); "
             "%zu unsatisfiable, %zu false positives; %.1fs",
             successes, kRandomizedInstances, rate, p_value, kBinomialAlpha, sampled, unsat_seen, false_pos,
             seconds_since(t0)));
}

// ---------------------------------------------------------------------------

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

void representation_validity() {
  const auto t0 = Clock::now();
  std::size_t built = 0, bad = 0;
  std::string first_bad;
  auto note = [&](bool ok, const char* what, std::size_t d, std::uint32_t m) {
    ++built;
    if (!ok) {
      ++bad;
      if (first_bad.empty()) first_bad = fmt(" first: %s d=%zu M=%u", what, d, m);
    }
  };
  for (std::uint32_t m : {2U, 3U, 4U, 5U, 6U, 9U, 10U, 15U}) {
    for (std::size_t d = 1; d <= 16; ++d) {
      auto nt = polyrep::nand_trivial(d, m);
      note(is_nand_rep_01(nt, d, m) && nt.degree() == ceil_div(d, m - 1), "nand_trivial", d, m);
      if (m % 2 == 1) {
        auto ot = polyrep::or_trivial_pm1(d, m);
        note(is_or_rep_pm1(ot, d, m) && ot.degree() == ceil_div(d, m - 1), "or_trivial_pm1", d, m);
      }
      if (factorize(m).size() >= 2) {
        auto plan = polyrep::bbr_plan(d, m);
        std::size_t cap = 0;
        for (const auto& pp : plan.prime_powers) cap = std::max<std::size_t>(cap, pp.value() - 1);
        auto bbr = polyrep::nand_bbr(d, m);
        note(is_nand_rep_01(bbr, d, m) && bbr.degree() <= cap, "nand_bbr", d, m);
      }
    }
  }
  report(6, "representation validity", bad == 0,
         fmt("%zu constructions checked on the full cube, %zu failed%s; %.1fs", built, bad, first_bad.c_str(),
             seconds_since(t0)));
}

// ---------------------------------------------------------------------------

void covering_and_sparsity() {
  const auto t0 = Clock::now();
  const std::vector<std::uint32_t> prime_powers{2, 3, 4, 5, 7, 8, 9};
  std::size_t emitted = 0, cov_bad = 0;
  for (auto m : prime_powers) {
    for (std::size_t d = 1; d <= 16; ++d) {
      for (const auto& p : {polyrep::nand_trivial(d, m), polyrep::nand_best(d, m)}) {
        ++emitted;
        if (polyrep::covering_number(p, polyrep::CoverMode::exact) > m - 1) ++cov_bad;
      }
    }
  }
  gen::Rng rng(999);
  std::size_t random_valid = 0;
  for (std::size_t i = 0; i < kRandomReps; ++i) {
    const std::uint32_t m = prime_powers[i % prime_powers.size()];
    const std::size_t d = 1 + rng() % 8;
    auto p = polyrep::random_nand_rep_01(d, m, rng);
    if (!is_nand_rep_01(p, d, m)) continue;
    ++random_valid;
    if (polyrep::covering_number(p, polyrep::CoverMode::exact) > m - 1) ++cov_bad;
  }

  std::size_t or_reps = 0, sparse_bad = 0;
  auto sparsity_ok = [&](const IntPoly& p, std::size_t d, std::uint32_t m) {
    // d = 0 is the zero polynomial on a single point; the bound starts at d = 1.
    if (d == 0 || !is_or_rep_pm1(p, d, m)) return;
    ++or_reps;
    if (static_cast<double>(p.sparsity()) < std::pow(2.0, static_cast<double>(d) / (m - 1)) - 1e-9) ++sparse_bad;
  };
  for (std::uint32_t m : {3U, 5U, 7U, 9U}) {
    for (std::size_t d = 1; d <= 16; ++d) sparsity_ok(polyrep::or_trivial_pm1(d, m), d, m);
    for (int i = 0; i < 100; ++i) {
      const std::size_t d = 1 + rng() % 10;
      sparsity_ok(polyrep::random_or_rep_pm1(d, m, rng), d, m);
    }
    for (int i = 0; i < 50; ++i) {
      const std::size_t n = 2 + rng() % 8;
      auto space = gen::random_subspace(n, rng() % (n + 1), rng);
      const std::uint32_t target = space.offset().popcount() % m;
      if (oracle::count_solutions(space, target, m) != 1) continue;
      auto p = polyrep::unique_point_subspace_to_or_poly(space, target, m);
      sparsity_ok(p, p.nvars(), m);
    }
  }
  report(7, "covering and sparsity bounds", cov_bad == 0 && sparse_bad == 0 && random_valid == kRandomReps,
         fmt("%zu emitted + %zu/%zu random valid NAND reps, %zu cover violations; %zu OR reps, %zu sparsity "
             "violations; %.1fs",
             emitted, random_valid, kRandomReps, cov_bad, or_reps, sparse_bad, seconds_since(t0)));
}

// ---------------------------------------------------------------------------

void matching_vectors() {
  const auto t0 = Clock::now();
  std::size_t families = 0, bad = 0, largest = 0;
  gen::Rng rng(5150);
  for (std::uint32_t m : {3U, 5U, 7U, 9U, 15U}) {
    for (std::size_t d = 1; d <= polyrep::kMaxMvfVars; ++d) {
      std::vector<IntPoly> reps{polyrep::or_trivial_pm1(d, m)};
      if (d <= 8 && is_prime_power(m)) reps.push_back(polyrep::random_or_rep_pm1(d, m, rng));
      for (const auto& p : reps) {
        if (!is_or_rep_pm1(p, d, m)) continue;
        auto family = polyrep::mvf_from_or_poly(p, m);
        if (family.size() > kMvfMaxSize) continue;
        ++families;
        largest = std::max(largest, family.size());
        if (family.size() != (std::size_t{1} << d) || !family.verify()) ++bad;
      }
    }
  }
  report(8, "matching vector families", bad == 0,
         fmt("%zu families verified on all N^2 pairs (largest N = %zu), %zu failed; %.1fs", families, largest, bad,
             seconds_since(t0)));
}

// ---------------------------------------------------------------------------

void reductions_agree() {
  const auto t0 = Clock::now();
  gen::Rng rng(8080);
  std::size_t done[4] = {0, 0, 0, 0}, bad[4] = {0, 0, 0, 0};

  const std::vector<std::vector<std::uint32_t>> horn_groups{{2, 3}, {4, 3}, {2, 5}, {3, 4}};
  for (std::size_t i = 0; done[0] < kReductionInstances; ++i) {
    const auto& g = horn_groups[i % horn_groups.size()];
    auto h = gen::random_horn({static_cast<std::uint32_t>(2 + rng() % 5), g, rng() % 6, 3, false, 1}, rng);
    const auto& target = h.side.allowed().front();
    auto flat = reductions::flatten_horn(h, target);
    if (flat.n > oracle::kMaxVars) continue;
    ++done[0];
    auto a = oracle::brute_solve(flat);
    auto b = oracle::brute_solve(h);
    if (a.has_value() != b.has_value() || (a && !h.satisfies(restrict_to(*a, h.n)))) ++bad[0];
  }

  const std::vector<std::vector<std::uint32_t>> lin2_groups{{3, 5}, {2, 3}, {3, 7}, {5, 3}};
  for (std::size_t i = 0; done[1] < kReductionInstances; ++i) {
    const auto& g = lin2_groups[i % lin2_groups.size()];
    auto l = gen::random_lin2({static_cast<std::uint32_t>(2 + rng() % 3), g, rng() % 3, 3, false, 1}, rng);
    const auto& target = l.side.allowed().front();
    auto flat = reductions::flatten_lin2(l, target);
    if (flat.n > oracle::kMaxVars) continue;
    ++done[1];
    auto a = oracle::brute_solve(flat);
    auto b = oracle::brute_solve(l);
    if (a.has_value() != b.has_value() || (a && !l.satisfies(restrict_to(*a, l.n)))) ++bad[1];
  }

  for (std::size_t i = 0; done[2] < kReductionInstances; ++i) {
    const std::uint32_t m = std::vector<std::uint32_t>{4, 6, 8, 9, 12}[i % 5];
    auto phi = gen::random_3sat(static_cast<std::uint32_t>(2 + rng() % 4), 1 + rng() % 6, rng);
    std::optional<HornInstance> h;
    try {
      h = reductions::gadget_3sat_to_horn(phi, m, polyrep::nand_best(phi.clauses.size(), m));
    } catch (const Error& e) {
      if (e.code() == Errc::size_limit) continue;
      throw;
    }
    if (h->n > oracle::kMaxVars) continue;
    ++done[2];
    auto a = oracle::brute_solve(*h);
    auto b = oracle::brute_solve(phi);
    if (a.has_value() != b.has_value() || (a && !phi.satisfied_by(restrict_to(*a, phi.t)))) ++bad[2];
  }

  for (std::size_t i = 0; done[3] < kReductionInstances; ++i) {
    const std::uint32_t m = std::vector<std::uint32_t>{3, 5, 9, 15}[i % 4];
    auto phi = gen::random_3sat(static_cast<std::uint32_t>(2 + rng() % 4), 1 + rng() % 6, rng);
    std::optional<Lin2Instance> l;
    try {
      l = reductions::gadget_3sat_to_lin2(phi, m, polyrep::or_trivial_pm1(phi.clauses.size(), m));
    } catch (const Error& e) {
      if (e.code() == Errc::size_limit) continue;
      throw;
    }
    if (l->n > oracle::kMaxVars) continue;
    ++done[3];
    // Monomial coordinates: only the verdict carries over.
    auto a = oracle::brute_solve(*l);
    auto b = oracle::brute_solve(phi);
    if (a.has_value() != b.has_value()) ++bad[3];
  }

  report(9, "reduction equisatisfiability", bad[0] + bad[1] + bad[2] + bad[3] == 0,
         fmt("%zu each; mismatches flatten_horn/flatten_lin2/gadget_horn/gadget_lin2 = %zu/%zu/%zu/%zu; %.1fs",
             kReductionInstances, bad[0], bad[1], bad[2], bad[3], seconds_since(t0)));
}

// ---------------------------------------------------------------------------

void twosat_budget() {
  report(10, "2-SAT recursion budget", budget_samples > 0 && worst_budget_ratio <= kBudgetC,
         fmt("max calls / ((n+m) * n^(|G|-|S|)) = %.3f over %zu instances, C = %.1f", worst_budget_ratio,
             budget_samples, kBudgetC));
}

// ---------------------------------------------------------------------------

struct CliResult {
  int code;
  std::string out;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "modcsp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

void cli_contract() {
  const std::string dir = std::string(MODCSP_FIXTURE_DIR) + "/";
  auto f = [&](const char* name) { return dir + name; };
  struct Case {
    int code;
    std::vector<std::string> args;
  };
  const std::vector<Case> cases{
      {10, {"solve", "--auto", f("horn_sat.txt")}},
      {20, {"solve", f("horn_unsat.txt")}},
      {10, {"solve", f("lin2_sat.txt")}},
      {20, {"solve", f("lin2_unsat.txt")}},
      {10, {"solve", "--randomized", "--trials", "64", "--seed", "7", f("lin2_sat.txt")}},
      {10, {"solve", f("twosat_sat.txt")}},
      {20, {"solve", f("twosat_unsat.txt")}},
      {10, {"solve", "--json", f("lin2_two_targets.txt")}},
      {10, {"oracle", f("horn_sat.txt")}},
      {20, {"oracle", f("twosat_unsat.txt")}},
      {2, {"solve", f("horn_mod6.txt")}},
      {10, {"solve", "--rounds", "3", f("horn_mod6.txt")}},
      {2, {"solve", "--rounds", "-1", f("horn_sat.txt")}},
      {2, {"solve", f("bad_parse.txt")}},
      {2, {"solve", f("bad_weights.txt")}},
      {2, {"solve", f("bad_index.txt")}},
      {2, {"solve", f("missing_file.txt")}},
      {2, {"reduce", "flatten", f("lin2_two_targets.txt")}},
      {3, {"oracle", f("horn_n30.txt")}},
      {1, {"solve", "--no-such-flag", f("horn_sat.txt")}},
      {1, {"solve"}},
      {1, {"frobnicate"}},
      {0, {"--help"}},
      {0, {"poly", "check", "--modulus", "2", f("nand_d2.poly")}},
      {0, {"poly", "cov", f("nand_d2.poly")}},
      {0, {"poly", "mvf", "--modulus", "3", f("or_d2_mod3.poly")}},
      {2, {"poly", "mvf", "--modulus", "3", f("not_a_rep.poly")}},
      {0, {"gen", "3sat-horn", "--cnf", f("small.cnf"), "--modulus", "4"}},
      {2, {"gen", "3sat-lin2", "--cnf", f("small.cnf"), "--modulus", "4"}},
      {0, {"selftest"}},
  };
  std::size_t bad = 0;
  std::string first;
  for (const auto& c : cases) {
    auto r = run_cli(c.args);
    if (r.code != c.code) {
      ++bad;
      if (first.empty()) first = fmt(" first: %s -> %d", c.args.front().c_str(), r.code);
    }
  }
  // Canonical fixture survives parse, flatten and serialize unchanged.
  auto rt = run_cli({"reduce", "flatten", f("horn_sat.txt")});
  const bool round_trip = rt.code == 0 && rt.out == io::read_file(f("horn_sat.txt"));
  // Every instance fixture re-parses to itself.
  std::size_t reparsed = 0;
  bool reparse_ok = true;
  for (const char* name : {"horn_sat.txt", "horn_unsat.txt", "horn_mod6.txt", "lin2_sat.txt", "lin2_unsat.txt",
                           "twosat_sat.txt", "twosat_unsat.txt", "lin2_two_targets.txt"}) {
    auto file = io::parse_instance(io::read_file(f(name)));
    auto back = io::parse_instance(io::serialize(file));
    reparse_ok = reparse_ok && back.instance == file.instance && back.comments == file.comments;
    ++reparsed;
  }
  report(11, "CLI contract", bad == 0 && round_trip && reparse_ok,
         fmt("%zu exit-code cases, %zu wrong%s; flatten round-trip %s; %zu fixtures re-parse %s", cases.size(), bad,
             first.c_str(), round_trip ? "exact" : "MISMATCH", reparsed, reparse_ok ? "identically" : "with differences"));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  oracle_equivalence();
  horn_completeness();
  dimension_bounds();
  amplification();
  randomized_lin2();
  representation_validity();
  covering_and_sparsity();
  matching_vectors();
  reductions_agree();
  twosat_budget();
  cli_contract();
  std::printf("%d of 11 criteria failed; total %.1fs\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
