#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "generators.hpp"
#include "pctl_bsat/checker.hpp"
#include "pctl_bsat/enumerate.hpp"
#include "pctl_bsat/parser.hpp"
#include "pctl_bsat/process.hpp"
#include "pctl_bsat/solver.hpp"

using namespace pctl;
namespace fs = std::filesystem;

namespace {

std::string solver() {
  const char* env = std::getenv("PCTL_BSAT_SOLVER");
  return env && *env ? env : PCTL_TEST_SOLVER;
}

SearchConfig search(std::size_t max_states, std::uint32_t d) {
  SearchConfig c;
  c.max_states = max_states;
  c.denominator = d;
  c.solver_command = solver();
  c.timeout = std::chrono::duration<double>(120);
  return c;
}

EncodingConfig enc(std::size_t b, std::uint32_t d) {
  EncodingConfig c;
  c.states = b;
  c.denominator = d;
  return c;
}

// Writes an executable shell script standing in for a solver.
class FakeSolver {
 public:
  explicit FakeSolver(const std::string& body) {
    path_ = fs::temp_directory_path() /
            ("fake-solver-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++) + ".sh");
    std::ofstream(path_) << "#!/bin/sh\n" << body << "\n";
    fs::permissions(path_, fs::perms::owner_all);
  }
  ~FakeSolver() { fs::remove(path_); }
  std::string command() const { return path_.string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

}  // namespace

TEST(ParseSolverOutput, StatusForms) {
  EXPECT_TRUE(std::holds_alternative<verdict::Unsat>(parse_solver_output("unsat\n", 0)));
  const auto u = parse_solver_output("unknown\n", 0);
  ASSERT_TRUE(std::holds_alternative<verdict::Unknown>(u));
  EXPECT_FALSE(std::get<verdict::Unknown>(u).timed_out);
  const auto s = parse_solver_output("sat\n((n_0_0 2)\n (l_0_a true))\n", 0);
  ASSERT_TRUE(std::holds_alternative<verdict::Sat>(s));
  EXPECT_EQ(std::get<verdict::Sat>(s).assignment, "((n_0_0 2) (l_0_a true))");
  EXPECT_EQ(verdict_name(s), "sat");
  EXPECT_EQ(verdict_name(u), "unknown");
  EXPECT_EQ(verdict_name(verdict::Unknown{true, ""}), "timeout");
}

TEST(ParseSolverOutput, Errors) {
  EXPECT_TRUE(std::holds_alternative<verdict::SolverError>(parse_solver_output("", 1)));
  EXPECT_TRUE(std::holds_alternative<verdict::SolverError>(parse_solver_output("sat\n", 0)));
  EXPECT_TRUE(std::holds_alternative<verdict::SolverError>(parse_solver_output("((oops", 0)));
  const auto e = parse_solver_output("sat\n(error \"model not available\")\n", 1, "details");
  ASSERT_TRUE(std::holds_alternative<verdict::SolverError>(e));
  EXPECT_EQ(std::get<verdict::SolverError>(e).stderr_text, "details");
  EXPECT_EQ(verdict_name(e), "error");
}

TEST(SolveScript, ForcedModel) {
  const Encoding e = encode(parse("a"), enc(1, 2));
  const auto v = solve_script(e.script, search(1, 2));
  ASSERT_TRUE(std::holds_alternative<verdict::Sat>(v)) << verdict_name(v);
  const Dtmc m = decode_model(std::get<verdict::Sat>(v).assignment, e.variables, enc(1, 2));
  EXPECT_EQ(m.probability(0, 0), 1);
  EXPECT_TRUE(m.has_label(0, "a"));
}

TEST(SolveScript, Contradiction) {
  const auto v = solve_script(encode(parse("a & !a"), enc(1, 1)).script, search(1, 1));
  EXPECT_TRUE(std::holds_alternative<verdict::Unsat>(v)) << verdict_name(v);
}

TEST(SolveScript, MissingExecutable) {
  SearchConfig c = search(1, 1);
  c.solver_command = "/nonexistent/path/to/solver -in";
  const auto v = solve_script(encode(parse("a"), enc(1, 1)).script, c);
  EXPECT_TRUE(std::holds_alternative<verdict::SolverError>(v));
}

TEST(SolveScript, FilePlaceholder) {
  SearchConfig c = search(1, 1);
  c.solver_command = split_command(solver()).front() + " {file}";
  const auto v = solve_script(encode(parse("a"), enc(1, 1)).script, c);
  EXPECT_TRUE(std::holds_alternative<verdict::Sat>(v)) << verdict_name(v);
}

TEST(SolveScript, TimeoutHonoredWithinTwice) {
  SearchConfig c = search(1, 1);
  c.solver_command = "sh -c 'sleep 30'";
  c.timeout = std::chrono::duration<double>(1.0);
  const auto start = std::chrono::steady_clock::now();
  const auto v = solve_script(encode(parse("a"), enc(1, 1)).script, c);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  ASSERT_TRUE(std::holds_alternative<verdict::Unknown>(v)) << verdict_name(v);
  EXPECT_TRUE(std::get<verdict::Unknown>(v).timed_out);
  EXPECT_LT(elapsed.count(), 2.0);
}

TEST(SolveScript, NonzeroExitIsError) {
  FakeSolver fake("echo boom >&2; exit 7");
  SearchConfig c = search(1, 1);
  c.solver_command = fake.command();
  const auto v = solve_script(encode(parse("a"), enc(1, 1)).script, c);
  ASSERT_TRUE(std::holds_alternative<verdict::SolverError>(v));
  EXPECT_NE(std::get<verdict::SolverError>(v).stderr_text.find("boom"), std::string::npos);
  EXPECT_THROW(bounded_search(parse("a"), c), SolverFailure);
}

TEST(BoundedSearch, SingleAtom) {
  const auto r = bounded_search(parse("a"), search(3, 4));
  const auto* found = std::get_if<outcome::ModelFound>(&r.outcome);
  ASSERT_TRUE(found);
  EXPECT_EQ(found->states, 1u);
  EXPECT_TRUE(found->verified);
  EXPECT_TRUE(found->model.has_label(0, "a"));
  EXPECT_EQ(found->model.probability(0, 0), 1);
  ASSERT_EQ(r.bounds.size(), 1u);
  EXPECT_EQ(outcome_name(r), "ModelFound");
}

TEST(BoundedSearch, AlternatingCycle) {
  const Formula f = parse("a & P>=1[X (!a & P>=1[X a])]");
  const auto r = bounded_search(f, search(3, 4));
  const auto* found = std::get_if<outcome::ModelFound>(&r.outcome);
  ASSERT_TRUE(found);
  EXPECT_EQ(found->states, 2u);
  ASSERT_EQ(r.bounds.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<verdict::Unsat>(r.bounds[0].verdict));
  EXPECT_EQ(found->model.probability(0, 1), 1);
  EXPECT_EQ(found->model.probability(1, 0), 1);
  EXPECT_TRUE(check(found->model, f));
}

TEST(BoundedSearch, UnsatisfiableThresholds) {
  const auto r = bounded_search(parse("P>1/2[X a] & P>1/2[X !a]"), search(3, 4));
  const auto* none = std::get_if<outcome::NoModelUpTo>(&r.outcome);
  ASSERT_TRUE(none);
  EXPECT_EQ(none->max_states, 3u);
  ASSERT_EQ(r.bounds.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(r.bounds[k].states, k + 1);
}

TEST(BoundedSearch, WrongModelTripsVerification) {
  FakeSolver fake("cat > /dev/null; echo sat; echo '((n_0_0 4) (l_0_a false))'");
  SearchConfig c = search(1, 4);
  c.solver_command = fake.command();
  EXPECT_THROW(bounded_search(parse("a"), c), InternalSoundnessError);
  c.verify = false;
  const auto r = bounded_search(parse("a"), c);
  const auto* found = std::get_if<outcome::ModelFound>(&r.outcome);
  ASSERT_TRUE(found);
  EXPECT_FALSE(found->verified);
}

TEST(BoundedSearch, UnknownDoesNotStopSweep) {
  FakeSolver fake(
      "if grep -q n_1_1; then echo sat; echo '((n_0_0 4) (n_0_1 0) (n_1_0 0) (n_1_1 4))'; "
      "else echo unknown; fi");
  SearchConfig c = search(2, 4);
  c.solver_command = fake.command();
  const auto r = bounded_search(parse("true"), c);
  const auto* found = std::get_if<outcome::ModelFound>(&r.outcome);
  ASSERT_TRUE(found);
  EXPECT_EQ(found->states, 2u);
  EXPECT_EQ(verdict_name(r.bounds[0].verdict), "unknown");

  FakeSolver never("cat > /dev/null; echo unknown");
  c.solver_command = never.command();
  const auto inconclusive = bounded_search(parse("true"), c);
  const auto* inc = std::get_if<outcome::Inconclusive>(&inconclusive.outcome);
  ASSERT_TRUE(inc);
  EXPECT_EQ(inc->first_unknown, 1u);
  EXPECT_EQ(inconclusive.bounds.size(), 2u);
}

TEST(BoundedSearch, RecordsScriptSize) {
  const auto r = bounded_search(parse("P>0[a U b]"), search(2, 2));
  for (const auto& rec : r.bounds) {
    const auto script = encode(parse("P>0[a U b]"), enc(rec.states, 2)).script;
    EXPECT_EQ(rec.script_bytes, script.text().size());
    EXPECT_EQ(rec.assertions, script.assertion_count());
    EXPECT_GE(rec.seconds, 0.0);
  }
}

// Solver-side until values agree exactly with the checker on the decoded
// model, so the encoding pins the least fixed point.
TEST(SolverProperty, UntilValuesAreLeastFixedPoint) {
  const char* formulas[] = {
      "P>0[F a] & !a",
      "P<=1/2[F a] & P>0[F a]",
      "P>=1/2[!b U a] & P<1[F a] & !a",
      "P>=1/4[G a] & P<1[G a]",
      "P=1/2[F P>=1[G b]] & !b",
      "P>0[a U b] & P<1[a U b] & P>=1/2[X a]",
  };
  for (const char* text : formulas) {
    const Formula f = parse(text);
    for (std::size_t b = 2; b <= 3; ++b) {
      EncodingConfig c = enc(b, 4);
      c.query_probabilities = true;
      const Encoding e = encode(f, c);
      const auto v = solve_script(e.script, search(b, 4));
      if (!std::holds_alternative<verdict::Sat>(v)) continue;
      const auto& raw = std::get<verdict::Sat>(v).assignment;
      const Dtmc m = decode_model(raw, e.variables, c);
      ASSERT_TRUE(check(m, f)) << text;
      const auto values = decode_values(raw, e.variables);
      std::size_t compared = 0;
      for (const auto& [key, value] : values) {
        const auto& [state, k] = key;
        const auto* prob = e.variables.closure[k].as<ast::Prob>();
        ASSERT_TRUE(prob);
        const ProbVector exact = path_probabilities(m, prob->path);
        ASSERT_EQ(value, exact(static_cast<Eigen::Index>(state)))
            << text << " state " << state << " formula " << pretty(e.variables.closure[k]);
        ++compared;
      }
      EXPECT_GT(compared, 0u);
      const auto sats = decode_sat(raw, e.variables);
      const auto sets = sat_sets(m, e.variables.closure);
      for (const auto& [key, value] : sats) {
        ASSERT_EQ(value, sets[key.second].contains(key.first)) << text;
      }
    }
  }
}

TEST(SolverProperty, MinimalityAgainstEnumeration) {
  const auto corpus = gen::DeskCorpus(3).generate(40);
  for (const auto& f : corpus) {
    for (std::uint32_t d = 1; d <= 2; ++d) {
      const auto r = bounded_search(f, search(2, d));
      const auto* found = std::get_if<outcome::ModelFound>(&r.outcome);
      if (!found) continue;
      ASSERT_TRUE(check(found->model, f));
      for (std::size_t b = 1; b < found->states; ++b) {
        ASSERT_FALSE(brute_force_bsat(f, b, d)) << pretty(f) << " b=" << b << " D=" << d;
      }
    }
  }
}

TEST(SolverProperty, ParallelAndSymmetryPreserveVerdicts) {
  const auto corpus = gen::DeskCorpus(4).generate(30);
  for (const auto& f : corpus) {
    SearchConfig base = search(3, 2);
    const auto r0 = bounded_search(f, base);
    SearchConfig par = base;
    par.parallel_bounds = true;
    const auto r1 = bounded_search(f, par);
    SearchConfig sym = base;
    sym.symmetry_breaking = true;
    const auto r2 = bounded_search(f, sym);
    ASSERT_EQ(r0.outcome.index(), r1.outcome.index()) << pretty(f);
    ASSERT_EQ(r0.outcome.index(), r2.outcome.index()) << pretty(f);
    if (const auto* a = std::get_if<outcome::ModelFound>(&r0.outcome)) {
      EXPECT_EQ(a->states, std::get<outcome::ModelFound>(r1.outcome).states) << pretty(f);
      EXPECT_EQ(a->states, std::get<outcome::ModelFound>(r2.outcome).states) << pretty(f);
    }
  }
}

TEST(SolverProperty, AgreesWithBruteForceOnSample) {
  const auto corpus = gen::DeskCorpus(5).generate(30);
  for (const auto& f : corpus) {
    for (std::size_t b = 1; b <= 2; ++b) {
      for (std::uint32_t d = 1; d <= 2; ++d) {
        const auto v = solve_script(encode(f, enc(b, d)).script, search(b, d));
        ASSERT_FALSE(std::holds_alternative<verdict::SolverError>(v));
        if (std::holds_alternative<verdict::Unknown>(v)) continue;
        ASSERT_EQ(std::holds_alternative<verdict::Sat>(v), brute_force_bsat(f, b, d).has_value())
            << pretty(f) << " b=" << b << " D=" << d;
      }
    }
  }
}
