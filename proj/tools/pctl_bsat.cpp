// pctl-bsat: bounded satisfiability for PCTL via SMT.
//
//   pctl-bsat solve     --expr STR | --formula FILE  --max-states B [...]
//   pctl-bsat check     --expr STR | --formula FILE  --tra FILE --lab FILE
//   pctl-bsat encode    --expr STR | --formula FILE  --states B [--denominator D]
//   pctl-bsat enumerate --expr STR | --formula FILE  --states B [--denominator D]
//
// Exit codes for solve: 0 model found, 1 no model up to B, 2 inconclusive,
// 3 usage or solver error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pctl_bsat/checker.hpp"
#include "pctl_bsat/dtmc.hpp"
#include "pctl_bsat/encoder.hpp"
#include "pctl_bsat/enumerate.hpp"
#include "pctl_bsat/parser.hpp"
#include "pctl_bsat/report.hpp"
#include "pctl_bsat/solver.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kUsageError = 3;

struct FormulaSource {
  std::string expr;
  std::string file;

  void attach(CLI::App& app) {
    auto* e = app.add_option("--expr", expr, "Formula text");
    auto* f = app.add_option("--formula", file, "File containing the formula");
    e->excludes(f);
  }

  std::string text() const {
    if (!expr.empty()) return expr;
    if (file.empty()) throw CLI::ValidationError("--expr/--formula", "a formula is required");
    return read_file(file);
  }

  static std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

nlohmann::ordered_json model_json(const pctl::Dtmc& m) {
  const auto files = pctl::export_prism(m);
  return {{"states", m.state_count()},
          {"tra", files.tra},
          {"lab", files.lab},
          {"dot", pctl::export_dot(m)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded satisfiability for PCTL: search for small simple DTMC models"};
  app.require_subcommand(1);

  FormulaSource solve_src, check_src, encode_src, enum_src;

  auto* solve = app.add_subcommand("solve", "Search for a model with at most B states");
  solve_src.attach(*solve);
  std::size_t max_states = 0;
  std::uint32_t solve_den = 4;
  double timeout = 60;
  std::string solver_cmd = pctl::default_solver_command();
  std::string out_dir = ".";
  bool dot = false, no_verify = false, symmetry = false, parallel = false;
  solve->add_option("--max-states", max_states, "Largest state count to try")
      ->required()
      ->check(CLI::PositiveNumber);
  solve->add_option("--denominator", solve_den, "Common probability denominator D")
      ->check(CLI::PositiveNumber);
  solve->add_option("--timeout", timeout, "Per-query timeout in seconds")
      ->check(CLI::PositiveNumber);
  solve->add_option("--solver", solver_cmd,
                    "Solver command; {file} is replaced by the script path, otherwise the "
                    "script is piped to standard input (default: $PCTL_BSAT_SOLVER or 'z3 -in')");
  solve->add_option("--out", out_dir, "Output directory");
  solve->add_flag("--dot", dot, "Also write model.dot");
  solve->add_flag("--no-verify", no_verify, "Skip the independent model check");
  solve->add_flag("--symmetry", symmetry, "Add symmetry-breaking constraints");
  solve->add_flag("--parallel", parallel, "Run all bounds concurrently");

  auto* check = app.add_subcommand("check", "Model check a DTMC given as .tra/.lab files");
  check_src.attach(*check);
  std::string tra_path, lab_path;
  check->add_option("--tra", tra_path, "Transition file")->required();
  check->add_option("--lab", lab_path, "Label file")->required();

  auto* enc = app.add_subcommand("encode", "Print the SMT-LIB script for one bound");
  encode_src.attach(*enc);
  std::size_t enc_states = 0;
  std::uint32_t enc_den = 4;
  bool enc_symmetry = false;
  enc->add_option("--states", enc_states, "Exact state count")
      ->required()
      ->check(CLI::PositiveNumber);
  enc->add_option("--denominator", enc_den, "Common probability denominator D")
      ->check(CLI::PositiveNumber);
  enc->add_flag("--symmetry", enc_symmetry, "Add symmetry-breaking constraints");

  auto* enumerate = app.add_subcommand("enumerate", "Brute-force all models of one size");
  enum_src.attach(*enumerate);
  std::size_t enum_states = 0;
  std::uint32_t enum_den = 4;
  enumerate->add_option("--states", enum_states, "Exact state count")
      ->required()
      ->check(CLI::PositiveNumber);
  enumerate->add_option("--denominator", enum_den, "Common probability denominator D")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*solve) {
      const std::string text = solve_src.text();
      const pctl::Formula f = pctl::parse(text);
      pctl::SearchConfig cfg;
      cfg.max_states = max_states;
      cfg.denominator = solve_den;
      cfg.timeout = std::chrono::duration<double>(timeout);
      cfg.solver_command = solver_cmd;
      cfg.verify = !no_verify;
      cfg.symmetry_breaking = symmetry;
      cfg.parallel_bounds = parallel;

      pctl::RunReport report{text, cfg, pctl::bounded_search(f, cfg), {}};
      fs::create_directories(out_dir);
      const fs::path dir(out_dir);
      if (const auto* found = std::get_if<pctl::outcome::ModelFound>(&report.result.outcome)) {
        const auto files = pctl::export_prism(found->model);
        write_file(dir / "model.tra", files.tra);
        write_file(dir / "model.lab", files.lab);
        report.model_files = {(dir / "model.tra").string(), (dir / "model.lab").string()};
        if (dot) {
          write_file(dir / "model.dot", pctl::export_dot(found->model));
          report.model_files.push_back((dir / "model.dot").string());
        }
      }
      write_file(dir / "report.json", pctl::report_json(report));

      for (const auto& rec : report.result.bounds) {
        std::cout << "b=" << rec.states << ": " << pctl::verdict_name(rec.verdict) << " ("
                  << rec.seconds << " s, " << rec.assertions << " assertions)\n";
      }
      std::cout << pctl::outcome_name(report.result);
      if (const auto* found = std::get_if<pctl::outcome::ModelFound>(&report.result.outcome)) {
        std::cout << " with " << found->states << " states"
                  << (found->verified ? " (verified)" : " (not verified)");
      }
      std::cout << '\n';
      return pctl::exit_code(report.result);
    }

    if (*check) {
      const pctl::Formula f = pctl::parse(check_src.text());
      const pctl::Dtmc m = pctl::import_prism(FormulaSource::read_file(tra_path),
                                              FormulaSource::read_file(lab_path));
      const bool holds = pctl::check(m, f);
      std::cout << (holds ? "satisfied" : "not satisfied") << '\n';
      return holds ? 0 : 1;
    }

    if (*enc) {
      pctl::EncodingConfig ecfg;
      ecfg.states = enc_states;
      ecfg.denominator = enc_den;
      ecfg.symmetry_breaking = enc_symmetry;
      std::cout << pctl::encode(pctl::parse(encode_src.text()), ecfg).script.text();
      return 0;
    }

    if (*enumerate) {
      const pctl::Formula f = pctl::normalize(pctl::parse(enum_src.text()));
      const pctl::EnumSpace space{enum_states, enum_den, pctl::atoms(f)};
      const auto summary = pctl::count_models(f, space);
      nlohmann::ordered_json j;
      j["states"] = enum_states;
      j["denominator"] = enum_den;
      j["spaceSize"] = summary.space_size;
      j["satisfying"] = summary.satisfying;
      j["witness"] = summary.first_witness ? model_json(*summary.first_witness)
                                           : nlohmann::ordered_json(nullptr);
      std::cout << j.dump(2) << '\n';
      return summary.first_witness ? 0 : 1;
    }
  } catch (const pctl::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const pctl::SolverFailure& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
