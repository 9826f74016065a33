// dcec: parse formulas, prove goals, check double-effect compliance and run
// weapon-guard simulations.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dcec/core/parse.hpp"
#include "dcec/guard/guard.hpp"
#include "dcec/guard/report.hpp"
#include "dcec/prover/prover.hpp"

namespace fs = std::filesystem;
using namespace dcec;

namespace {

enum Exit : int { kOk = 0, kError = 1, kLock = 2, kNoProof = 3, kTimeout = 4, kUsage = 64 };

struct Options {
  std::int64_t timeout_ms = 10000;
  int depth = 4;
  std::size_t clauses = 200000;
  std::string format = "text";
  bool trace = false;

  Budget budget() const {
    Budget b;
    b.wall_clock = std::chrono::milliseconds(timeout_ms);
    b.max_depth = depth;
    b.max_clauses = clauses;
    return b;
  }
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Bundled scenarios can be named without their directory.
fs::path scenario_path(const std::string& arg) {
  fs::path p(arg);
  if (fs::exists(p)) return p;
  fs::path bundled = fs::path(DCEC_SCENARIO_DIR) / p.filename();
  if (fs::exists(bundled)) return bundled;
  if (!p.has_extension() && fs::exists(bundled.replace_extension(".scn"))) return bundled;
  return p;
}

// Prefixes parse errors with the file they come from.
template <class F>
auto in_file(const std::string& file, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw std::runtime_error(file + ":" + e.what());
  }
}

void emit(const Report& r, const Options& o) { std::cout << (o.format == "json" ? render_json(r) : render_text(r)); }

int run_parse(const std::vector<std::string>& files, const Options& o) {
  Report out = Report::array();
  for (const std::string& file : files) {
    Report r;
    r["file"] = file;
    r["formulas"] = Report::array();
    if (fs::path(file).extension() == ".scn") {
      Scenario s = in_file(file, [&] { return load_scenario(file); });
      for (const Formula& f : s.facts) r["formulas"].push_back(print_formula(f));
    } else {
      FormulaFile ff = in_file(file, [&] { return parse_formula_file(read_file(file)); });
      for (const Formula& f : ff.formulas) r["formulas"].push_back(print_formula(f));
    }
    out.push_back(std::move(r));
  }
  emit(out, o);
  return kOk;
}

int run_prove(const std::string& goal_file, const std::vector<std::string>& from, const Options& o) {
  Signature sig;
  std::vector<Formula> assumptions;
  for (const std::string& file : from) {
    FormulaFile ff = in_file(file, [&] { return parse_formula_file(read_file(file), sig); });
    sig = ff.signature;
    for (Formula& f : ff.formulas) assumptions.push_back(std::move(f));
  }
  FormulaFile gf = in_file(goal_file, [&] { return parse_formula_file(read_file(goal_file), sig); });
  if (gf.formulas.size() != 1) throw std::runtime_error(goal_file + ": expected exactly one goal formula");
  const Formula& goal = gf.formulas.front();

  ProveResult r = prove(gf.signature, assumptions, goal, o.budget(), o.trace ? &std::cerr : nullptr);
  Report out;
  out["goal"] = print_formula(goal);
  out["status"] = std::string(to_string(r.status));
  out["generated_clauses"] = r.generated_clauses;
  if (!r.detail.empty()) out["detail"] = r.detail;
  if (r.proof) {
    out["proof"] = proof_report(*r.proof);
    out["proof_verified"] = static_cast<bool>(verify_proof(*r.proof, assumptions, goal, gf.signature));
  } else {
    out["proof"] = nullptr;
  }
  emit(out, o);
  switch (r.status) {
    case ProveStatus::Proved: return kOk;
    case ProveStatus::NoProof: return kNoProof;
    case ProveStatus::Timeout: return kTimeout;
  }
  return kError;
}

int run_check_dde(const std::string& file, const Options& o) {
  const fs::path path = scenario_path(file);
  Scenario s = in_file(path.string(), [&] { return load_scenario(path); });
  DDEVerdict v = dde_compliant(s.dde_problem(), o.budget());
  Report out;
  out["scenario"] = s.name;
  out["request"] = print_term(s.request_occurrence().event) + " at " + std::to_string(s.request.moment);
  out["dde"] = dde_report(v, s.utilities.gamma);
  emit(out, o);
  return v.compliant() ? kOk : kLock;
}

int run_simulate(const std::string& file, const Options& o) {
  const fs::path path = scenario_path(file);
  Scenario s = in_file(path.string(), [&] { return load_scenario(path); });
  Verdict v = adjudicate(s, o.budget(), o.trace ? &std::cerr : nullptr);
  emit(verdict_report(s, v), o);
  return v.decision == Decision::Allow ? kOk : kLock;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modal-logic reasoner with a double-effect checker and weapon guard"};
  app.require_subcommand(1, 1);
  Options o;
  app.add_option("--timeout", o.timeout_ms, "Wall-clock budget per proof search, in ms")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--depth", o.depth, "Modal expansion depth")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--clauses", o.clauses, "Clause budget")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_flag("--trace", o.trace, "Write the prover trace to standard error");

  std::vector<std::string> parse_files;
  auto* parse = app.add_subcommand("parse", "Parse formula or scenario files and print canonical forms");
  parse->add_option("files", parse_files, "Input files")->required()->check(CLI::ExistingFile);

  std::string goal;
  std::vector<std::string> from;
  auto* prove_cmd = app.add_subcommand("prove", "Prove a goal from assumptions");
  prove_cmd->add_option("--goal", goal, "File holding the goal formula")->required()->check(CLI::ExistingFile);
  prove_cmd->add_option("--from", from, "Assumption files")->check(CLI::ExistingFile);

  std::string dde_file;
  auto* dde = app.add_subcommand("check-dde", "Check the scenario's requested action against the double effect");
  dde->add_option("scenario", dde_file, "Scenario file")->required();

  std::string sim_file;
  auto* sim = app.add_subcommand("simulate", "Adjudicate the scenario's request");
  sim->add_option("scenario", sim_file, "Scenario file or bundled name")->required();

  for (CLI::App* sub : {parse, prove_cmd, dde, sim}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (parse->parsed()) return run_parse(parse_files, o);
    if (prove_cmd->parsed()) return run_prove(goal, from, o);
    if (dde->parsed()) return run_check_dde(dde_file, o);
    return run_simulate(sim_file, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
