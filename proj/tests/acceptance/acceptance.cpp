// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any of them fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "dcec/guard/guard.hpp"
#include "dcec/guard/report.hpp"
#include "dcec/prover/model_finder.hpp"
#include "dcec/prover/prover.hpp"
#include "dde_oracle.hpp"
#include "generators.hpp"

using namespace dcec;

namespace {

const std::string kScenarios = DCEC_SCENARIO_DIR;
const std::string kData = DCEC_TEST_DATA_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Scenario scenario(const std::string& name) { return load_scenario(kScenarios + "/" + name + ".scn"); }

Outcome first_simulation() {
  const Scenario s = scenario("sim1");
  const Verdict v = adjudicate(s);
  const bool ok = v.decision == Decision::Lock && v.obligation_proof && v.proof_verified && v.elapsed.count() < 1000;
  return {ok, std::string(to_string(v.decision)) + ", proof " + (v.proof_verified ? "verified" : "not verified") +
                  ", " + std::to_string(v.elapsed.count()) + " ms"};
}

Outcome second_simulation() {
  const Scenario s = scenario("sim2");
  const Verdict v = adjudicate(s);
  const bool ok = v.decision == Decision::Allow && v.dde && v.dde->compliant() && v.elapsed.count() <= 3000;
  std::string clauses;
  if (v.dde)
    for (const ClauseVerdict* c : v.dde->clauses()) clauses += " " + c->name + "=" + std::string(to_string(c->result));
  return {ok, std::string(to_string(v.decision)) + "," + clauses + ", " + std::to_string(v.elapsed.count()) + " ms"};
}

Budget corpus_budget() {
  Budget b;
  b.wall_clock = std::chrono::milliseconds(5000);
  b.max_clauses = 20000;
  return b;
}

struct Problem {
  std::string name;
  Signature sig;
  std::vector<Formula> assumptions;
  Formula goal;
};

// The hand-written corpus followed by seeded random problems.
std::vector<Problem> problems() {
  std::vector<Problem> out;
  const testing::Corpus c = testing::load_corpus(kData + "/prover_corpus.dcec");
  for (const auto& p : c.problems) out.push_back({p.name, c.signature, p.assumptions, p.goal});
  testing::ProblemGen gen(7031);
  for (int i = 0; i < 160; ++i) {
    testing::Problem p = gen.next();
    out.push_back({"random-" + std::to_string(i), gen.signature(), p.assumptions, p.goal});
  }
  return out;
}

// Corruptions that no sound checker may accept.
std::vector<Proof> corrupt(const Proof& p, const Formula& goal) {
  std::vector<Proof> out;
  Proof wrong_conclusion = p;
  wrong_conclusion.steps.back().formula = Formula::negation(goal);
  out.push_back(wrong_conclusion);
  Proof unknown_rule = p;
  unknown_rule.steps.back().rule = "oracle";
  out.push_back(unknown_rule);
  Proof bad_assumption = p;
  bad_assumption.steps.front().formula = Formula::falsity();
  bad_assumption.steps.front().rule = "assume";
  out.push_back(bad_assumption);
  for (std::size_t i = 0; i < p.steps.size(); ++i)
    if (!p.steps[i].premises.empty()) {
      Proof forward = p;
      forward.steps[i].premises.front() = i;
      out.push_back(forward);
      break;
    }
  return out;
}

Outcome proof_checking() {
  std::size_t proofs = 0, accepted = 0, corrupted = 0, rejected = 0;
  const auto all = problems();
  for (const Problem& p : all) {
    const ProveResult r = prove(p.sig, p.assumptions, p.goal, corpus_budget());
    if (!r.proof) continue;
    ++proofs;
    if (verify_proof(*r.proof, p.assumptions, p.goal, p.sig)) ++accepted;
    else std::cerr << "rejected proof of " << p.name << "\n";
    for (const Proof& bad : corrupt(*r.proof, p.goal)) {
      ++corrupted;
      if (!verify_proof(bad, p.assumptions, p.goal, p.sig)) ++rejected;
      else std::cerr << "accepted a corrupted proof of " << p.name << "\n" << serialize(bad);
    }
  }
  const bool ok = all.size() >= 50 && proofs == accepted && corrupted >= 20 && corrupted == rejected;
  return {ok, std::to_string(all.size()) + " problems, " + std::to_string(accepted) + "/" + std::to_string(proofs) +
                  " proofs accepted, " + std::to_string(rejected) + "/" + std::to_string(corrupted) +
                  " corrupted proofs rejected"};
}

bool small(const ModelResult& m, const Signature& sig) {
  for (const auto& [sort, n] : m.named_elements)
    if (n > (sig.is_subsort(sort, std::string(sorts::kMoment)) ? 4u : 3u)) return false;
  return true;
}

Outcome model_oracle() {
  int compared = 0, skipped = 0, disagreements = 0;
  for (const Problem& p : problems()) {
    std::vector<Formula> fs = p.assumptions;
    fs.push_back(Formula::negation(p.goal));
    const ModelResult m = find_model(p.sig, fs);
    if (m.status == ModelStatus::TooLarge || !small(m, p.sig)) {
      ++skipped;
      continue;
    }
    ++compared;
    const ProveResult r = prove(p.sig, p.assumptions, p.goal, corpus_budget());
    const bool proved = r.status == ProveStatus::Proved;
    if (r.status == ProveStatus::Timeout || proved != (m.status == ModelStatus::Unsatisfiable)) {
      ++disagreements;
      std::cerr << "oracle disagrees on " << p.name << ": " << to_string(r.status) << "\n";
    }
  }
  return {disagreements == 0 && compared >= 50,
          std::to_string(compared) + " problems compared, " + std::to_string(skipped) + " beyond the small domain, " +
              std::to_string(disagreements) + " disagreements"};
}

Outcome dde_oracle() {
  testing::DdeScenarioGen gen(99);
  int compared = 0, disagreements = 0;
  Budget b;
  b.wall_clock = std::chrono::milliseconds(3000);
  while (compared < 60) {
    const DdeProblem p = gen.next();
    const testing::OracleVerdict want = testing::brute_force_dde(p);
    if (want.contradictory) continue;
    ++compared;
    const auto diff = testing::disagreements(dde_compliant(p, b), want);
    if (!diff.empty()) {
      ++disagreements;
      std::cerr << diff.front() << "\n" << testing::describe(p);
    }
  }
  return {disagreements == 0,
          std::to_string(compared) + " scenarios, " + std::to_string(disagreements) + " disagreements"};
}

Outcome ablation() {
  const Scenario s = scenario("sim1");
  auto term = [&](const char* text) { return parse_term(read_sexprs(text).at(0), s.signature); };
  auto formula = [&](const char* text) { return parse_formula(text, s.signature); };
  const std::vector<Formula> theory = prevents_theory(s);
  auto holds = [&](const std::vector<Formula>& th) {
    return prevents_holds(s.signature, th, term("ai"), term("shooter"), term("massacre"), term("lockout"),
                          Term::moment(1))
        .answer;
  };
  if (holds(theory) != Answer::Yes) return {false, "prevents does not hold on the full theory"};
  const std::vector<Formula> supports{formula("(prior 1 2)"), formula("(prior 2 3)"), s.facts[4], s.facts[5],
                                      s.facts[6], formula("(happens (action ai lockout) 1)")};
  int flips = 0;
  for (const Formula& support : supports) {
    std::vector<Formula> ablated;
    for (const Formula& x : theory)
      if (!(x == support)) ablated.push_back(x);
    if (ablated.size() + 1 == theory.size() && holds(ablated) != Answer::Yes) ++flips;
  }
  return {flips == 6, std::to_string(flips) + "/6 ablations flip"};
}

Outcome round_trip() {
  int checked = 0, broken = 0;
  auto check = [&](const Formula& f, const Signature& sig) {
    ++checked;
    const std::string text = print_formula(f);
    const Formula back = parse_formula(text, sig);
    if (!(back == f) || print_formula(back) != text) {
      ++broken;
      std::cerr << "round trip changed " << text << "\n";
    }
  };
  testing::FormulaGen gen(515);
  for (int i = 0; i < 250; ++i) check(gen.formula(4), gen.signature());
  for (const char* name : {"sim1", "sim2"}) {
    const Scenario s = scenario(name);
    for (const Formula& f : s.facts) check(f, s.signature);
    check(deprivation_axiom(s), s.signature);
    check(refrain_obligation(s), s.signature);
  }
  return {broken == 0 && checked >= 200,
          std::to_string(checked) + " formulas, " + std::to_string(broken) + " changed"};
}

Outcome determinism() {
  std::string detail;
  bool ok = true;
  for (const char* name : {"sim1", "sim2"}) {
    const Scenario s = scenario(name);
    std::string runs[2];
    for (std::string& out : runs) {
      Report r = verdict_report(s, adjudicate(s));
      r.erase("elapsed_ms");
      out = render_json(r) + render_text(r);
    }
    const bool same = runs[0] == runs[1];
    ok = ok && same;
    detail += std::string(detail.empty() ? "" : ", ") + name + (same ? " identical" : " differs");
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"first simulation locks with a verified proof in under 1000 ms", first_simulation},
      {"second simulation allows by double effect within 3000 ms", second_simulation},
      {"proof checker accepts emitted proofs and rejects corrupted ones", proof_checking},
      {"prover agrees with finite-model enumeration", model_oracle},
      {"double-effect verdicts agree with the brute-force checker", dde_oracle},
      {"each prevents ablation flips the answer", ablation},
      {"parse and print round trip", round_trip},
      {"simulation reports are deterministic", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << o.detail << ")" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
