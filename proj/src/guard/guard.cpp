#include "dcec/guard/guard.hpp"

#include "dcec/core/error.hpp"
#include "dcec/prover/model_finder.hpp"

namespace dcec {

namespace {

const Term kT1 = Term::variable("t1", std::string(sorts::kMoment));
const Term kT2 = Term::variable("t2", std::string(sorts::kMoment));

Term act(const Term& agent, const Term& atype) {
  return Term::apply("action", {agent, atype}, std::string(sorts::kAction));
}

void expect(const Signature& sig, const Term& t, std::string_view sort, const char* role) {
  sig.check(t);
  if (!sig.is_subsort(t.sort(), std::string(sort)))
    throw SortError(std::string(role) + " " + print_term(t) + " is " + t.sort() + ", expected " + std::string(sort));
}

}  // namespace

std::vector<Formula> prevents_conjuncts(const Term& x, const Term& y, const Term& g, const Term& a, const Term& t) {
  const Term a1 = Term::variable("a1", std::string(sorts::kActionType));
  const Formula block = Formula::atom("Block", {x, y, g, a, t});
  const Formula y_acts = Formula::atom("happens", {act(y, a1), kT1});
  return {
      Formula::atom("prior", {t, kT1}),
      Formula::atom("prior", {kT1, kT2}),
      Formula::knows(x, t,
                     Formula::conjunction({Formula::desires(y, t, Formula::atom("holds", {g, kT2})),
                                           Formula::intends(y, t, Formula::atom("happens", {g, kT2}))})),
      Formula::knows(
          x, t,
          Formula::exists(a1, Formula::conjunction(
                                  {Formula::intends(y, kT1, y_acts),
                                   Formula::implication(Formula::conjunction({y_acts, Formula::negation(block)}),
                                                        Formula::atom("happens", {g, kT2}))}))),
      Formula::knows(x, t, Formula::implication(Formula::atom("happens", {act(x, a), t}), block)),
      Formula::atom("happens", {act(x, a), t}),
  };
}

Formula prevents_body(const Signature& sig, const Term& x, const Term& y, const Term& g, const Term& a,
                      const Term& t) {
  expect(sig, x, sorts::kAgent, "agent");
  expect(sig, y, sorts::kAgent, "agent");
  expect(sig, g, sorts::kGoal, "goal");
  expect(sig, a, sorts::kActionType, "action type");
  expect(sig, t, sorts::kMoment, "moment");
  return Formula::exists(kT1, Formula::exists(kT2, Formula::conjunction(prevents_conjuncts(x, y, g, a, t))));
}

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
  }
  return "?";
}

PreventsResult prevents_holds(const Signature& sig, const std::vector<Formula>& theory, const Term& x, const Term& y,
                              const Term& g, const Term& a, const Term& t, const Budget& budget) {
  PreventsResult r;
  const Formula body = prevents_body(sig, x, y, g, a, t);
  ProveResult pr = prove(sig, theory, body, budget);
  if (pr.status == ProveStatus::Proved) {
    r.answer = Answer::Yes;
    r.proof = std::move(pr.proof);
    r.detail = "proved";
    return r;
  }
  std::vector<Formula> refute = theory;
  refute.push_back(Formula::negation(body));
  const ModelResult m = find_model(sig, refute);
  if (m.status != ModelStatus::Satisfiable) {
    r.detail = std::string(to_string(pr.status)) + "; no countermodel" + (m.detail.empty() ? "" : " (" + m.detail + ")");
    return r;
  }
  auto count = [&](std::string_view sort) {
    std::size_t n = 0;
    for (const auto& [s, k] : m.named_elements)
      if (sig.is_subsort(s, std::string(sort))) n += k;
    return n;
  };
  if (count(sorts::kAgent) > kMaxCountermodelAgents || count(sorts::kMoment) > kMaxCountermodelMoments ||
      count(sorts::kActionType) > kMaxCountermodelActionTypes) {
    r.detail = "countermodel outside the searched bounds";
    return r;
  }
  r.answer = Answer::No;
  r.detail = "countermodel with " + std::to_string(m.true_atoms.size()) + " true atoms";
  return r;
}

std::vector<Formula> prevents_theory(const Scenario& s) {
  std::vector<Formula> out = s.facts;
  for (Formula& f : trace_atoms(project(s.theory))) out.push_back(std::move(f));
  return out;
}

PreventsResult prevents_holds(const Scenario& s, const Term& x, const Term& y, const Term& g, const Term& a,
                              const Term& t, const Budget& budget) {
  return prevents_holds(s.signature, prevents_theory(s), x, y, g, a, t, budget);
}

Formula refrain_obligation(const Scenario& s) {
  const Term t = Term::moment(s.request.moment);
  return Formula::obligation(s.request.agent, t, Term::constant(std::string(kDefaultSituation), "Situation"),
                             Formula::negation(Formula::atom("happens", {act(s.request.agent, s.request.atype), t})));
}

Formula deprivation_axiom(const Scenario& s) {
  const Term v = Term::variable("v", std::string(sorts::kAgent));
  const Term g = Term::variable("g", std::string(sorts::kGoal));
  const Term t = Term::moment(s.request.moment);
  const Formula phi = Formula::conjunction(
      {Formula::atom("innocent", {v}), prevents_body(s.signature, s.request.agent, v, g, s.request.atype, t)});
  return Formula::implication(Formula::exists(v, Formula::exists(g, phi)), refrain_obligation(s));
}

std::vector<Formula> guard_theory(const Scenario& s) {
  std::vector<Formula> out = s.facts;
  for (Formula& f : trace_atoms(project(s.hypothetical_theory()))) out.push_back(std::move(f));
  out.push_back(deprivation_axiom(s));
  return out;
}

std::string_view to_string(Decision d) { return d == Decision::Lock ? "LOCK" : "ALLOW"; }

bool Verdict::consistent() const {
  if (obligation_status == ProveStatus::Timeout) return decision == Decision::Lock && !obligation_proof;
  const bool lock = obligation_proof.has_value() && (!dde || !dde->compliant());
  return (decision == Decision::Lock) == lock;
}

Verdict adjudicate(const Scenario& s, const Budget& budget, std::ostream* trace) {
  const auto start = std::chrono::steady_clock::now();
  s.validate();
  Verdict v;
  v.obligation = refrain_obligation(s);
  const std::vector<Formula> theory = guard_theory(s);
  ProveResult pr = prove(s.signature, theory, v.obligation, budget, trace);
  v.obligation_status = pr.status;
  switch (pr.status) {
    case ProveStatus::Timeout:
      v.decision = Decision::Lock;
      v.dde_unknown = true;
      break;
    case ProveStatus::NoProof:
      v.decision = Decision::Allow;
      break;
    case ProveStatus::Proved:
      v.obligation_proof = std::move(pr.proof);
      v.proof_verified = static_cast<bool>(verify_proof(*v.obligation_proof, theory, v.obligation, s.signature));
      v.dde = dde_compliant(s.dde_problem(), budget);
      v.decision = v.dde->compliant() ? Decision::Allow : Decision::Lock;
      break;
  }
  v.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return v;
}

Answer epistemic_query(const Scenario& s, QueryKind kind, const Term& h, const Term& t, const Formula& phi,
                       const Budget& budget) {
  const Formula positive =
      kind == QueryKind::Intention
          ? Formula::intends(h, t, phi)
          : Formula::obligation(h, t, Term::constant(std::string(kDefaultSituation), "Situation"), Formula::negation(phi));
  s.signature.check(positive);
  const std::vector<Formula> theory = guard_theory(s);
  const bool yes = prove(s.signature, theory, positive, budget).status == ProveStatus::Proved;
  const bool no = prove(s.signature, theory, Formula::negation(positive), budget).status == ProveStatus::Proved;
  if (yes && no) throw InconsistencyError("both " + print_formula(positive) + " and its negation are provable");
  return yes ? Answer::Yes : no ? Answer::No : Answer::Unknown;
}

}  // namespace dcec
