#include "dcec/ethics/dde.hpp"

#include <algorithm>
#include <set>

#include "dcec/prover/prover.hpp"

namespace dcec {

void EthicalHierarchy::validate() const {
  if (categories.empty() || categories.front() != "forbidden")
    throw EthicsError("hierarchy must start with the category forbidden");
  std::set<std::string> seen;
  for (const std::string& c : categories)
    if (!seen.insert(c).second) throw EthicsError("duplicate hierarchy category " + c);
  if (!seen.count(neutral)) throw EthicsError("neutral category " + neutral + " is not in the hierarchy");
  for (const auto& [atype, cat] : classification)
    if (!seen.count(cat)) throw EthicsError("action type " + atype + " mapped to unknown category " + cat);
}

std::size_t EthicalHierarchy::rank(const std::string& category) const {
  auto it = std::find(categories.begin(), categories.end(), category);
  if (it == categories.end()) throw EthicsError("unknown category " + category);
  return static_cast<std::size_t>(it - categories.begin());
}

std::string classify(const Term& atype, const EthicalHierarchy& h) {
  auto it = h.classification.find(print_term(atype));
  return it == h.classification.end() ? h.neutral : it->second;
}

std::string_view to_string(ClauseResult r) {
  switch (r) {
    case ClauseResult::Pass: return "pass";
    case ClauseResult::Fail: return "fail";
    case ClauseResult::Unknown: return "unknown";
  }
  return "?";
}

ClauseVerdict check_c1(const Term& atype, const EthicalHierarchy& h) {
  const std::string cat = classify(atype, h);
  const bool ok = h.rank(cat) >= h.rank(h.neutral);
  return {"C1", ok ? ClauseResult::Pass : ClauseResult::Fail,
          print_term(atype) + " is " + cat + (ok ? ", not below " : ", below ") + h.neutral, {}};
}

void UtilityMap::validate() const {
  if (gamma < 0) throw EthicsError("gamma must be non-negative");
}

std::int64_t UtilityMap::utility(const Effect& e) const {
  for (const UtilityEntry& u : entries) {
    Binding b;
    if (u.polarity == e.polarity && match_term(u.pattern, e.fluent, b)) return u.utility;
  }
  return 0;
}

C2Result check_c2(const std::vector<Effect>& effects, const UtilityMap& u) {
  C2Result r;
  std::string sum;
  for (const Effect& e : effects) {
    const std::int64_t v = u.utility(e);
    r.net += v;
    if (v != 0) sum += (sum.empty() ? "" : " + ") + std::string(v < 0 ? "(" : "") + std::to_string(v) + (v < 0 ? ")" : "");
  }
  if (sum.empty()) sum = "0";
  const bool ok = r.net > u.gamma;
  r.verdict = {"C2", ok ? ClauseResult::Pass : ClauseResult::Fail,
               "net " + sum + " = " + std::to_string(r.net) + (ok ? " > " : " <= ") + "gamma " + std::to_string(u.gamma),
               {}};
  return r;
}

namespace {

ClauseResult combine(bool failed, bool unknown) {
  if (failed) return ClauseResult::Fail;
  return unknown ? ClauseResult::Unknown : ClauseResult::Pass;
}

}  // namespace

C3Result check_c3(const Signature& sig, const Term& agent, const Term& moment, const std::vector<Effect>& effects,
                  const std::vector<Formula>& facts, const Budget& budget) {
  C3Result r;
  r.c3a.name = "C3a";
  r.c3b.name = "C3b";
  bool a_failed = false, a_unknown = false, b_failed = false, b_unknown = false;
  std::string a_notes, b_notes;
  auto note = [](std::string& s, const std::string& line) { s += (s.empty() ? "" : "; ") + line; };
  for (const Effect& e : effects) {
    const Formula goal = Formula::modal(ModalOp::Intends, agent, moment, effect_formula(e));
    const ProveResult pr = prove(sig, facts, goal, budget);
    const std::string what = print_formula(goal) + ": " + std::string(to_string(pr.status));
    if (e.valence == Valence::Good) {
      if (pr.status == ProveStatus::Proved) r.c3a.proofs.push_back(*pr.proof);
      if (pr.status == ProveStatus::NoProof) a_failed = true;
      if (pr.status == ProveStatus::Timeout) a_unknown = true;
      note(a_notes, "good " + what);
    } else {
      if (pr.status == ProveStatus::Proved) a_failed = true;
      if (pr.status == ProveStatus::Timeout) a_unknown = true;
      note(a_notes, std::string(to_string(e.valence)) + " " + what);
      if (e.valence == Valence::Bad) {
        if (pr.status == ProveStatus::Proved) {
          b_failed = true;
          r.c3b.proofs.push_back(*pr.proof);
        }
        if (pr.status == ProveStatus::Timeout) b_unknown = true;
        note(b_notes, "bad " + what);
      }
    }
  }
  r.c3a.result = combine(a_failed, a_unknown);
  r.c3b.result = combine(b_failed, b_unknown);
  r.c3a.justification = a_notes.empty() ? "no effects" : a_notes;
  r.c3b.justification = b_notes.empty() ? "no bad effects" : b_notes;
  return r;
}

ClauseVerdict check_c4(const std::vector<Effect>& effects, const ECTheory& theory) {
  ClauseVerdict v{"C4", ClauseResult::Pass, "", {}};
  std::vector<Effect> bad;
  for (const Effect& e : effects)
    if (e.valence == Valence::Bad) bad.push_back(e);
  const Trace tr = project(theory);
  for (const Effect& g : effects) {
    if (g.valence != Valence::Good) continue;
    for (const ChainLink& l : causal_chain(g, tr))
      if (std::find(bad.begin(), bad.end(), l.effect) != bad.end()) {
        v.result = ClauseResult::Fail;
        v.justification = "good effect " + print_effect(g) + " is obtained through bad effect " + print_effect(l.effect);
        return v;
      }
  }
  v.justification = "no good effect depends on a bad effect";
  return v;
}

bool DDEVerdict::compliant() const {
  for (const ClauseVerdict* c : clauses())
    if (c->result != ClauseResult::Pass) return false;
  return true;
}

DDEVerdict dde_compliant(const DdeProblem& p, const Budget& budget) {
  p.hierarchy.validate();
  p.utilities.validate();
  const Occurrence act{Term::apply("action", {p.agent, p.atype}, std::string(sorts::kAction)), p.moment};
  const ECTheory theory = p.theory.with_occurrence(act);
  theory.validate(p.signature);

  DDEVerdict v;
  v.effects = effects_of(act, theory, [&](const Effect& e) { return p.utilities.utility(e); });
  v.c1 = check_c1(p.atype, p.hierarchy);
  C2Result c2 = check_c2(v.effects, p.utilities);
  v.c2 = std::move(c2.verdict);
  v.net = c2.net;
  C3Result c3 = check_c3(p.signature, p.agent, Term::moment(p.moment), v.effects, p.facts, budget);
  v.c3a = std::move(c3.c3a);
  v.c3b = std::move(c3.c3b);
  v.c4 = check_c4(v.effects, theory);
  return v;
}

}  // namespace dcec
