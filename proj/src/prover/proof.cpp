#include "dcec/prover/proof.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "dcec/core/error.hpp"
#include "dcec/prover/clause.hpp"
#include "dcec/prover/modal.hpp"
#include "dcec/prover/shadow.hpp"

namespace dcec {

std::string serialize(const Proof& p) {
  std::string out;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const ProofStep& s = p.steps[i];
    out += std::to_string(i + 1) + ". " + print_formula(s.formula) + " [" + s.rule;
    for (std::size_t j : s.premises) out += " " + std::to_string(j + 1);
    out += "]\n";
  }
  return out;
}

namespace {

bool is_epistemic(const Formula& f) { return f.is_modal(ModalOp::Knows) || f.is_modal(ModalOp::Believes); }

bool same_frame(const Formula& a, const Formula& b) {
  return a.kind() == Formula::Kind::Modal && b.kind() == Formula::Kind::Modal && a.op() == b.op() &&
         a.agent() == b.agent() && a.moment() == b.moment();
}

class Checker {
 public:
  Checker(const Proof& p, const std::vector<Formula>& assumptions, const Formula& goal, const Signature& sig)
      : p_(p), goal_(goal), sig_(sig) {
    for (const Formula& a : assumptions) assumed_.insert(alpha_key(a));
  }

  VerifyResult run() {
    if (p_.steps.empty()) return reject(0, "empty proof");
    for (std::size_t i = 0; i < p_.steps.size(); ++i) {
      const ProofStep& s = p_.steps[i];
      for (std::size_t j : s.premises)
        if (j >= i) return reject(i, "forward reference");
      try {
        sig_.check(s.formula, true);
      } catch (const SortError& e) {
        return reject(i, std::string("ill-sorted: ") + e.what());
      }
      std::string why;
      try {
        why = check_step(i);
      } catch (const std::exception& e) {
        why = std::string("check failed: ") + e.what();
      }
      if (!why.empty()) return reject(i, why);
    }
    if (!alpha_equivalent(p_.steps.back().formula, goal_))
      return reject(p_.steps.size() - 1, "last step is not the goal");
    return {};
  }

 private:
  static VerifyResult reject(std::size_t i, std::string reason) { return {false, i, std::move(reason)}; }

  const Formula& premise(std::size_t i, std::size_t k) const { return p_.steps[p_.steps[i].premises[k]].formula; }

  std::string check_step(std::size_t i) {
    const ProofStep& s = p_.steps[i];
    const Formula& f = s.formula;
    const std::size_t n = s.premises.size();
    const std::string& r = s.rule;
    if (r == rules::kAssume) {
      if (n) return "assume takes no premises";
      return assumed_.count(alpha_key(f)) ? "" : "not an assumption";
    }
    if (r == rules::kS1) {
      if (n != 1) return "S1 takes one premise";
      const Formula& k = premise(i, 0);
      if (!k.is_modal(ModalOp::Knows)) return "S1 requires K";
      return alpha_equivalent(k.body(), f) ? "" : "S1 conclusion must be the known formula";
    }
    if (r == rules::kS2) {
      if (n != 1) return "S2 takes one premise";
      const Formula& k = premise(i, 0);
      if (!k.is_modal(ModalOp::Knows)) return "S2 requires K";
      if (!f.is_modal(ModalOp::Believes) || f.agent() != k.agent() || f.moment() != k.moment() ||
          !alpha_equivalent(f.body(), k.body()))
        return "S2 conclusion must be the matching belief";
      return "";
    }
    if (r == rules::kS3) {
      if (n != 2) return "S3 takes two premises";
      const Formula& a = premise(i, 0);
      const Formula& imp = premise(i, 1);
      if (!is_epistemic(a) || !same_frame(a, imp) || !same_frame(a, f)) return "S3 requires matching K or B";
      if (!imp.body().is(Formula::Kind::Implies)) return "S3 requires a known implication";
      if (!alpha_equivalent(imp.body().children()[0], a.body())) return "S3 antecedent mismatch";
      return alpha_equivalent(imp.body().children()[1], f.body()) ? "" : "S3 consequent mismatch";
    }
    if (r == rules::kS4) return check_s4(i);
    if (r == rules::kNegateGoal) {
      if (n) return "negate-goal takes no premises";
      return alpha_equivalent(f, Formula::negation(goal_)) ? "" : "not the negated goal";
    }
    if (r == rules::kCnf) {
      if (n != 1) return "cnf takes one premise";
      auto c = clause_of(i);
      if (!c) return "not a clause";
      const auto& cnf = clauses_of_premise(s.premises[0]);
      return cnf.count(print_clause(*c)) ? "" : "clause not in the premise's clausal form";
    }
    if (r == rules::kResolve) {
      if (n != 2) return "resolve takes two premises";
      auto c = clause_of(i);
      auto a = clause_of(s.premises[0]);
      auto b = clause_of(s.premises[1]);
      if (!c || !a || !b) return "resolve requires clauses";
      return resolves_to(*a, *b, *c) ? "" : "not a binary resolvent of its premises";
    }
    if (r == rules::kFactor) {
      if (n != 1) return "factor takes one premise";
      auto c = clause_of(i);
      auto a = clause_of(s.premises[0]);
      if (!c || !a) return "factor requires clauses";
      return factors_to(*a, *c) ? "" : "not a factor of its premise";
    }
    if (r == rules::kRefute) {
      if (n != 2) return "refute takes two premises";
      const ProofStep& neg = p_.steps[s.premises[0]];
      if (neg.rule != rules::kNegateGoal) return "refute requires the negated goal";
      if (!premise(i, 1).is(Formula::Kind::False)) return "refute requires a derivation of false";
      return alpha_equivalent(f, goal_) ? "" : "refute must conclude the goal";
    }
    return "unknown rule '" + r + "'";
  }

  std::string check_s4(std::size_t i) {
    const ProofStep& s = p_.steps[i];
    const Formula& f = s.formula;
    if (!is_epistemic(f)) return "S4 requires K or B";
    if (s.premises.size() == 1) {
      const Formula& c = premise(i, 0);
      if (same_frame(c, f) && c.body().is(Formula::Kind::And))
        for (const Formula& conj : c.body().children())
          if (alpha_equivalent(conj, f.body())) return "";
    }
    if (!f.body().is(Formula::Kind::And) || f.body().children().size() != s.premises.size())
      return "S4 premises do not match the conjunction";
    for (std::size_t k = 0; k < s.premises.size(); ++k) {
      const Formula& c = premise(i, k);
      if (!same_frame(c, f) || !alpha_equivalent(c.body(), f.body().children()[k]))
        return "S4 premises do not match the conjunction";
    }
    return "";
  }

  std::optional<Clause> clause_of(std::size_t i) {
    auto it = clause_cache_.find(i);
    if (it != clause_cache_.end()) return it->second;
    std::optional<Clause> c = clause_from_formula(sm_.shadow(p_.steps[i].formula));
    if (c) c = normalize(std::move(*c));
    clause_cache_.emplace(i, c);
    return c;
  }

  const std::set<std::string>& clauses_of_premise(std::size_t j) {
    auto it = cnf_cache_.find(j);
    if (it != cnf_cache_.end()) return it->second;
    const Formula& f = p_.steps[j].formula;
    std::set<std::string> out;
    for (const Clause& c : clausify(sm_.shadow(f), skolem_prefix(f))) out.insert(print_clause(c));
    return cnf_cache_.emplace(j, std::move(out)).first->second;
  }

  bool resolves_to(const Clause& a0, const Clause& b0, const Clause& want) const {
    const Clause a = rename_variables(a0, "L");
    const Clause b = rename_variables(b0, "R");
    const std::string target = print_clause(want);
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = 0; y < b.size(); ++y) {
        if (a[x].positive == b[y].positive) continue;
        Binding mgu;
        if (!unify_atoms(a[x], b[y], mgu, sig_)) continue;
        Clause r;
        for (std::size_t k = 0; k < a.size(); ++k)
          if (k != x) r.push_back(a[k]);
        for (std::size_t k = 0; k < b.size(); ++k)
          if (k != y) r.push_back(b[k]);
        if (print_clause(normalize(resolve(r, mgu))) == target) return true;
      }
    return false;
  }

  bool factors_to(const Clause& a, const Clause& want) const {
    const std::string target = print_clause(want);
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = x + 1; y < a.size(); ++y) {
        if (a[x].positive != a[y].positive) continue;
        Binding mgu;
        if (!unify_atoms(a[x], a[y], mgu, sig_)) continue;
        if (print_clause(normalize(resolve(a, mgu))) == target) return true;
      }
    return false;
  }

  const Proof& p_;
  const Formula& goal_;
  const Signature& sig_;
  std::set<std::string> assumed_;
  ShadowMap sm_;
  std::map<std::size_t, std::optional<Clause>> clause_cache_;
  std::map<std::size_t, std::set<std::string>> cnf_cache_;
};

}  // namespace

VerifyResult verify_proof(const Proof& p, const std::vector<Formula>& assumptions, const Formula& goal,
                          const Signature& sig) {
  return Checker(p, assumptions, goal, sig).run();
}

}  // namespace dcec
