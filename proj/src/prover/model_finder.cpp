#include "dcec/prover/model_finder.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "dcec/core/substitute.hpp"
#include "dcec/prover/sat.hpp"

namespace dcec {

namespace {

struct TooLarge {
  std::string why;
};

void collect_terms(const Term& t, std::set<Term>& ground, std::set<std::string>& functions) {
  if (t.is_apply()) functions.insert(t.name());
  if (t.ground() && !t.is_variable()) ground.insert(t);
  for (const Term& a : t.args()) collect_terms(a, ground, functions);
}

void collect_terms(const Formula& f, std::set<Term>& ground, std::set<std::string>& functions) {
  if (!f.is_quantifier())
    for (const Term& t : f.terms()) collect_terms(t, ground, functions);
  for (const Formula& c : f.children()) collect_terms(c, ground, functions);
}

void count_quantifiers(const Formula& f, std::map<std::string, int>& out) {
  if (f.is_quantifier()) ++out[f.bound().sort()];
  for (const Formula& c : f.children()) count_quantifiers(c, out);
}

class Grounder {
 public:
  Grounder(const Signature& sig, const ModelLimits& limits) : sig_(sig), limits_(limits) {
    top_ = solver_.new_var();
    solver_.add_clause({top_});
  }

  void build_universe(const std::vector<Formula>& fs) {
    std::set<std::string> functions;
    for (const Formula& f : fs) collect_terms(f, universe_, functions);
    std::vector<Term> base;
    for (const Term& t : universe_)
      if (t.is_constant()) base.push_back(t);
    // One anonymous element per quantifier over the sort (at least one, at
    // most three) leaves room for distinct existential witnesses.
    std::map<std::string, int> quantified;
    for (const Formula& f : fs) count_quantifiers(f, quantified);
    for (const std::string& s : sig_.sorts()) {
      if (s == sorts::kBoolean) continue;
      const int n = std::clamp(quantified[s], 1, 3);
      for (int i = 1; i <= n; ++i)
        base.push_back(Term::constant(i == 1 ? "@" + s : "@" + s + std::to_string(i), s));
    }
    universe_.insert(base.begin(), base.end());
    for (const std::string& fn : functions) {
      const SymbolDecl* decl = sig_.function(fn);
      if (!decl) continue;
      std::vector<std::vector<Term>> choices;
      for (const std::string& s : decl->arg_sorts) {
        choices.emplace_back();
        for (const Term& b : base)
          if (sig_.is_subsort(b.sort(), s)) choices.back().push_back(b);
      }
      std::vector<Term> tuple;
      add_applications(fn, decl->result_sort, choices, tuple);
    }
  }

  void assert_formula(const Formula& f) { clause({encode(f, {})}); }

  void close_modal() {
    while (!pending_.empty()) {
      const auto [var, g] = pending_.front();
      pending_.pop_front();
      const bool knows = g.is_modal(ModalOp::Knows);
      const bool epistemic = knows || g.is_modal(ModalOp::Believes);
      if (!epistemic) continue;
      const Formula& body = g.body();
      auto same = [&g](const Formula& b) { return Formula::modal(g.op(), g.agent(), g.moment(), b); };
      if (knows) {
        clause({-var, encode(body, {})});
        clause({-var, prop(Formula::believes(g.agent(), g.moment(), body))});
      }
      if (body.is(Formula::Kind::And)) {
        std::vector<int> back{var};
        for (const Formula& c : body.children()) {
          int p = prop(same(c));
          clause({-var, p});
          back.push_back(-p);
        }
        clause(back);
      }
      if (body.is(Formula::Kind::Implies))
        clause({-var, -prop(same(body.children()[0])), prop(same(body.children()[1]))});
    }
  }

  ModelResult solve() {
    ModelResult r;
    auto sat = solver_.solve(limits_.max_conflicts);
    if (!sat) {
      r.status = ModelStatus::TooLarge;
      r.detail = "conflict limit";
      return r;
    }
    r.status = *sat ? ModelStatus::Satisfiable : ModelStatus::Unsatisfiable;
    if (*sat)
      for (const auto& [key, var] : vars_)
        if (solver_.value(var)) r.true_atoms.push_back(key);
    for (const Term& t : universe_)
      if (t.is_constant() && t.name()[0] != '@') ++r.named_elements[t.sort()];
    return r;
  }

 private:
  void add_applications(const std::string& fn, const std::string& result, const std::vector<std::vector<Term>>& choices,
                        std::vector<Term>& tuple) {
    if (tuple.size() == choices.size()) {
      universe_.insert(Term::apply(fn, tuple, result));
      if (universe_.size() > limits_.max_universe) throw TooLarge{"universe limit"};
      return;
    }
    for (const Term& t : choices[tuple.size()]) {
      tuple.push_back(t);
      add_applications(fn, result, choices, tuple);
      tuple.pop_back();
    }
  }

  const std::vector<Term>& domain(const std::string& sort) {
    auto it = domains_.find(sort);
    if (it != domains_.end()) return it->second;
    std::vector<Term> d;
    for (const Term& t : universe_)
      if (sig_.is_subsort(t.sort(), sort)) d.push_back(t);
    return domains_.emplace(sort, std::move(d)).first->second;
  }

  void check_term(const Term& t) {
    if (t.is_apply() && !universe_.count(t)) throw TooLarge{"term outside the universe: " + print_term(t)};
    for (const Term& a : t.args()) check_term(a);
  }

  void clause(std::vector<int> lits) {
    if (++clauses_ > limits_.max_clauses) throw TooLarge{"clause limit"};
    solver_.add_clause(std::move(lits));
  }

  int var_for(const std::string& key, bool* fresh = nullptr) {
    auto [it, inserted] = vars_.emplace(key, 0);
    if (inserted) it->second = solver_.new_var();
    if (fresh) *fresh = inserted;
    return it->second;
  }

  int prop(const Formula& ground_modal) {
    bool fresh = false;
    int v = var_for(alpha_key(ground_modal), &fresh);
    if (fresh) {
      for (const Term& t : ground_modal.terms()) check_term(t);
      pending_.emplace_back(v, ground_modal);
    }
    return v;
  }

  int junction(bool conj, std::vector<int> lits) {
    const int unit = conj ? top_ : -top_;
    std::vector<int> kept;
    for (int l : lits) {
      if (l == -unit) return -unit;
      if (l != unit) kept.push_back(l);
    }
    if (kept.empty()) return unit;
    if (kept.size() == 1) return kept[0];
    const int v = solver_.new_var();
    // conj: v <-> and(kept); disj: v <-> or(kept)
    std::vector<int> big{conj ? v : -v};
    for (int l : kept) {
      clause(conj ? std::vector<int>{-v, l} : std::vector<int>{v, -l});
      big.push_back(conj ? -l : l);
    }
    clause(big);
    return v;
  }

  int encode(const Formula& f, const Binding& env) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True:
        return top_;
      case K::False:
        return -top_;
      case K::Atom:
      case K::Equals: {
        Formula g = env.empty() ? f : substitute_unchecked(f, env);
        for (const Term& t : g.terms()) check_term(t);
        return var_for(print_formula(g));
      }
      case K::Not:
        return -encode(f.body(), env);
      case K::And:
      case K::Or: {
        std::vector<int> lits;
        for (const Formula& c : f.children()) lits.push_back(encode(c, env));
        return junction(f.is(K::And), std::move(lits));
      }
      case K::Implies:
        return junction(false, {-encode(f.children()[0], env), encode(f.children()[1], env)});
      case K::Iff: {
        const int a = encode(f.children()[0], env);
        const int b = encode(f.children()[1], env);
        const int v = solver_.new_var();
        clause({-v, -a, b});
        clause({-v, a, -b});
        clause({v, a, b});
        clause({v, -a, -b});
        return v;
      }
      case K::Forall:
      case K::Exists: {
        std::vector<int> lits;
        const Term& x = f.bound();
        for (const Term& e : domain(x.sort())) {
          Binding inner = env;
          inner.insert_or_assign(x.name(), e);
          lits.push_back(encode(f.body(), inner));
        }
        return junction(f.is(K::Forall), std::move(lits));
      }
      case K::Modal:
        return prop(env.empty() ? f : substitute_unchecked(f, env));
    }
    return top_;
  }

  const Signature& sig_;
  const ModelLimits& limits_;
  SatSolver solver_;
  int top_ = 0;
  std::size_t clauses_ = 0;
  std::set<Term> universe_;
  std::map<std::string, std::vector<Term>> domains_;
  std::map<std::string, int> vars_;
  std::deque<std::pair<int, Formula>> pending_;
};

}  // namespace

ModelResult find_model(const Signature& sig, const std::vector<Formula>& formulas, const ModelLimits& limits) {
  try {
    Grounder g(sig, limits);
    g.build_universe(formulas);
    for (const Formula& f : formulas) g.assert_formula(f);
    g.close_modal();
    return g.solve();
  } catch (const TooLarge& e) {
    ModelResult r;
    r.status = ModelStatus::TooLarge;
    r.detail = e.why;
    return r;
  }
}

}  // namespace dcec
