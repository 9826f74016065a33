#include "dcec/prover/shadow.hpp"

#include <set>

#include "dcec/core/substitute.hpp"

namespace dcec {

namespace {

// Builds the template of a modal formula, collecting lifted terms in `args`.
class Lifter {
 public:
  std::vector<Term> args;
  std::vector<Term> placeholders;

  Formula formula(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True:
      case K::False:
        return f;
      case K::Atom: {
        std::vector<Term> ts;
        for (const Term& t : f.terms()) ts.push_back(term(t));
        return Formula::atom(f.predicate(), std::move(ts));
      }
      case K::Equals:
        return Formula::equals(term(f.terms()[0]), term(f.terms()[1]));
      case K::Not:
        return Formula::negation(formula(f.body()));
      case K::And:
      case K::Or: {
        std::vector<Formula> kids;
        for (const Formula& c : f.children()) kids.push_back(formula(c));
        return f.is(K::And) ? Formula::conjunction(std::move(kids)) : Formula::disjunction(std::move(kids));
      }
      case K::Implies:
      case K::Iff: {
        Formula a = formula(f.children()[0]);
        Formula b = formula(f.children()[1]);
        return f.is(K::Implies) ? Formula::implication(std::move(a), std::move(b))
                                : Formula::biconditional(std::move(a), std::move(b));
      }
      case K::Forall:
      case K::Exists: {
        bound_.push_back(f.bound().name());
        Formula body = formula(f.body());
        bound_.pop_back();
        return Formula::quantifier(f.kind(), f.bound(), std::move(body));
      }
      case K::Modal: {
        Term agent = term(f.agent());
        Term moment = term(f.moment());
        if (f.op() == ModalOp::Obligated) {
          Term situation = term(f.situation());
          return Formula::obligation(std::move(agent), std::move(moment), std::move(situation), formula(f.body()));
        }
        return Formula::modal(f.op(), std::move(agent), std::move(moment), formula(f.body()));
      }
    }
    return f;
  }

 private:
  bool mentions_bound(const Term& t) const {
    for (const auto& b : bound_)
      if (t.contains_variable(b)) return true;
    return false;
  }

  Term term(const Term& t) {
    if (!mentions_bound(t)) {
      Term ph = Term::variable("%" + std::to_string(args.size() + 1), t.sort());
      args.push_back(t);
      placeholders.push_back(ph);
      return ph;
    }
    if (!t.is_apply()) return t;  // a bound variable
    std::vector<Term> kids;
    for (const Term& a : t.args()) kids.push_back(term(a));
    return Term::apply(t.name(), std::move(kids), t.sort());
  }

  std::vector<std::string> bound_;
};

}  // namespace

Formula ShadowMap::shadow_modal(const Formula& m) {
  Lifter lifter;
  Formula tmpl = lifter.formula(m);
  const std::string key = alpha_key(tmpl);
  auto it = by_key_.find(key);
  std::size_t idx;
  if (it == by_key_.end()) {
    idx = entries_.size();
    std::string symbol = "$sh" + std::to_string(idx + 1);
    by_key_.emplace(key, idx);
    by_symbol_.emplace(symbol, idx);
    entries_.push_back({std::move(symbol), std::move(tmpl), std::move(lifter.placeholders)});
  } else {
    idx = it->second;
  }
  return Formula::atom(entries_[idx].symbol, std::move(lifter.args));
}

Formula ShadowMap::shadow(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Modal:
      return shadow_modal(f);
    case K::True:
    case K::False:
    case K::Atom:
    case K::Equals:
      return f;
    case K::Not:
      return Formula::negation(shadow(f.body()));
    case K::And:
    case K::Or: {
      std::vector<Formula> kids;
      for (const Formula& c : f.children()) kids.push_back(shadow(c));
      return f.is(K::And) ? Formula::conjunction(std::move(kids)) : Formula::disjunction(std::move(kids));
    }
    case K::Implies:
      return Formula::implication(shadow(f.children()[0]), shadow(f.children()[1]));
    case K::Iff:
      return Formula::biconditional(shadow(f.children()[0]), shadow(f.children()[1]));
    case K::Forall:
    case K::Exists:
      return Formula::quantifier(f.kind(), f.bound(), shadow(f.body()));
  }
  return f;
}

std::optional<Formula> ShadowMap::unshadow_atom(const std::string& predicate, std::span<const Term> args) const {
  auto it = by_symbol_.find(predicate);
  if (it == by_symbol_.end()) return std::nullopt;
  const Entry& e = entries_[it->second];
  if (e.placeholders.size() != args.size()) return std::nullopt;
  Binding b;
  for (std::size_t i = 0; i < args.size(); ++i) b.emplace(e.placeholders[i].name(), args[i]);
  return substitute_unchecked(e.tmpl, b);
}

Formula ShadowMap::unshadow(const Formula& f) const {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
      if (auto m = unshadow_atom(f.predicate(), f.terms())) return *m;
      return f;
    case K::True:
    case K::False:
    case K::Equals:
    case K::Modal:
      return f;
    case K::Not:
      return Formula::negation(unshadow(f.body()));
    case K::And:
    case K::Or: {
      std::vector<Formula> kids;
      for (const Formula& c : f.children()) kids.push_back(unshadow(c));
      return f.is(K::And) ? Formula::conjunction(std::move(kids)) : Formula::disjunction(std::move(kids));
    }
    case K::Implies:
      return Formula::implication(unshadow(f.children()[0]), unshadow(f.children()[1]));
    case K::Iff:
      return Formula::biconditional(unshadow(f.children()[0]), unshadow(f.children()[1]));
    case K::Forall:
    case K::Exists:
      return Formula::quantifier(f.kind(), f.bound(), unshadow(f.body()));
  }
  return f;
}

}  // namespace dcec
