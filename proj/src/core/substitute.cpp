#include "dcec/core/substitute.hpp"

#include <set>

#include "dcec/core/error.hpp"

namespace dcec {

namespace {

Term subst_term(const Term& t, const Binding& b) {
  if (t.is_variable()) {
    auto it = b.find(t.name());
    return it == b.end() ? t : it->second;
  }
  if (t.is_constant() || t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(subst_term(a, b));
  return Term::apply(t.name(), std::move(args), t.sort());
}

void names_in(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) out.insert(t.name());
  for (const Term& a : t.args()) names_in(a, out);
}

Formula subst_formula(const Formula& f, const Binding& b) {
  using K = Formula::Kind;
  if (b.empty()) return f;
  switch (f.kind()) {
    case K::True:
    case K::False:
      return f;
    case K::Atom: {
      std::vector<Term> args;
      for (const Term& t : f.terms()) args.push_back(subst_term(t, b));
      return Formula::atom(f.predicate(), std::move(args));
    }
    case K::Equals:
      return Formula::equals(subst_term(f.terms()[0], b), subst_term(f.terms()[1], b));
    case K::Not:
      return Formula::negation(subst_formula(f.body(), b));
    case K::And:
    case K::Or: {
      std::vector<Formula> kids;
      for (const Formula& c : f.children()) kids.push_back(subst_formula(c, b));
      return f.is(K::And) ? Formula::conjunction(std::move(kids)) : Formula::disjunction(std::move(kids));
    }
    case K::Implies:
      return Formula::implication(subst_formula(f.children()[0], b), subst_formula(f.children()[1], b));
    case K::Iff:
      return Formula::biconditional(subst_formula(f.children()[0], b), subst_formula(f.children()[1], b));
    case K::Forall:
    case K::Exists: {
      const Term& v = f.bound();
      Binding inner;
      std::set<std::string> incoming;
      std::set<std::string> body_free;
      for (const Term& fv : free_variables(f.body())) body_free.insert(fv.name());
      for (const auto& [name, term] : b) {
        if (name == v.name() || !body_free.count(name)) continue;
        inner.emplace(name, term);
        names_in(term, incoming);
      }
      if (inner.empty()) return f;
      if (!incoming.count(v.name()))
        return Formula::quantifier(f.kind(), v, subst_formula(f.body(), inner));
      // Rename the bound variable away from every name in play.
      std::set<std::string> taken = incoming;
      taken.insert(body_free.begin(), body_free.end());
      std::string fresh = v.name() + "'";
      while (taken.count(fresh)) fresh += "'";
      Term renamed = Term::variable(fresh, v.sort());
      inner.emplace(v.name(), renamed);
      return Formula::quantifier(f.kind(), renamed, subst_formula(f.body(), inner));
    }
    case K::Modal: {
      Term agent = subst_term(f.agent(), b);
      Term moment = subst_term(f.moment(), b);
      Formula body = subst_formula(f.body(), b);
      if (f.op() == ModalOp::Obligated)
        return Formula::obligation(std::move(agent), std::move(moment), subst_term(f.situation(), b),
                                   std::move(body));
      return Formula::modal(f.op(), std::move(agent), std::move(moment), std::move(body));
    }
  }
  return f;
}

void check_binding(const Binding& binding, const Signature& sig, const Formula* f) {
  std::map<std::string, std::string> var_sorts;
  if (f)
    for (const Term& v : free_variables(*f)) var_sorts[v.name()] = v.sort();
  for (const auto& [name, term] : binding) {
    auto it = var_sorts.find(name);
    if (it == var_sorts.end()) continue;
    if (!sig.is_subsort(term.sort(), it->second))
      throw SortError("sort mismatch binding '" + name + "': expected " + it->second + ", got " + term.sort());
  }
}

void check_term_binding(const Term& t, const Binding& binding, const Signature& sig) {
  for (const Term& v : free_variables(t)) {
    auto it = binding.find(v.name());
    if (it != binding.end() && !sig.is_subsort(it->second.sort(), v.sort()))
      throw SortError("sort mismatch binding '" + v.name() + "': expected " + v.sort() + ", got " +
                      it->second.sort());
  }
}

}  // namespace

Formula substitute(const Formula& f, const Binding& binding, const Signature& sig) {
  check_binding(binding, sig, &f);
  return subst_formula(f, binding);
}

Term substitute(const Term& t, const Binding& binding, const Signature& sig) {
  check_term_binding(t, binding, sig);
  return subst_term(t, binding);
}

Formula substitute_unchecked(const Formula& f, const Binding& binding) { return subst_formula(f, binding); }

Term substitute_unchecked(const Term& t, const Binding& binding) { return subst_term(t, binding); }

}  // namespace dcec
