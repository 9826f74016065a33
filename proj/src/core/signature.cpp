#include "dcec/core/signature.hpp"

#include "dcec/core/error.hpp"
#include "dcec/core/sexpr.hpp"

namespace dcec {

Signature::Signature() {
  using namespace sorts;
  for (auto s : {kAgent, kMoment, kActionType, kEvent, kFluent, kBoolean, kSituation})
    parents_[std::string(s)];
  parents_[std::string(kAction)] = {std::string(kEvent)};
  // Goals appear both as happens(g, t) and holds(g, t).
  parents_[std::string(kGoal)] = {std::string(kEvent), std::string(kFluent)};

  const std::string agent(kAgent), moment(kMoment), atype(kActionType), event(kEvent),
      fluent(kFluent), goal(kGoal);
  predicates_["holds"] = {{fluent, moment}, std::string(kBoolean)};
  predicates_["happens"] = {{event, moment}, std::string(kBoolean)};
  predicates_["prior"] = {{moment, moment}, std::string(kBoolean)};
  predicates_["initiates"] = {{event, fluent, moment}, std::string(kBoolean)};
  predicates_["terminates"] = {{event, fluent, moment}, std::string(kBoolean)};
  predicates_["Prevents"] = {{agent, agent, goal, atype, moment}, std::string(kBoolean)};
  predicates_["Block"] = {{agent, agent, goal, atype, moment}, std::string(kBoolean)};
  functions_["action"] = {{agent, atype}, std::string(kAction)};
  constants_[std::string(kDefaultSituation)] = std::string(kSituation);
}

void Signature::check_name_free(const std::string& name) const {
  if (!is_identifier(name)) throw SortError("not an identifier: '" + name + "'");
  if (constants_.count(name) || predicates_.count(name) || functions_.count(name))
    throw SortError("symbol '" + name + "' is already declared");
  if (modal_from_keyword(name) || name == "not" || name == "and" || name == "or" ||
      name == "implies" || name == "iff" || name == "forall" || name == "exists" ||
      name == "true" || name == "false")
    throw SortError("'" + name + "' is a reserved word");
}

void Signature::add_sort(const std::string& name, const std::vector<std::string>& parents) {
  if (!is_identifier(name)) throw SortError("not an identifier: '" + name + "'");
  if (has_sort(name)) throw SortError("sort '" + name + "' is already declared");
  for (const auto& p : parents)
    if (!has_sort(p)) throw SortError("unknown parent sort '" + p + "' for '" + name + "'");
  parents_[name] = std::set<std::string>(parents.begin(), parents.end());
}

void Signature::add_constant(const std::string& name, const std::string& sort) {
  check_name_free(name);
  if (!has_sort(sort)) throw SortError("unknown sort '" + sort + "' for constant '" + name + "'");
  constants_[name] = sort;
}

void Signature::add_predicate(const std::string& name, std::vector<std::string> arg_sorts) {
  check_name_free(name);
  for (const auto& s : arg_sorts)
    if (!has_sort(s)) throw SortError("unknown sort '" + s + "' in predicate '" + name + "'");
  predicates_[name] = {std::move(arg_sorts), std::string(sorts::kBoolean)};
}

void Signature::add_function(const std::string& name, std::vector<std::string> arg_sorts,
                             std::string result_sort) {
  check_name_free(name);
  for (const auto& s : arg_sorts)
    if (!has_sort(s)) throw SortError("unknown sort '" + s + "' in function '" + name + "'");
  if (!has_sort(result_sort))
    throw SortError("unknown result sort '" + result_sort + "' in function '" + name + "'");
  functions_[name] = {std::move(arg_sorts), std::move(result_sort)};
}

bool Signature::is_subsort(const std::string& sub, const std::string& super) const {
  if (sub == super) return true;
  auto it = parents_.find(sub);
  if (it == parents_.end()) return false;
  for (const auto& p : it->second)
    if (is_subsort(p, super)) return true;
  return false;
}

const std::set<std::string>& Signature::parents(const std::string& sort) const {
  static const std::set<std::string> kNone;
  auto it = parents_.find(sort);
  return it == parents_.end() ? kNone : it->second;
}

std::vector<std::string> Signature::sorts() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : parents_) out.push_back(name);
  return out;
}

std::optional<std::string> Signature::constant_sort(const std::string& name) const {
  auto it = constants_.find(name);
  if (it != constants_.end()) return it->second;
  if (is_integer(name)) return std::string(sorts::kMoment);
  return std::nullopt;
}

const SymbolDecl* Signature::predicate(const std::string& name) const {
  auto it = predicates_.find(name);
  return it == predicates_.end() ? nullptr : &it->second;
}

const SymbolDecl* Signature::function(const std::string& name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : &it->second;
}

namespace {

void expect_sort(const Signature& sig, const Term& t, const std::string& expected,
                 const std::string& where) {
  if (!sig.is_subsort(t.sort(), expected))
    throw SortError("sort mismatch in " + where + ": expected " + expected + ", got " + t.sort() +
                    " for '" + print_term(t) + "'");
}

}  // namespace

void Signature::check(const Term& t, bool allow_undeclared_functions) const {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (!has_sort(t.sort())) throw SortError("variable '" + t.name() + "' has unknown sort '" + t.sort() + "'");
      return;
    case Term::Kind::Constant: {
      auto s = constant_sort(t.name());
      if (!s) throw SortError("unknown constant '" + t.name() + "'");
      if (*s != t.sort())
        throw SortError("constant '" + t.name() + "' is declared " + *s + ", used as " + t.sort());
      return;
    }
    case Term::Kind::Apply: {
      const SymbolDecl* decl = function(t.name());
      for (const Term& a : t.args()) check(a, allow_undeclared_functions);
      if (!decl) {
        if (allow_undeclared_functions && has_sort(t.sort())) return;
        throw SortError("unknown function symbol '" + t.name() + "'");
      }
      if (decl->arg_sorts.size() != t.args().size())
        throw SortError("arity mismatch for '" + t.name() + "'");
      if (decl->result_sort != t.sort())
        throw SortError("function '" + t.name() + "' returns " + decl->result_sort);
      for (std::size_t i = 0; i < decl->arg_sorts.size(); ++i)
        expect_sort(*this, t.args()[i], decl->arg_sorts[i], "'" + t.name() + "'");
      return;
    }
  }
}

void Signature::check(const Formula& f, bool allow_undeclared_functions) const {
  using K = Formula::Kind;
  for (const Term& t : f.terms()) check(t, allow_undeclared_functions);
  switch (f.kind()) {
    case K::True:
    case K::False:
      return;
    case K::Atom: {
      const SymbolDecl* decl = predicate(f.predicate());
      if (!decl) {
        // Shadow atoms introduced by the prover are not part of any signature.
        if (allow_undeclared_functions && !f.predicate().empty() && f.predicate()[0] == '$') return;
        throw SortError("unknown predicate '" + f.predicate() + "'");
      }
      if (decl->arg_sorts.size() != f.terms().size())
        throw SortError("arity mismatch for '" + f.predicate() + "'");
      for (std::size_t i = 0; i < decl->arg_sorts.size(); ++i)
        expect_sort(*this, f.terms()[i], decl->arg_sorts[i], "'" + f.predicate() + "'");
      return;
    }
    case K::Equals: {
      const auto& a = f.terms()[0];
      const auto& b = f.terms()[1];
      if (!is_subsort(a.sort(), b.sort()) && !is_subsort(b.sort(), a.sort()))
        throw SortError("sort mismatch in '=': " + a.sort() + " vs " + b.sort());
      return;
    }
    case K::Modal:
      expect_sort(*this, f.agent(), std::string(sorts::kAgent), std::string(keyword(f.op())));
      expect_sort(*this, f.moment(), std::string(sorts::kMoment), std::string(keyword(f.op())));
      if (f.op() == ModalOp::Obligated) {
        if (f.terms().size() != 3) throw SortError("obligation without situation term");
        expect_sort(*this, f.situation(), std::string(sorts::kSituation), "obligated");
      } else if (f.terms().size() != 2) {
        throw SortError(std::string(keyword(f.op())) + " takes agent, moment, body");
      }
      break;
    default:
      break;
  }
  for (const Formula& c : f.children()) check(c, allow_undeclared_functions);
}

}  // namespace dcec
