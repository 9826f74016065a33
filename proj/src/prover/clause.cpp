#include "dcec/prover/clause.hpp"

#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace dcec {

Formula literal_formula(const Literal& l) {
  Formula a = l.predicate == "=" ? Formula::equals(l.args[0], l.args[1]) : Formula::atom(l.predicate, l.args);
  return l.positive ? a : Formula::negation(std::move(a));
}

std::optional<Literal> literal_from_formula(const Formula& f) {
  bool positive = true;
  const Formula* a = &f;
  if (f.is(Formula::Kind::Not)) {
    positive = false;
    a = &f.body();
  }
  if (a->is(Formula::Kind::Atom))
    return Literal{positive, a->predicate(), {a->terms().begin(), a->terms().end()}};
  if (a->is(Formula::Kind::Equals))
    return Literal{positive, "=", {a->terms().begin(), a->terms().end()}};
  return std::nullopt;
}

std::string print_clause(const Clause& c) {
  if (c.empty()) return "false";
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += " | ";
    out += print_formula(literal_formula(c[i]));
  }
  return out;
}

namespace {

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const Term& a : t.args()) n += term_size(a);
  return n;
}

std::size_t literal_size(const Literal& l) {
  std::size_t n = 1;
  for (const Term& a : l.args) n += term_size(a);
  return n;
}

}  // namespace

std::size_t weight(const Clause& c) {
  std::size_t n = 0;
  for (const Literal& l : c) n += literal_size(l);
  return n;
}

bool is_tautology(const Clause& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Literal& l = c[i];
    if (l.positive && l.predicate == "=" && l.args[0] == l.args[1]) return true;
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (c[j].positive != l.positive && c[j].predicate == l.predicate && c[j].args == l.args) return true;
  }
  return false;
}

// {{{ unification

Term resolve(const Term& t, const Binding& binding) {
  if (t.is_variable()) {
    auto it = binding.find(t.name());
    return it == binding.end() ? t : resolve(it->second, binding);
  }
  if (!t.is_apply() || t.ground()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(resolve(a, binding));
  return Term::apply(t.name(), std::move(args), t.sort());
}

Clause resolve(const Clause& c, const Binding& binding) {
  Clause out;
  out.reserve(c.size());
  for (const Literal& l : c) {
    Literal r{l.positive, l.predicate, {}};
    r.args.reserve(l.args.size());
    for (const Term& a : l.args) r.args.push_back(resolve(a, binding));
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

Term walk(const Term& t, const Binding& b) {
  Term cur = t;
  while (cur.is_variable()) {
    auto it = b.find(cur.name());
    if (it == b.end()) break;
    cur = it->second;
  }
  return cur;
}

bool occurs(const std::string& var, const Term& t, const Binding& b) {
  Term w = walk(t, b);
  if (w.is_variable()) return w.name() == var;
  for (const Term& a : w.args())
    if (occurs(var, a, b)) return true;
  return false;
}

}  // namespace

bool unify(const Term& a, const Term& b, Binding& binding, const Signature& sig) {
  Term x = walk(a, binding);
  Term y = walk(b, binding);
  if (x.is_variable() && y.is_variable()) {
    if (x.name() == y.name()) return true;
    // Bind toward the smaller sort so the survivor fits both positions.
    if (sig.is_subsort(y.sort(), x.sort())) {
      binding.emplace(x.name(), y);
      return true;
    }
    if (sig.is_subsort(x.sort(), y.sort())) {
      binding.emplace(y.name(), x);
      return true;
    }
    return false;
  }
  if (y.is_variable()) std::swap(x, y);
  if (x.is_variable()) {
    if (!sig.is_subsort(y.sort(), x.sort())) return false;
    if (occurs(x.name(), y, binding)) return false;
    binding.emplace(x.name(), y);
    return true;
  }
  if (x.kind() != y.kind() || x.name() != y.name() || x.args().size() != y.args().size()) return false;
  if (x.is_constant()) return x.sort() == y.sort();
  for (std::size_t i = 0; i < x.args().size(); ++i)
    if (!unify(x.args()[i], y.args()[i], binding, sig)) return false;
  return true;
}

bool unify_atoms(const Literal& a, const Literal& b, Binding& binding, const Signature& sig) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!unify(a.args[i], b.args[i], binding, sig)) return false;
  return true;
}

bool match(const Term& pattern, const Term& target, Binding& binding, const Signature& sig) {
  if (pattern.is_variable()) {
    auto it = binding.find(pattern.name());
    if (it != binding.end()) return it->second == target;
    if (!sig.is_subsort(target.sort(), pattern.sort())) return false;
    binding.emplace(pattern.name(), target);
    return true;
  }
  if (pattern.kind() != target.kind() || pattern.name() != target.name() ||
      pattern.args().size() != target.args().size())
    return false;
  if (pattern.is_constant()) return pattern.sort() == target.sort();
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match(pattern.args()[i], target.args()[i], binding, sig)) return false;
  return true;
}

// }}}

namespace {

void collect_vars(const Term& t, std::vector<Term>& out, std::set<std::string>& seen) {
  if (t.is_variable()) {
    if (seen.insert(t.name()).second) out.push_back(t);
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out, seen);
}

std::vector<Term> clause_variables(const Clause& c) {
  std::vector<Term> out;
  std::set<std::string> seen;
  for (const Literal& l : c)
    for (const Term& a : l.args) collect_vars(a, out, seen);
  return out;
}

}  // namespace

Clause rename_variables(const Clause& c, const std::string& prefix) {
  Binding b;
  std::size_t n = 0;
  for (const Term& v : clause_variables(c)) b.emplace(v.name(), Term::variable(prefix + std::to_string(++n), v.sort()));
  if (b.empty()) return c;
  Clause out;
  for (const Literal& l : c) {
    Literal r{l.positive, l.predicate, {}};
    for (const Term& a : l.args) r.args.push_back(substitute_unchecked(a, b));
    out.push_back(std::move(r));
  }
  return out;
}

Clause normalize(Clause c) {
  Clause dedup;
  for (Literal& l : c) {
    bool dup = false;
    for (const Literal& k : dedup)
      if (k == l) {
        dup = true;
        break;
      }
    if (!dup) dedup.push_back(std::move(l));
  }
  return rename_variables(dedup, "X");
}

namespace {

bool subsumes_from(const Clause& c, std::size_t i, const Clause& d, std::vector<bool>& used, Binding& b,
                   const Signature& sig) {
  if (i == c.size()) return true;
  const Literal& l = c[i];
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (used[j] || d[j].positive != l.positive || d[j].predicate != l.predicate ||
        d[j].args.size() != l.args.size())
      continue;
    Binding trial = b;
    bool ok = true;
    for (std::size_t k = 0; ok && k < l.args.size(); ++k) ok = match(l.args[k], d[j].args[k], trial, sig);
    if (!ok) continue;
    used[j] = true;
    if (subsumes_from(c, i + 1, d, used, trial, sig)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

bool subsumes(const Clause& c, const Clause& d, const Signature& sig) {
  if (c.size() > d.size()) return false;
  Clause pattern = rename_variables(c, "?s");
  std::vector<bool> used(d.size(), false);
  Binding b;
  return subsumes_from(pattern, 0, d, used, b, sig);
}

// {{{ clausification

namespace {

using K = Formula::Kind;

// Negation normal form over and/or/quantifiers/literals.
Formula nnf(const Formula& f, bool positive) {
  switch (f.kind()) {
    case K::True:
      return positive ? f : Formula::falsity();
    case K::False:
      return positive ? f : Formula::truth();
    case K::Atom:
    case K::Equals:
      return positive ? f : Formula::negation(f);
    case K::Not:
      return nnf(f.body(), !positive);
    case K::And:
    case K::Or: {
      std::vector<Formula> kids;
      for (const Formula& c : f.children()) kids.push_back(nnf(c, positive));
      const bool conj = f.is(K::And) == positive;
      return conj ? Formula::conjunction(std::move(kids)) : Formula::disjunction(std::move(kids));
    }
    case K::Implies: {
      Formula a = nnf(f.children()[0], !positive);
      Formula b = nnf(f.children()[1], positive);
      return positive ? Formula::disjunction({a, b}) : Formula::conjunction({a, b});
    }
    case K::Iff: {
      const Formula& a = f.children()[0];
      const Formula& b = f.children()[1];
      if (positive)
        return Formula::conjunction({Formula::disjunction({nnf(a, false), nnf(b, true)}),
                                     Formula::disjunction({nnf(a, true), nnf(b, false)})});
      return Formula::conjunction({Formula::disjunction({nnf(a, true), nnf(b, true)}),
                                   Formula::disjunction({nnf(a, false), nnf(b, false)})});
    }
    case K::Forall:
    case K::Exists: {
      const bool universal = f.is(K::Forall) == positive;
      return Formula::quantifier(universal ? K::Forall : K::Exists, f.bound(), nnf(f.body(), positive));
    }
    case K::Modal:
      throw std::invalid_argument("clausify: modal subformula must be shadowed first");
  }
  return f;
}

class Skolemizer {
 public:
  explicit Skolemizer(std::string prefix) : prefix_(std::move(prefix)) {}

  // Removes quantifiers from an NNF formula; universals become fresh
  // variables, existentials Skolem terms over the universals in scope.
  Formula run(const Formula& f, Binding& env, std::vector<Term>& universals) {
    switch (f.kind()) {
      case K::Atom:
      case K::Equals:
        return substitute_unchecked(f, env);
      case K::Not:
        return Formula::negation(run(f.body(), env, universals));
      case K::And:
      case K::Or: {
        std::vector<Formula> kids;
        for (const Formula& c : f.children()) kids.push_back(run(c, env, universals));
        return f.is(K::And) ? Formula::conjunction(std::move(kids)) : Formula::disjunction(std::move(kids));
      }
      case K::Forall: {
        Term v = Term::variable("U" + std::to_string(++vars_), f.bound().sort());
        Binding inner = env;
        inner.insert_or_assign(f.bound().name(), v);
        universals.push_back(v);
        Formula out = run(f.body(), inner, universals);
        universals.pop_back();
        return out;
      }
      case K::Exists: {
        std::string name = prefix_ + "_" + std::to_string(++skolems_);
        Term sk = Term::apply(std::move(name), universals, f.bound().sort());
        Binding inner = env;
        inner.insert_or_assign(f.bound().name(), sk);
        return run(f.body(), inner, universals);
      }
      default:
        return f;
    }
  }

 private:
  std::string prefix_;
  int vars_ = 0;
  int skolems_ = 0;
};

using Cnf = std::vector<Clause>;

Cnf distribute(const Formula& f, std::size_t cap) {
  switch (f.kind()) {
    case K::True:
      return {};
    case K::False:
      return {Clause{}};
    case K::Atom:
    case K::Equals:
    case K::Not:
      return {Clause{*literal_from_formula(f)}};
    case K::And: {
      Cnf out;
      for (const Formula& c : f.children()) {
        Cnf part = distribute(c, cap);
        out.insert(out.end(), part.begin(), part.end());
        if (out.size() > cap) throw std::length_error("clausify: clause limit exceeded");
      }
      return out;
    }
    case K::Or: {
      Cnf acc{Clause{}};
      for (const Formula& c : f.children()) {
        Cnf part = distribute(c, cap);
        Cnf next;
        for (const Clause& a : acc)
          for (const Clause& b : part) {
            Clause merged = a;
            merged.insert(merged.end(), b.begin(), b.end());
            next.push_back(std::move(merged));
            if (next.size() > cap) throw std::length_error("clausify: clause limit exceeded");
          }
        acc = std::move(next);
      }
      return acc;
    }
    default:
      throw std::invalid_argument("clausify: formula not in skolemized NNF");
  }
}

}  // namespace

std::vector<Clause> clausify(const Formula& f, const std::string& prefix, std::size_t max_clauses) {
  Formula n = nnf(f, true);
  Binding env;
  std::vector<Term> universals;
  Formula matrix = Skolemizer(prefix).run(n, env, universals);
  std::vector<Clause> out;
  std::set<std::string> seen;
  for (Clause& c : distribute(matrix, max_clauses)) {
    Clause norm = normalize(std::move(c));
    if (is_tautology(norm)) continue;
    if (seen.insert(print_clause(norm)).second) out.push_back(std::move(norm));
  }
  return out;
}

std::string skolem_prefix(const Formula& original) {
  std::uint32_t h = 2166136261u;
  for (unsigned char ch : print_formula(original)) {
    h ^= ch;
    h *= 16777619u;
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", h);
  return std::string("sk") + buf;
}

// }}}

Formula clause_formula(const Clause& c) {
  if (c.empty()) return Formula::falsity();
  std::vector<Formula> lits;
  for (const Literal& l : c) lits.push_back(literal_formula(l));
  return close_universally(clause_variables(c), Formula::disjunction(std::move(lits)));
}

std::optional<Clause> clause_from_formula(const Formula& f) {
  const Formula* cur = &f;
  while (cur->is(K::Forall)) cur = &cur->body();
  if (cur->is(K::False)) return Clause{};
  Clause out;
  if (cur->is(K::Or)) {
    for (const Formula& c : cur->children()) {
      auto l = literal_from_formula(c);
      if (!l) return std::nullopt;
      out.push_back(std::move(*l));
    }
    return out;
  }
  auto l = literal_from_formula(*cur);
  if (!l) return std::nullopt;
  out.push_back(std::move(*l));
  return out;
}

}  // namespace dcec
