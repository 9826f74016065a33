#include "dcec/core/parse.hpp"

#include <algorithm>

namespace dcec {

namespace {

[[noreturn]] void fail(const Sexpr& at, const std::string& message) { throw ParseError(at.pos, message); }

void expect_sort(const Signature& sig, const Sexpr& at, const Term& t, const std::string& expected,
                 const std::string& where) {
  if (!sig.is_subsort(t.sort(), expected))
    fail(at, "sort mismatch in " + where + ": expected " + expected + ", got " + t.sort());
}

const Term* lookup(const VarEnv& env, const std::string& name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->name() == name) return &*it;
  return nullptr;
}

bool is_connective(const std::string& w) {
  return w == "not" || w == "and" || w == "or" || w == "implies" || w == "iff";
}

class FormulaParser {
 public:
  FormulaParser(const Signature& sig, VarEnv env) : sig_(sig), env_(std::move(env)) {}

  Formula formula(const Sexpr& e) {
    if (e.is_atom()) return bare_formula(e);
    if (e.items.empty()) fail(e, "empty list where a formula was expected");
    const Sexpr& head = e.items.front();
    if (head.is_list) fail(head, "expected an operator or predicate symbol");
    const std::string& w = head.atom;
    const std::size_t nargs = e.items.size() - 1;

    if (is_connective(w)) return connective(e, w, nargs);
    if (w == "forall" || w == "exists") return quantifier(e, w);
    if (w == "=") {
      if (nargs != 2) fail(e, "arity mismatch for '=' (needs 2 terms, got " + std::to_string(nargs) + ")");
      Term a = parse_term(e.items[1], sig_, env_);
      Term b = parse_term(e.items[2], sig_, env_);
      if (!sig_.is_subsort(a.sort(), b.sort()) && !sig_.is_subsort(b.sort(), a.sort()))
        fail(e, "sort mismatch in '=': " + a.sort() + " vs " + b.sort());
      return Formula::equals(std::move(a), std::move(b));
    }
    if (auto op = modal_from_keyword(w)) return modal(e, *op, nargs);
    if (w == "true" || w == "false") fail(e, "'" + w + "' takes no arguments");
    return atom(e, w, nargs);
  }

 private:
  Formula bare_formula(const Sexpr& e) {
    if (e.atom == "true") return Formula::truth();
    if (e.atom == "false") return Formula::falsity();
    const SymbolDecl* decl = sig_.predicate(e.atom);
    if (decl && decl->arg_sorts.empty()) return Formula::atom(e.atom, {});
    if (decl) fail(e, "arity mismatch for '" + e.atom + "' (needs " +
                          std::to_string(decl->arg_sorts.size()) + " arguments, got 0)");
    if (is_connective(e.atom) || modal_from_keyword(e.atom) || e.atom == "forall" || e.atom == "exists")
      fail(e, "arity mismatch for '" + e.atom + "'");
    fail(e, "unknown symbol '" + e.atom + "' where a formula was expected");
  }

  Formula connective(const Sexpr& e, const std::string& w, std::size_t nargs) {
    std::vector<Formula> kids;
    for (std::size_t i = 1; i < e.items.size(); ++i) kids.push_back(formula(e.items[i]));
    if (w == "not") {
      if (nargs != 1) fail(e, "arity mismatch for 'not' (needs 1 formula, got " + std::to_string(nargs) + ")");
      return Formula::negation(std::move(kids[0]));
    }
    if (w == "and" || w == "or") {
      if (nargs == 0) fail(e, "arity mismatch for '" + w + "' (needs at least 1 formula)");
      return w == "and" ? Formula::conjunction(std::move(kids)) : Formula::disjunction(std::move(kids));
    }
    if (nargs != 2) fail(e, "arity mismatch for '" + w + "' (needs 2 formulas, got " + std::to_string(nargs) + ")");
    return w == "implies" ? Formula::implication(std::move(kids[0]), std::move(kids[1]))
                          : Formula::biconditional(std::move(kids[0]), std::move(kids[1]));
  }

  Formula quantifier(const Sexpr& e, const std::string& w) {
    // (forall x : Sort body)
    if (e.items.size() != 5 || !e.items[2].is_atom(":"))
      fail(e, "arity mismatch for '" + w + "' (expected (" + w + " var : Sort formula))");
    const Sexpr& var = e.items[1];
    const Sexpr& sort = e.items[3];
    if (var.is_list || !is_identifier(var.atom)) fail(var, "expected a variable name");
    if (sort.is_list || !sig_.has_sort(sort.atom)) fail(sort, "unknown sort '" + (sort.is_list ? std::string("(...)") : sort.atom) + "'");
    Term v = Term::variable(var.atom, sort.atom);
    env_.push_back(v);
    Formula body = formula(e.items[4]);
    env_.pop_back();
    return Formula::quantifier(w == "forall" ? Formula::Kind::Forall : Formula::Kind::Exists, std::move(v),
                               std::move(body));
  }

  Formula modal(const Sexpr& e, ModalOp op, std::size_t nargs) {
    const std::string w(keyword(op));
    if (op == ModalOp::Obligated) {
      if (nargs != 3 && nargs != 4)
        fail(e, "arity mismatch for 'obligated' (needs agent, moment, [situation,] body)");
    } else if (nargs != 3) {
      fail(e, "arity mismatch for '" + w + "' (needs agent, moment, body)");
    }
    Term agent = parse_term(e.items[1], sig_, env_);
    expect_sort(sig_, e.items[1], agent, std::string(sorts::kAgent), "'" + w + "'");
    Term moment = parse_term(e.items[2], sig_, env_);
    expect_sort(sig_, e.items[2], moment, std::string(sorts::kMoment), "'" + w + "'");
    if (op == ModalOp::Obligated && nargs == 4) {
      Term situation = parse_term(e.items[3], sig_, env_);
      expect_sort(sig_, e.items[3], situation, std::string(sorts::kSituation), "'obligated'");
      Formula body = formula(e.items[4]);
      return Formula::obligation(std::move(agent), std::move(moment), std::move(situation), std::move(body));
    }
    Formula body = formula(e.items[3]);
    return Formula::modal(op, std::move(agent), std::move(moment), std::move(body));
  }

  Formula atom(const Sexpr& e, const std::string& w, std::size_t nargs) {
    const SymbolDecl* decl = sig_.predicate(w);
    if (!decl) fail(e.items.front(), "unknown symbol '" + w + "'");
    if (decl->arg_sorts.size() != nargs)
      fail(e, "arity mismatch for '" + w + "' (needs " + std::to_string(decl->arg_sorts.size()) +
                  " arguments, got " + std::to_string(nargs) + ")");
    std::vector<Term> args;
    for (std::size_t i = 0; i < nargs; ++i) {
      Term t = parse_term(e.items[i + 1], sig_, env_);
      expect_sort(sig_, e.items[i + 1], t, decl->arg_sorts[i], "'" + w + "'");
      args.push_back(std::move(t));
    }
    return Formula::atom(w, std::move(args));
  }

  const Signature& sig_;
  VarEnv env_;
};

std::vector<std::string> sort_list(const Sexpr& e, std::size_t from, std::size_t to, const Signature& sig) {
  std::vector<std::string> out;
  for (std::size_t i = from; i < to; ++i) {
    const Sexpr& s = e.items[i];
    if (s.is_list) fail(s, "expected a sort name");
    if (!sig.has_sort(s.atom)) fail(s, "unknown sort '" + s.atom + "'");
    out.push_back(s.atom);
  }
  return out;
}

template <class F>
void declare(const Sexpr& at, F&& f) {
  try {
    f();
  } catch (const SortError& err) {
    throw ParseError(at.pos, err.what());
  }
}

}  // namespace

Term parse_term(const Sexpr& e, const Signature& sig, const VarEnv& env) {
  if (e.is_atom()) {
    if (is_integer(e.atom)) return Term::constant(e.atom, std::string(sorts::kMoment));
    if (const Term* v = lookup(env, e.atom)) return *v;
    if (auto s = sig.constant_sort(e.atom)) return Term::constant(e.atom, *s);
    if (const SymbolDecl* f = sig.function(e.atom)) {
      if (f->arg_sorts.empty()) return Term::apply(e.atom, {}, f->result_sort);
      fail(e, "arity mismatch for '" + e.atom + "' (needs " + std::to_string(f->arg_sorts.size()) +
                  " arguments, got 0)");
    }
    if (!is_identifier(e.atom)) fail(e, "expected a term, got '" + e.atom + "'");
    fail(e, "unknown symbol '" + e.atom + "'");
  }
  if (e.items.empty()) fail(e, "empty list where a term was expected");
  const Sexpr& head = e.items.front();
  if (head.is_list) fail(head, "expected a function symbol");
  const SymbolDecl* decl = sig.function(head.atom);
  if (!decl) fail(head, "unknown symbol '" + head.atom + "'");
  const std::size_t nargs = e.items.size() - 1;
  if (decl->arg_sorts.size() != nargs)
    fail(e, "arity mismatch for '" + head.atom + "' (needs " + std::to_string(decl->arg_sorts.size()) +
                " arguments, got " + std::to_string(nargs) + ")");
  std::vector<Term> args;
  for (std::size_t i = 0; i < nargs; ++i) {
    Term t = parse_term(e.items[i + 1], sig, env);
    expect_sort(sig, e.items[i + 1], t, decl->arg_sorts[i], "'" + head.atom + "'");
    args.push_back(std::move(t));
  }
  return Term::apply(head.atom, std::move(args), decl->result_sort);
}

Formula parse_formula(const Sexpr& expr, const Signature& sig, const VarEnv& free_vars) {
  return FormulaParser(sig, free_vars).formula(expr);
}

Formula parse_formula(std::string_view text, const Signature& sig, const VarEnv& free_vars) {
  auto exprs = read_sexprs(text);
  if (exprs.empty()) throw ParseError({1, 1}, "empty input where a formula was expected");
  if (exprs.size() > 1) throw ParseError(exprs[1].pos, "trailing input after formula");
  return parse_formula(exprs.front(), sig, free_vars);
}

bool apply_declaration(const Sexpr& section, Signature& sig) {
  const std::string& kind = section.head();
  if (kind == "sorts") {
    for (std::size_t i = 1; i < section.items.size(); ++i) {
      const Sexpr& d = section.items[i];
      if (d.is_atom()) {
        if (!is_identifier(d.atom)) fail(d, "expected a sort name");
        declare(d, [&] { sig.add_sort(d.atom); });
        continue;
      }
      if (d.items.empty() || d.items[0].is_list) fail(d, "expected (Sort Parent...)");
      declare(d, [&] { sig.add_sort(d.items[0].atom, sort_list(d, 1, d.items.size(), sig)); });
    }
    return true;
  }
  if (kind == "constants") {
    for (std::size_t i = 1; i < section.items.size(); ++i) {
      const Sexpr& d = section.items[i];
      if (d.is_atom() || d.items.size() < 2 || d.items[0].is_list)
        fail(d, "expected (name... Sort)");
      const Sexpr& sort = d.items.back();
      if (sort.is_list || !sig.has_sort(sort.atom)) fail(sort, "unknown sort in constant declaration");
      for (std::size_t j = 0; j + 1 < d.items.size(); ++j) {
        if (d.items[j].is_list) fail(d.items[j], "expected a constant name");
        declare(d.items[j], [&] { sig.add_constant(d.items[j].atom, sort.atom); });
      }
    }
    return true;
  }
  if (kind == "predicates") {
    for (std::size_t i = 1; i < section.items.size(); ++i) {
      const Sexpr& d = section.items[i];
      if (d.is_atom()) {
        declare(d, [&] { sig.add_predicate(d.atom, {}); });
        continue;
      }
      if (d.items.empty() || d.items[0].is_list) fail(d, "expected (name Sort...)");
      declare(d, [&] { sig.add_predicate(d.items[0].atom, sort_list(d, 1, d.items.size(), sig)); });
    }
    return true;
  }
  if (kind == "functions") {
    for (std::size_t i = 1; i < section.items.size(); ++i) {
      const Sexpr& d = section.items[i];
      // (name Sort... -> Result)
      if (d.is_atom() || d.items.size() < 3 || d.items[0].is_list || !d.items[d.items.size() - 2].is_atom("->"))
        fail(d, "expected (name Sort... -> Result)");
      auto args = sort_list(d, 1, d.items.size() - 2, sig);
      auto result = sort_list(d, d.items.size() - 1, d.items.size(), sig);
      declare(d, [&] { sig.add_function(d.items[0].atom, std::move(args), result.front()); });
    }
    return true;
  }
  return false;
}

FormulaFile parse_formula_file(std::string_view text, Signature base) {
  FormulaFile out{std::move(base), {}};
  auto exprs = read_sexprs(text);
  std::vector<const Sexpr*> formulas;
  for (const Sexpr& e : exprs)
    if (!apply_declaration(e, out.signature)) formulas.push_back(&e);
  for (const Sexpr* e : formulas) out.formulas.push_back(parse_formula(*e, out.signature));
  return out;
}

}  // namespace dcec
