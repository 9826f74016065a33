#include "dcec/core/syntax.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "dcec/core/sexpr.hpp"

namespace dcec {

// {{{ Term

Term Term::variable(std::string name, std::string sort) {
  return Term(std::make_shared<const Node>(Node{Kind::Variable, std::move(name), std::move(sort), {}}));
}

Term Term::constant(std::string name, std::string sort) {
  return Term(std::make_shared<const Node>(Node{Kind::Constant, std::move(name), std::move(sort), {}}));
}

Term Term::moment(std::int64_t value) {
  return constant(std::to_string(value), std::string(sorts::kMoment));
}

Term Term::apply(std::string symbol, std::vector<Term> args, std::string result_sort) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Apply, std::move(symbol), std::move(result_sort), std::move(args)}));
}

bool Term::ground() const {
  if (is_variable()) return false;
  return std::all_of(args().begin(), args().end(), [](const Term& a) { return a.ground(); });
}

bool Term::contains_variable(std::string_view var) const {
  if (is_variable()) return name() == var;
  return std::any_of(args().begin(), args().end(),
                     [&](const Term& a) { return a.contains_variable(var); });
}

std::optional<std::int64_t> Term::as_moment() const {
  if (!is_constant() || !is_integer(name())) return std::nullopt;
  std::int64_t v = 0;
  const auto& s = name();
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc()) return std::nullopt;
  return v;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name() || a.sort() != b.sort()) return false;
  return std::equal(a.args().begin(), a.args().end(), b.args().begin(), b.args().end());
}

int compare(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.name().compare(b.name())) return c < 0 ? -1 : 1;
  if (int c = a.sort().compare(b.sort())) return c < 0 ? -1 : 1;
  const auto as = a.args();
  const auto bs = b.args();
  for (std::size_t i = 0; i < std::min(as.size(), bs.size()); ++i)
    if (int c = compare(as[i], bs[i])) return c;
  if (as.size() != bs.size()) return as.size() < bs.size() ? -1 : 1;
  return 0;
}

// }}}

// {{{ Formula

std::string_view keyword(ModalOp op) {
  switch (op) {
    case ModalOp::Knows: return "knows";
    case ModalOp::Believes: return "believes";
    case ModalOp::Desires: return "desires";
    case ModalOp::Intends: return "intends";
    case ModalOp::Perceives: return "perceives";
    case ModalOp::Obligated: return "obligated";
  }
  return "?";
}

std::optional<ModalOp> modal_from_keyword(std::string_view word) {
  for (ModalOp op : {ModalOp::Knows, ModalOp::Believes, ModalOp::Desires, ModalOp::Intends,
                     ModalOp::Perceives, ModalOp::Obligated})
    if (keyword(op) == word) return op;
  return std::nullopt;
}

Formula Formula::make(Kind kind, ModalOp op, std::string name, std::vector<Term> terms,
                      std::vector<Formula> children) {
  return Formula(std::make_shared<const Node>(
      Node{kind, op, std::move(name), std::move(terms), std::move(children)}));
}

Formula Formula::truth() {
  static const Formula t = make(Kind::True, ModalOp::Knows, "", {}, {});
  return t;
}

Formula Formula::falsity() {
  static const Formula f = make(Kind::False, ModalOp::Knows, "", {}, {});
  return f;
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  return make(Kind::Atom, ModalOp::Knows, std::move(predicate), std::move(args), {});
}

Formula Formula::equals(Term lhs, Term rhs) {
  return make(Kind::Equals, ModalOp::Knows, "", {std::move(lhs), std::move(rhs)}, {});
}

Formula Formula::negation(Formula f) {
  return make(Kind::Not, ModalOp::Knows, "", {}, {std::move(f)});
}

Formula Formula::conjunction(std::vector<Formula> fs) {
  if (fs.empty()) return truth();
  if (fs.size() == 1) return std::move(fs.front());
  return make(Kind::And, ModalOp::Knows, "", {}, std::move(fs));
}

Formula Formula::disjunction(std::vector<Formula> fs) {
  if (fs.empty()) return falsity();
  if (fs.size() == 1) return std::move(fs.front());
  return make(Kind::Or, ModalOp::Knows, "", {}, std::move(fs));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return make(Kind::Implies, ModalOp::Knows, "", {}, {std::move(lhs), std::move(rhs)});
}

Formula Formula::biconditional(Formula lhs, Formula rhs) {
  return make(Kind::Iff, ModalOp::Knows, "", {}, {std::move(lhs), std::move(rhs)});
}

Formula Formula::forall(Term variable, Formula body) {
  return quantifier(Kind::Forall, std::move(variable), std::move(body));
}

Formula Formula::exists(Term variable, Formula body) {
  return quantifier(Kind::Exists, std::move(variable), std::move(body));
}

Formula Formula::quantifier(Kind kind, Term variable, Formula body) {
  return make(kind, ModalOp::Knows, "", {std::move(variable)}, {std::move(body)});
}

Formula Formula::modal(ModalOp op, Term agent, Term moment, Formula body) {
  if (op == ModalOp::Obligated) return obligation(std::move(agent), std::move(moment), std::move(body));
  return make(Kind::Modal, op, "", {std::move(agent), std::move(moment)}, {std::move(body)});
}

Formula Formula::obligation(Term agent, Term moment, Term situation, Formula body) {
  return make(Kind::Modal, ModalOp::Obligated, "",
              {std::move(agent), std::move(moment), std::move(situation)}, {std::move(body)});
}

Formula Formula::obligation(Term agent, Term moment, Formula body) {
  return obligation(std::move(agent), std::move(moment),
                    Term::constant(std::string(kDefaultSituation), std::string(sorts::kSituation)),
                    std::move(body));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.node_->op != b.node_->op || a.node_->name != b.node_->name)
    return false;
  return std::equal(a.terms().begin(), a.terms().end(), b.terms().begin(), b.terms().end()) &&
         std::equal(a.children().begin(), a.children().end(), b.children().begin(),
                    b.children().end());
}

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (a.node_->op != b.node_->op) return a.node_->op < b.node_->op ? -1 : 1;
  if (int c = a.node_->name.compare(b.node_->name)) return c < 0 ? -1 : 1;
  const auto at = a.terms();
  const auto bt = b.terms();
  for (std::size_t i = 0; i < std::min(at.size(), bt.size()); ++i)
    if (int c = compare(at[i], bt[i])) return c;
  if (at.size() != bt.size()) return at.size() < bt.size() ? -1 : 1;
  const auto ac = a.children();
  const auto bc = b.children();
  for (std::size_t i = 0; i < std::min(ac.size(), bc.size()); ++i)
    if (int c = compare(ac[i], bc[i])) return c;
  if (ac.size() != bc.size()) return ac.size() < bc.size() ? -1 : 1;
  return 0;
}

// }}}

// {{{ Printing

namespace {

std::string_view connective_keyword(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Not: return "not";
    case Formula::Kind::And: return "and";
    case Formula::Kind::Or: return "or";
    case Formula::Kind::Implies: return "implies";
    case Formula::Kind::Iff: return "iff";
    case Formula::Kind::Forall: return "forall";
    case Formula::Kind::Exists: return "exists";
    default: return "";
  }
}

// Bound variables are renamed through `renames` (used for alpha keys).
struct Printer {
  std::map<std::string, std::vector<std::string>> renames;
  bool alpha = false;
  int depth = 0;

  void term(const Term& t, std::string& out) const {
    if (t.is_variable()) {
      auto it = renames.find(t.name());
      out += (it != renames.end() && !it->second.empty()) ? it->second.back() : t.name();
      return;
    }
    if (t.is_constant()) {
      out += t.name();
      return;
    }
    out += '(';
    out += t.name();
    for (const Term& a : t.args()) {
      out += ' ';
      term(a, out);
    }
    out += ')';
  }

  void formula(const Formula& f, std::string& out) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True: out += "true"; return;
      case K::False: out += "false"; return;
      case K::Atom:
        if (f.terms().empty()) {
          out += f.predicate();
          return;
        }
        out += '(';
        out += f.predicate();
        for (const Term& t : f.terms()) {
          out += ' ';
          term(t, out);
        }
        out += ')';
        return;
      case K::Equals:
        out += "(= ";
        term(f.terms()[0], out);
        out += ' ';
        term(f.terms()[1], out);
        out += ')';
        return;
      case K::Not:
      case K::And:
      case K::Or:
      case K::Implies:
      case K::Iff:
        out += '(';
        out += connective_keyword(f.kind());
        for (const Formula& c : f.children()) {
          out += ' ';
          formula(c, out);
        }
        out += ')';
        return;
      case K::Forall:
      case K::Exists: {
        const Term& v = f.bound();
        out += '(';
        out += connective_keyword(f.kind());
        out += ' ';
        std::string name = v.name();
        if (alpha) name = "#" + std::to_string(depth);
        out += name;
        out += " : ";
        out += v.sort();
        out += ' ';
        renames[v.name()].push_back(name);
        ++depth;
        formula(f.body(), out);
        --depth;
        renames[v.name()].pop_back();
        out += ')';
        return;
      }
      case K::Modal:
        out += '(';
        out += keyword(f.op());
        for (const Term& t : f.terms()) {
          out += ' ';
          term(t, out);
        }
        out += ' ';
        formula(f.body(), out);
        out += ')';
        return;
    }
  }
};

void collect_free(const Term& t, const std::set<std::string>& bound, std::vector<Term>& out,
                  std::set<std::string>& seen) {
  if (t.is_variable()) {
    if (!bound.count(t.name()) && seen.insert(t.name()).second) out.push_back(t);
    return;
  }
  for (const Term& a : t.args()) collect_free(a, bound, out, seen);
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::vector<Term>& out,
                  std::set<std::string>& seen) {
  if (f.is_quantifier()) {
    const std::string& v = f.bound().name();
    const bool was_bound = bound.count(v) > 0;
    bound.insert(v);
    collect_free(f.body(), bound, out, seen);
    if (!was_bound) bound.erase(v);
    return;
  }
  for (const Term& t : f.terms()) collect_free(t, bound, out, seen);
  for (const Formula& c : f.children()) collect_free(c, bound, out, seen);
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  Printer{}.term(t, out);
  return out;
}

std::string print_formula(const Formula& f) {
  std::string out;
  Printer p;
  p.formula(f, out);
  return out;
}

std::string alpha_key(const Formula& f) {
  std::string out;
  Printer p;
  p.alpha = true;
  p.formula(f, out);
  return out;
}

bool alpha_equivalent(const Formula& a, const Formula& b) { return a == b || alpha_key(a) == alpha_key(b); }

// }}}

std::vector<Term> free_variables(const Formula& f) {
  std::vector<Term> out;
  std::set<std::string> bound, seen;
  collect_free(f, bound, out, seen);
  return out;
}

std::vector<Term> free_variables(const Term& t) {
  std::vector<Term> out;
  std::set<std::string> seen;
  collect_free(t, {}, out, seen);
  return out;
}

bool is_closed(const Formula& f) { return free_variables(f).empty(); }

Formula close_universally(const std::vector<Term>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::forall(*it, std::move(body));
  return body;
}

}  // namespace dcec
