// Terms and formulas of the sorted multi-operator modal language.
//
// Both types are immutable handles onto shared nodes: copying is cheap and a
// value never changes after construction. Sorts travel with the leaves
// (variables, constants) and with function applications (result sort), so a
// term's sort is known without consulting a Signature.

#ifndef DCEC_CORE_SYNTAX_HPP
#define DCEC_CORE_SYNTAX_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dcec {

namespace sorts {
inline constexpr std::string_view kAgent = "Agent";
inline constexpr std::string_view kMoment = "Moment";
inline constexpr std::string_view kActionType = "ActionType";
inline constexpr std::string_view kAction = "Action";
inline constexpr std::string_view kEvent = "Event";
inline constexpr std::string_view kFluent = "Fluent";
inline constexpr std::string_view kBoolean = "Boolean";
inline constexpr std::string_view kSituation = "Situation";
inline constexpr std::string_view kGoal = "Goal";
}  // namespace sorts

inline constexpr std::string_view kDefaultSituation = "sigma_default";

class Term {
 public:
  enum class Kind : std::uint8_t { Variable, Constant, Apply };

  static Term variable(std::string name, std::string sort);
  static Term constant(std::string name, std::string sort);
  static Term moment(std::int64_t value);
  static Term apply(std::string symbol, std::vector<Term> args, std::string result_sort);

  Kind kind() const { return node_->kind; }
  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_apply() const { return kind() == Kind::Apply; }
  // Variable/constant name, or the applied function symbol.
  const std::string& name() const { return node_->name; }
  const std::string& sort() const { return node_->sort; }
  std::span<const Term> args() const { return node_->args; }

  bool ground() const;
  bool contains_variable(std::string_view name) const;
  // Integer value of a numeric Moment constant.
  std::optional<std::int64_t> as_moment() const;

  friend bool operator==(const Term& a, const Term& b);
  friend int compare(const Term& a, const Term& b);
  friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::string sort;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class ModalOp : std::uint8_t { Knows, Believes, Desires, Intends, Perceives, Obligated };

std::string_view keyword(ModalOp op);
std::optional<ModalOp> modal_from_keyword(std::string_view word);

class Formula {
 public:
  enum class Kind : std::uint8_t {
    True,
    False,
    Atom,
    Equals,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Forall,
    Exists,
    Modal,
  };

  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string predicate, std::vector<Term> args);
  static Formula equals(Term lhs, Term rhs);
  static Formula negation(Formula f);
  // n-ary; a singleton collapses to its element. Empty conjunction is `true`,
  // empty disjunction is `false`.
  static Formula conjunction(std::vector<Formula> fs);
  static Formula disjunction(std::vector<Formula> fs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula biconditional(Formula lhs, Formula rhs);
  static Formula forall(Term variable, Formula body);
  static Formula exists(Term variable, Formula body);
  static Formula quantifier(Kind kind, Term variable, Formula body);
  // K, B, D, I, P. Obligations go through `obligation`.
  static Formula modal(ModalOp op, Term agent, Term moment, Formula body);
  static Formula obligation(Term agent, Term moment, Term situation, Formula body);
  static Formula obligation(Term agent, Term moment, Formula body);
  static Formula knows(Term agent, Term moment, Formula body) {
    return modal(ModalOp::Knows, std::move(agent), std::move(moment), std::move(body));
  }
  static Formula believes(Term agent, Term moment, Formula body) {
    return modal(ModalOp::Believes, std::move(agent), std::move(moment), std::move(body));
  }
  static Formula desires(Term agent, Term moment, Formula body) {
    return modal(ModalOp::Desires, std::move(agent), std::move(moment), std::move(body));
  }
  static Formula intends(Term agent, Term moment, Formula body) {
    return modal(ModalOp::Intends, std::move(agent), std::move(moment), std::move(body));
  }

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return kind() == k; }
  bool is_modal(ModalOp op) const { return kind() == Kind::Modal && node_->op == op; }
  bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }

  // Atom predicate symbol.
  const std::string& predicate() const { return node_->name; }
  // Atom/equality arguments; quantifier: {variable}; modal: {agent, moment[, situation]}.
  std::span<const Term> terms() const { return node_->terms; }
  // Connective operands; quantifier/modal: {body}.
  std::span<const Formula> children() const { return node_->children; }

  const Term& bound() const { return node_->terms.front(); }
  const Formula& body() const { return node_->children.front(); }
  ModalOp op() const { return node_->op; }
  const Term& agent() const { return node_->terms[0]; }
  const Term& moment() const { return node_->terms[1]; }
  const Term& situation() const { return node_->terms[2]; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend int compare(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

 private:
  struct Node {
    Kind kind;
    ModalOp op = ModalOp::Knows;
    std::string name;
    std::vector<Term> terms;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Kind kind, ModalOp op, std::string name, std::vector<Term> terms,
                      std::vector<Formula> children);
  std::shared_ptr<const Node> node_;
};

std::string print_term(const Term& t);
std::string print_formula(const Formula& f);

// Free variables in order of first occurrence.
std::vector<Term> free_variables(const Formula& f);
std::vector<Term> free_variables(const Term& t);
bool is_closed(const Formula& f);

// Canonical text identical for alpha-equivalent formulas (bound variables
// renamed by binding depth).
std::string alpha_key(const Formula& f);
bool alpha_equivalent(const Formula& a, const Formula& b);

// Universal closure over the given variables, innermost last.
Formula close_universally(const std::vector<Term>& vars, Formula body);

}  // namespace dcec

#endif  // DCEC_CORE_SYNTAX_HPP
