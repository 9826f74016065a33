#ifndef DCEC_PROVER_CLAUSE_HPP
#define DCEC_PROVER_CLAUSE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dcec/core/signature.hpp"
#include "dcec/core/substitute.hpp"
#include "dcec/core/syntax.hpp"

namespace dcec {

// First-order literal over shadowed atoms. Equality is the ordinary binary
// predicate "=".
struct Literal {
  bool positive = true;
  std::string predicate;
  std::vector<Term> args;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.positive == b.positive && a.predicate == b.predicate && a.args == b.args;
  }
};

using Clause = std::vector<Literal>;

Formula literal_formula(const Literal& l);
std::optional<Literal> literal_from_formula(const Formula& f);

std::string print_clause(const Clause& c);
std::size_t weight(const Clause& c);
bool is_tautology(const Clause& c);

// Sorted syntactic unification. `b` is a triangular binding; use `resolve`
// to apply it.
bool unify(const Term& a, const Term& b, Binding& binding, const Signature& sig);
bool unify_atoms(const Literal& a, const Literal& b, Binding& binding, const Signature& sig);
Term resolve(const Term& t, const Binding& binding);
Clause resolve(const Clause& c, const Binding& binding);

// One-way matching: binds only variables of `pattern`.
bool match(const Term& pattern, const Term& target, Binding& binding, const Signature& sig);

// Renames every variable to `prefix` + ordinal of first occurrence.
Clause rename_variables(const Clause& c, const std::string& prefix);
// Drops duplicate literals (first occurrence wins) and renames variables to
// X1, X2, ... in order of first occurrence.
Clause normalize(Clause c);

// Does `c` subsume `d` (some instance of c is a sub-multiset of d)?
bool subsumes(const Clause& c, const Clause& d, const Signature& sig);

// Clausal normal form of a closed, modal-free formula: NNF, Skolemization
// with functions named `<skolem_prefix>_<n>`, distribution. Returned clauses
// are normalized, non-tautological and deduplicated. Throws
// std::length_error when more than `max_clauses` clauses would be produced.
std::vector<Clause> clausify(const Formula& f, const std::string& skolem_prefix,
                             std::size_t max_clauses = 100000);

// Content-derived Skolem prefix for clausifying `original`.
std::string skolem_prefix(const Formula& original);

// Universal closure of the disjunction of the literals; `false` when empty.
Formula clause_formula(const Clause& c);
// Inverse of clause_formula on modal-free formulas.
std::optional<Clause> clause_from_formula(const Formula& f);

}  // namespace dcec

#endif  // DCEC_PROVER_CLAUSE_HPP
