#ifndef DCEC_CORE_PARSE_HPP
#define DCEC_CORE_PARSE_HPP

#include <string_view>
#include <vector>

#include "dcec/core/error.hpp"
#include "dcec/core/sexpr.hpp"
#include "dcec/core/signature.hpp"
#include "dcec/core/syntax.hpp"

namespace dcec {

// Variables visible while parsing, innermost binding last.
using VarEnv = std::vector<Term>;

Term parse_term(const Sexpr& expr, const Signature& sig, const VarEnv& env = {});

// Grammar (operator-first S-expressions):
//   formula := atom | (not f) | (and f+) | (or f+) | (implies f f) | (iff f f)
//            | (forall x : Sort f) | (exists x : Sort f) | (= term term)
//            | (knows|believes|desires|intends|perceives agent moment f)
//            | (obligated agent moment [situation] f) | true | false
// Three-argument obligations get the situation `sigma_default`.
// Throws ParseError on lexical errors, unknown symbols, arity or sort errors.
Formula parse_formula(const Sexpr& expr, const Signature& sig, const VarEnv& free_vars = {});
Formula parse_formula(std::string_view text, const Signature& sig, const VarEnv& free_vars = {});

// Applies a `(sorts ...)`, `(constants ...)`, `(predicates ...)` or
// `(functions ...)` section to `sig`. Returns false for any other section.
bool apply_declaration(const Sexpr& section, Signature& sig);

struct FormulaFile {
  Signature signature;
  std::vector<Formula> formulas;
};

// A formula file is a sequence of declaration sections and formulas.
// Declarations are applied first, wherever they appear.
FormulaFile parse_formula_file(std::string_view text, Signature base = {});

}  // namespace dcec

#endif  // DCEC_CORE_PARSE_HPP
