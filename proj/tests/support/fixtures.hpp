#ifndef DCEC_TESTS_FIXTURES_HPP
#define DCEC_TESTS_FIXTURES_HPP

#include <string>
#include <string_view>

#include "dcec/core/parse.hpp"

namespace dcec::testing {

// Signature built from declaration sections, e.g.
//   (constants (a b Agent) (t 0 1 Moment)) (predicates (P) (Q Agent))
inline Signature signature_from(std::string_view decls) { return parse_formula_file(decls).signature; }

inline Formula f(std::string_view text, const Signature& sig) { return parse_formula(text, sig); }

}  // namespace dcec::testing

#endif  // DCEC_TESTS_FIXTURES_HPP
