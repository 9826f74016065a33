#ifndef DCEC_CORE_SUBSTITUTE_HPP
#define DCEC_CORE_SUBSTITUTE_HPP

#include <map>
#include <string>

#include "dcec/core/signature.hpp"
#include "dcec/core/syntax.hpp"

namespace dcec {

// Variable name -> replacement term.
using Binding = std::map<std::string, Term>;

// Capture-avoiding substitution of free occurrences. A bound variable that
// would capture a free variable of some replacement is renamed by appending
// primes. Throws SortError when a replacement's sort does not widen to the
// variable's sort under `sig`.
Formula substitute(const Formula& f, const Binding& binding, const Signature& sig);
Term substitute(const Term& t, const Binding& binding, const Signature& sig);

// Same, without sort checks. For callers that already guarantee sorts
// (e.g. unifiers computed with sorted unification).
Formula substitute_unchecked(const Formula& f, const Binding& binding);
Term substitute_unchecked(const Term& t, const Binding& binding);

}  // namespace dcec

#endif  // DCEC_CORE_SUBSTITUTE_HPP
