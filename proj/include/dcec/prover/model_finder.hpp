// Bounded model search, independent of the resolution prover.
//
// The domain of each sort holds the ground terms occurring in the input, up
// to three anonymous elements `@Sort`, `@Sort2`, ... per sort, and the
// applications of the occurring function symbols to those base elements. Quantifiers are expanded over that
// domain, ground modal formulas are treated as propositions constrained by
// the modal schemata, and the resulting propositional problem goes to a SAT
// solver. Equality and `prior` are uninterpreted, as in the prover.

#ifndef DCEC_PROVER_MODEL_FINDER_HPP
#define DCEC_PROVER_MODEL_FINDER_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dcec/core/signature.hpp"
#include "dcec/core/syntax.hpp"

namespace dcec {

struct ModelLimits {
  std::size_t max_universe = 4096;
  std::size_t max_clauses = 2000000;
  std::uint64_t max_conflicts = 200000;
};

enum class ModelStatus { Satisfiable, Unsatisfiable, TooLarge };

struct ModelResult {
  ModelStatus status = ModelStatus::TooLarge;
  // Printed ground atoms and modal propositions that are true, sorted.
  std::vector<std::string> true_atoms;
  // Named (non-anonymous) constants in the domain, per declared sort.
  std::map<std::string, std::size_t> named_elements;
  std::string detail;
};

ModelResult find_model(const Signature& sig, const std::vector<Formula>& formulas, const ModelLimits& limits = {});

}  // namespace dcec

#endif  // DCEC_PROVER_MODEL_FINDER_HPP
