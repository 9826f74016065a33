#ifndef DCEC_PROVER_PROVER_HPP
#define DCEC_PROVER_PROVER_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcec/core/signature.hpp"
#include "dcec/core/syntax.hpp"
#include "dcec/prover/budget.hpp"
#include "dcec/prover/proof.hpp"

namespace dcec {

enum class ProveStatus { Proved, NoProof, Timeout };

std::string_view to_string(ProveStatus s);

struct ProveResult {
  ProveStatus status = ProveStatus::NoProof;
  std::optional<Proof> proof;
  std::size_t generated_clauses = 0;
  std::string detail;  // which limit ran out, for Timeout
};

// Throws std::invalid_argument for an invalid budget and SortError for
// ill-sorted or open input. `trace`, when given, receives one line per
// generated clause.
ProveResult prove(const Signature& sig, const std::vector<Formula>& assumptions, const Formula& goal,
                  const Budget& budget = {}, std::ostream* trace = nullptr);

}  // namespace dcec

#endif  // DCEC_PROVER_PROVER_HPP
