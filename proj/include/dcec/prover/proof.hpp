#ifndef DCEC_PROVER_PROOF_HPP
#define DCEC_PROVER_PROOF_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "dcec/core/signature.hpp"
#include "dcec/core/syntax.hpp"

namespace dcec {

struct ProofStep {
  Formula formula;
  std::string rule;
  std::vector<std::size_t> premises;  // 0-based step indices
};

struct Proof {
  std::vector<ProofStep> steps;
};

// One line per step, 1-based: `<i>. <formula> [<rule> <premises>]`.
std::string serialize(const Proof& p);

struct VerifyResult {
  bool accepted = true;
  std::size_t step = 0;  // 0-based offending step when rejected
  std::string reason;

  explicit operator bool() const { return accepted; }
};

// Independent checker. Clause steps (cnf/resolve/factor) hold the universal
// closure of a disjunction of literals, where a literal may be a modal
// formula; they are re-checked by clausifying/resolving from scratch.
VerifyResult verify_proof(const Proof& p, const std::vector<Formula>& assumptions, const Formula& goal,
                          const Signature& sig);

}  // namespace dcec

#endif  // DCEC_PROVER_PROOF_HPP
