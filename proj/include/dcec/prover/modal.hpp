// Forward closure under the modal inference schemata:
//
//   S1  K(a,t,p)                 |- p
//   S2  K(a,t,p)                 |- B(a,t,p)
//   S3  K(a,t,p), K(a,t,p -> q)  |- K(a,t,q)          (and for B)
//   S4  K(a,t,p1 & ... & pn)     |- K(a,t,pi)         (and for B)
//       K(a,t,p1) ... K(a,t,pn)  |- K(a,t,p1 & ... & pn)
//
// The introduction half of S4 is only applied to targets: conjunctive K/B
// formulas that occur somewhere in the problem, plus K/B of the conjunctive
// antecedent of a known implication. D, I, P and O are inert.

#ifndef DCEC_PROVER_MODAL_HPP
#define DCEC_PROVER_MODAL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcec/core/syntax.hpp"

namespace dcec {

namespace rules {
inline constexpr const char* kAssume = "assume";
inline constexpr const char* kS1 = "S1";
inline constexpr const char* kS2 = "S2";
inline constexpr const char* kS3 = "S3";
inline constexpr const char* kS4 = "S4";
inline constexpr const char* kNegateGoal = "negate-goal";
inline constexpr const char* kCnf = "cnf";
inline constexpr const char* kResolve = "resolve";
inline constexpr const char* kFactor = "factor";
inline constexpr const char* kRefute = "refute";
}  // namespace rules

struct ExpansionEntry {
  Formula formula;
  const char* rule;
  std::vector<std::size_t> premises;  // indices into Expansion::entries
  int depth;                          // schema applications on the longest chain
};

class Expansion {
 public:
  const std::vector<ExpansionEntry>& entries() const { return entries_; }
  std::optional<std::size_t> find(const Formula& f) const;
  std::vector<Formula> formulas() const;

 private:
  friend Expansion expand_modal_derivations(const std::vector<Formula>&, int, const std::vector<Formula>&);
  bool add(Formula f, const char* rule, std::vector<std::size_t> premises, int depth);
  std::vector<ExpansionEntry> entries_;
  std::map<std::string, std::size_t> index_;  // alpha key -> entry
};

// Closed conjunctive K/B subformulas of `fs`, in order of first occurrence.
std::vector<Formula> conjunction_targets(const std::vector<Formula>& fs);

Expansion expand_modal_derivations(const std::vector<Formula>& assumptions, int depth,
                                   const std::vector<Formula>& targets = {});

// Inflationary; depth 0 returns the (deduplicated) input.
std::vector<Formula> expand_modal(const std::vector<Formula>& assumptions, int depth);

}  // namespace dcec

#endif  // DCEC_PROVER_MODAL_HPP
