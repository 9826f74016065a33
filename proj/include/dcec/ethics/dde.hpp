// Ethical hierarchy, utilities and the doctrine-of-double-effect clauses
// C1, C2, C3a, C3b and C4.

#ifndef DCEC_ETHICS_DDE_HPP
#define DCEC_ETHICS_DDE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcec/core/signature.hpp"
#include "dcec/core/syntax.hpp"
#include "dcec/ec/event_calculus.hpp"
#include "dcec/prover/budget.hpp"
#include "dcec/prover/proof.hpp"

namespace dcec {

class EthicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EthicalHierarchy {
  // Lowest first. `forbidden` must come first; `neutral` must be present.
  std::vector<std::string> categories{"forbidden", "civil", "uncivil-but-tolerated", "neutral", "supererogatory"};
  std::string neutral = "neutral";
  std::map<std::string, std::string> classification;  // action type name -> category

  void validate() const;
  std::size_t rank(const std::string& category) const;
};

std::string classify(const Term& atype, const EthicalHierarchy& h);

enum class ClauseResult { Pass, Fail, Unknown };
std::string_view to_string(ClauseResult r);

struct ClauseVerdict {
  std::string name;
  ClauseResult result = ClauseResult::Unknown;
  std::string justification;
  std::vector<Proof> proofs;  // intention proofs backing C3 results
};

ClauseVerdict check_c1(const Term& atype, const EthicalHierarchy& h);

struct UtilityEntry {
  Term pattern;  // fluent, possibly with variables
  Polarity polarity = Polarity::Initiated;
  std::int64_t utility = 0;
};

struct UtilityMap {
  std::vector<UtilityEntry> entries;  // first match wins; unmatched effects are worth 0
  std::int64_t gamma = 0;

  void validate() const;
  std::int64_t utility(const Effect& e) const;
};

struct C2Result {
  ClauseVerdict verdict;
  std::int64_t net = 0;
};

C2Result check_c2(const std::vector<Effect>& effects, const UtilityMap& u);

struct C3Result {
  ClauseVerdict c3a;
  ClauseVerdict c3b;
};

// The intention checked for effect e is (intends agent t <effect_formula(e)>).
C3Result check_c3(const Signature& sig, const Term& agent, const Term& moment, const std::vector<Effect>& effects,
                  const std::vector<Formula>& facts, const Budget& budget);

ClauseVerdict check_c4(const std::vector<Effect>& effects, const ECTheory& theory);

struct DdeProblem {
  Signature signature;
  ECTheory theory;
  EthicalHierarchy hierarchy;
  UtilityMap utilities;
  std::vector<Formula> facts;
  Term agent = Term::constant("?", "Agent");
  Term atype = Term::constant("?", "ActionType");
  std::int64_t moment = 0;
};

struct DDEVerdict {
  ClauseVerdict c1, c2, c3a, c3b, c4;
  std::int64_t net = 0;
  std::vector<Effect> effects;

  bool compliant() const;
  std::vector<const ClauseVerdict*> clauses() const { return {&c1, &c2, &c3a, &c3b, &c4}; }
};

// Adds happens(action(agent, atype), moment) to the theory when absent.
// Throws ECError or EthicsError for an ill-formed problem.
DDEVerdict dde_compliant(const DdeProblem& p, const Budget& budget = {});

}  // namespace dcec

#endif  // DCEC_ETHICS_DDE_HPP
