// Scenario files: S-expression sections in any order.
//
//   (sorts ...) (constants ...) (predicates ...) (functions ...)
//   (facts formula...)
//   (initial fluent...)
//   (axioms (event initiates|terminates fluent [(guard lit...)] [(vars (x Sort)...)])...)
//   (occurrences (happens event moment)...)
//   (horizon n)
//   (hierarchy [(category...)] [(neutral label)] (classify atype category)...)
//   (utilities [(vars (x Sort)...)] (fluent initiated|terminated value)... (gamma n))
//   (request agent atype moment)
//   (guardian agent)
//
// A guard literal is a fluent or (not fluent). The unary predicate
// `innocent` over Agent is declared implicitly when the file does not.

#ifndef DCEC_GUARD_SCENARIO_HPP
#define DCEC_GUARD_SCENARIO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dcec/core/signature.hpp"
#include "dcec/core/syntax.hpp"
#include "dcec/ec/event_calculus.hpp"
#include "dcec/ethics/dde.hpp"

namespace dcec {

struct Request {
  Term agent = Term::constant("?", "Agent");
  Term atype = Term::constant("?", "ActionType");
  std::int64_t moment = 0;
};

struct Scenario {
  std::string name;
  Signature signature;
  std::vector<Formula> facts;
  ECTheory theory;
  EthicalHierarchy hierarchy;
  UtilityMap utilities;
  Request request;
  Term guardian = Term::constant("?", "Agent");

  // Throws ECError, EthicsError or SortError.
  void validate() const;

  Occurrence request_occurrence() const;
  // The theory with the requested action performed.
  ECTheory hypothetical_theory() const;
  DdeProblem dde_problem() const;
};

// Throws ParseError (with position) for malformed or invalid input.
Scenario parse_scenario(std::string_view text, std::string name = "scenario");
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace dcec

#endif  // DCEC_GUARD_SCENARIO_HPP
