// Discrete event calculus over integer moments 0..horizon.
//
// An occurrence at moment t fires every effect axiom whose event pattern
// matches it and whose guard holds at t; the change is visible from t + 1.
// Occurrences at the horizon have no visible consequence.

#ifndef DCEC_EC_EVENT_CALCULUS_HPP
#define DCEC_EC_EVENT_CALCULUS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcec/core/signature.hpp"
#include "dcec/core/substitute.hpp"
#include "dcec/core/syntax.hpp"

namespace dcec {

class ECError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One-way matching of a pattern against a ground term, extending `b`.
bool match_term(const Term& pattern, const Term& target, Binding& b);

struct FluentLiteral {
  Term fluent;  // pattern
  bool positive = true;
};

struct EffectAxiom {
  Term event;  // pattern; its variables bind the fluent and guard patterns
  bool initiates = true;
  Term fluent;
  std::vector<FluentLiteral> guard;  // conjunction, evaluated at the occurrence moment
};

struct Occurrence {
  Term event;
  std::int64_t moment = 0;

  friend bool operator==(const Occurrence& a, const Occurrence& b) {
    return a.moment == b.moment && a.event == b.event;
  }
};
// By moment, then printed event.
bool operator<(const Occurrence& a, const Occurrence& b);

struct ECTheory {
  std::vector<Term> initial;
  std::vector<EffectAxiom> axioms;
  std::vector<Occurrence> occurrences;
  std::int64_t horizon = 0;

  // Throws ECError when an invariant is violated.
  void validate(const Signature& sig) const;
  ECTheory with_occurrence(const Occurrence& o) const;
  ECTheory without_occurrence(const Occurrence& o) const;
};

enum class Polarity { Initiated, Terminated };
enum class Valence { Good, Bad, Neutral };

std::string_view to_string(Polarity p);
std::string_view to_string(Valence v);

struct Effect {
  Term fluent;
  std::int64_t moment = 0;  // occurrence moment; visible from moment + 1
  Polarity polarity = Polarity::Initiated;
  Valence valence = Valence::Neutral;

  // Identity ignores valence.
  friend bool operator==(const Effect& a, const Effect& b) {
    return a.moment == b.moment && a.polarity == b.polarity && a.fluent == b.fluent;
  }
};
bool operator<(const Effect& a, const Effect& b);
std::string print_effect(const Effect& e);

// holds(f, m + 1) for an initiation, (not (holds f m + 1)) for a termination.
Formula effect_formula(const Effect& e);

struct Change {
  Effect effect;
  Occurrence cause;  // first in occurrence order among the occurrences producing it
  std::vector<FluentLiteral> guard;  // ground guard of the firing axiom
};

struct Trace {
  std::int64_t horizon = 0;
  std::vector<std::vector<Term>> fluents;      // per moment, sorted
  std::vector<std::vector<Term>> events;       // per moment, sorted
  std::vector<Change> changes;                 // in moment order

  bool holds(const Term& fluent, std::int64_t moment) const;
  const Change* change(const Effect& e) const;
  // The occurrence that made `fluent` true at `moment`, if it was initiated.
  std::optional<Occurrence> provenance(const Term& fluent, std::int64_t moment) const;
};

// Throws ECError for contradictory effects (a fluent both initiated and
// terminated at one moment), naming both occurrences.
Trace project(const ECTheory& theory);

struct ChainLink {
  Occurrence occurrence;
  Effect effect;
};

// Ancestry of `e`: its producing occurrence plus, recursively, the changes
// that established its guard literals. Ordered by moment, then event.
// Throws ECError when `e` is not a change in the projection.
std::vector<ChainLink> causal_chain(const Effect& e, const ECTheory& theory);
std::vector<ChainLink> causal_chain(const Effect& e, const Trace& trace);

using Valuation = std::function<std::int64_t(const Effect&)>;

// Changes whose causal chain passes through `act` and that do not also occur
// when `act` is removed. Valence comes from the sign of `value` when given.
// Throws ECError when `act` is not an occurrence of the theory.
std::vector<Effect> effects_of(const Occurrence& act, const ECTheory& theory, const Valuation& value = {});

// holds(f, m) for every fluent holding at m, happens(e, m) for every
// occurrence, prior(i, j) for 0 <= i < j <= horizon.
std::vector<Formula> trace_atoms(const Trace& trace);

}  // namespace dcec

#endif  // DCEC_EC_EVENT_CALCULUS_HPP
