// The Prevents definition, the goal-deprivation obligation and the weapon
// guard's LOCK/ALLOW adjudication.

#ifndef DCEC_GUARD_GUARD_HPP
#define DCEC_GUARD_GUARD_HPP

#include <chrono>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcec/ethics/dde.hpp"
#include "dcec/guard/scenario.hpp"
#include "dcec/prover/budget.hpp"
#include "dcec/prover/proof.hpp"
#include "dcec/prover/prover.hpp"

namespace dcec {

// exists t1, t2 : Moment.
//   prior(t, t1) & prior(t1, t2)
//   & K(x, t, D(y, t, holds(g, t2)) & I(y, t, happens(g, t2)))
//   & K(x, t, exists a1 : ActionType. I(y, t1, happens(action(y, a1), t1))
//            & ((happens(action(y, a1), t1) & ~Block(x, y, g, a, t)) -> happens(g, t2)))
//   & K(x, t, happens(action(x, a), t) -> Block(x, y, g, a, t))
//   & happens(action(x, a), t)
// Throws SortError for ill-sorted arguments.
Formula prevents_body(const Signature& sig, const Term& x, const Term& y, const Term& g, const Term& a, const Term& t);

// The six conjuncts of the body, with t1 and t2 free.
std::vector<Formula> prevents_conjuncts(const Term& x, const Term& y, const Term& g, const Term& a, const Term& t);

enum class Answer { Yes, No, Unknown };
std::string_view to_string(Answer a);

struct PreventsResult {
  Answer answer = Answer::Unknown;
  std::optional<Proof> proof;
  std::string detail;
};

// Countermodels are only searched for when the theory names at most this
// many agents, moments and action types.
inline constexpr std::size_t kMaxCountermodelAgents = 3;
inline constexpr std::size_t kMaxCountermodelMoments = 4;
inline constexpr std::size_t kMaxCountermodelActionTypes = 3;

PreventsResult prevents_holds(const Signature& sig, const std::vector<Formula>& theory, const Term& x, const Term& y,
                              const Term& g, const Term& a, const Term& t, const Budget& budget = {});
// Over the scenario facts and the trace atoms of its projection.
PreventsResult prevents_holds(const Scenario& s, const Term& x, const Term& y, const Term& g, const Term& a,
                              const Term& t, const Budget& budget = {});
std::vector<Formula> prevents_theory(const Scenario& s);

// (exists v : Agent (exists g : Goal (innocent(v) & prevents_body(req, v, g, atype, t))))
//   -> O(req, t, sigma_default, ~happens(action(req, atype), t))
Formula deprivation_axiom(const Scenario& s);
// O(req, t, sigma_default, ~happens(action(req, atype), t))
Formula refrain_obligation(const Scenario& s);
// Facts, trace atoms of the projection with the request performed, and the
// deprivation axiom.
std::vector<Formula> guard_theory(const Scenario& s);

enum class Decision { Lock, Allow };
std::string_view to_string(Decision d);

struct Verdict {
  Decision decision = Decision::Lock;
  Formula obligation = Formula::truth();
  ProveStatus obligation_status = ProveStatus::Timeout;
  std::optional<Proof> obligation_proof;
  bool proof_verified = false;
  std::optional<DDEVerdict> dde;
  bool dde_unknown = false;  // the obligation search ran out of budget
  std::chrono::milliseconds elapsed{0};

  // LOCK iff a proved obligation is not overridden by a compliant DDE
  // verdict, or the obligation search timed out.
  bool consistent() const;
};

// `trace` receives the prover trace of the obligation search.
Verdict adjudicate(const Scenario& s, const Budget& budget = {}, std::ostream* trace = nullptr);

class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class QueryKind { Intention, Forbiddenness };

// Intention asks I(h, t, phi); forbiddenness asks O(h, t, sigma_default, ~phi).
// Yes when that form is provable from guard_theory, no when its negation is.
Answer epistemic_query(const Scenario& s, QueryKind kind, const Term& h, const Term& t, const Formula& phi,
                       const Budget& budget = {});

}  // namespace dcec

#endif  // DCEC_GUARD_GUARD_HPP
