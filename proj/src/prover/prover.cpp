#include "dcec/prover/prover.hpp"

#include <chrono>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <stdexcept>

#include "dcec/core/error.hpp"
#include "dcec/prover/clause.hpp"
#include "dcec/prover/modal.hpp"
#include "dcec/prover/shadow.hpp"

namespace dcec {

std::string_view to_string(ProveStatus s) {
  switch (s) {
    case ProveStatus::Proved: return "proved";
    case ProveStatus::NoProof: return "no-proof";
    case ProveStatus::Timeout: return "timeout";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct BudgetExhausted {
  std::string what;
};

struct ClauseRec {
  Clause clause;
  const char* rule;
  std::vector<std::size_t> parents;  // clause ids, or the input index for cnf
  std::size_t weight;
  std::optional<std::size_t> selected;  // eligible negative literal
};

constexpr std::size_t kNegatedGoal = static_cast<std::size_t>(-1);

std::optional<std::size_t> select_literal(const Clause& c) {
  std::optional<std::size_t> best;
  std::size_t best_w = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].positive) continue;
    Clause one{c[i]};
    std::size_t w = weight(one);
    if (!best || w > best_w) {
      best = i;
      best_w = w;
    }
  }
  return best;
}

class Saturation {
 public:
  Saturation(const Signature& sig, const Budget& budget, Clock::time_point deadline, std::ostream* trace)
      : sig_(sig), budget_(budget), deadline_(deadline), trace_(trace) {}

  // Returns the id of the empty clause, or nullopt on saturation.
  std::optional<std::size_t> run(const std::vector<std::pair<Clause, std::size_t>>& inputs) {
    for (const auto& [c, origin] : inputs)
      if (auto id = add(c, rules::kCnf, {origin})) {
        if (recs_[*id].clause.empty()) return id;
      }
    std::size_t steps = 0;
    while (!passive_.empty()) {
      if ((++steps & 63) == 0) check_clock();
      const std::size_t given = passive_.top().second;
      passive_.pop();
      bool redundant = false;
      for (std::size_t a : active_)
        if (subsumes(recs_[a].clause, recs_[given].clause, sig_)) {
          redundant = true;
          break;
        }
      if (redundant) continue;
      active_.push_back(given);
      if (auto e = infer(given)) return e;
    }
    return std::nullopt;
  }

  const std::vector<ClauseRec>& records() const { return recs_; }
  std::size_t generated() const { return recs_.size(); }

 private:
  void check_clock() const {
    if (Clock::now() >= deadline_) throw BudgetExhausted{"wall-clock limit"};
  }

  std::optional<std::size_t> add(Clause c, const char* rule, std::vector<std::size_t> parents) {
    c = normalize(std::move(c));
    if (is_tautology(c)) return std::nullopt;
    std::string key = print_clause(c);
    if (!seen_.insert(key).second) return std::nullopt;
    if (recs_.size() >= budget_.max_clauses) throw BudgetExhausted{"clause limit"};
    const std::size_t id = recs_.size();
    if (trace_) {
      *trace_ << "[" << id + 1 << "] " << key << "  (" << rule;
      for (std::size_t p : parents) *trace_ << ' ' << (rule == rules::kCnf ? p : p + 1);
      *trace_ << ")\n";
    }
    auto sel = select_literal(c);
    const std::size_t w = weight(c);
    recs_.push_back({std::move(c), rule, std::move(parents), w, sel});
    passive_.emplace(w, id);
    return id;
  }

  std::optional<std::size_t> infer(std::size_t given) {
    const Clause g = recs_[given].clause;
    if (!recs_[given].selected) {
      for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = x + 1; y < g.size(); ++y) {
          Binding mgu;
          if (!unify_atoms(g[x], g[y], mgu, sig_)) continue;
          if (auto id = add(resolve(g, mgu), rules::kFactor, {given}))
            if (recs_[*id].clause.empty()) return id;
        }
    }
    for (std::size_t ai = 0; ai < active_.size(); ++ai) {
      const std::size_t other = active_[ai];
      if (auto e = resolve_pair(given, other)) return e;
      if (other != given)
        if (auto e = resolve_pair(other, given)) return e;
    }
    return std::nullopt;
  }

  // Resolves a positive eligible literal of `left` against a negative
  // eligible literal of `right`. The resolvent lists left's remaining
  // literals first.
  std::optional<std::size_t> resolve_pair(std::size_t left, std::size_t right) {
    // Only all-positive clauses offer positive literals.
    if (recs_[left].selected || !recs_[right].selected) return std::nullopt;
    const Clause a = rename_variables(recs_[left].clause, "L");
    const Clause b = rename_variables(recs_[right].clause, "R");
    const std::size_t y = *recs_[right].selected;
    for (std::size_t x = 0; x < a.size(); ++x) {
      Binding mgu;
      if (!unify_atoms(a[x], b[y], mgu, sig_)) continue;
      Clause r;
      for (std::size_t k = 0; k < a.size(); ++k)
        if (k != x) r.push_back(a[k]);
      for (std::size_t k = 0; k < b.size(); ++k)
        if (k != y) r.push_back(b[k]);
      if (auto id = add(resolve(r, mgu), rules::kResolve, {left, right}))
        if (recs_[*id].clause.empty()) return id;
    }
    return std::nullopt;
  }

  using Entry = std::pair<std::size_t, std::size_t>;  // (weight, id)
  const Signature& sig_;
  const Budget& budget_;
  Clock::time_point deadline_;
  std::ostream* trace_;
  std::vector<ClauseRec> recs_;
  std::set<std::string> seen_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> passive_;
  std::vector<std::size_t> active_;
};

void check_input(const Signature& sig, const Formula& f) {
  sig.check(f);
  if (!is_closed(f)) throw SortError("formula is not closed: " + print_formula(f));
}

// Emits the expansion entries `needed` (closed under premises) in order,
// recording their step indices.
void emit_expansion(const Expansion& ex, std::set<std::size_t> needed, Proof& proof,
                    std::map<std::size_t, std::size_t>& step_of) {
  std::vector<std::size_t> stack(needed.begin(), needed.end());
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t p : ex.entries()[i].premises)
      if (needed.insert(p).second) stack.push_back(p);
  }
  for (std::size_t i : needed) {
    const ExpansionEntry& e = ex.entries()[i];
    std::vector<std::size_t> premises;
    for (std::size_t p : e.premises) premises.push_back(step_of.at(p));
    step_of[i] = proof.steps.size();
    proof.steps.push_back({e.formula, e.rule, std::move(premises)});
  }
}

}  // namespace

ProveResult prove(const Signature& sig, const std::vector<Formula>& assumptions, const Formula& goal,
                  const Budget& budget, std::ostream* trace) {
  budget.validate();
  const auto deadline = Clock::now() + budget.wall_clock;
  for (const Formula& a : assumptions) check_input(sig, a);
  check_input(sig, goal);

  std::vector<Formula> problem = assumptions;
  problem.push_back(goal);
  const Expansion ex = expand_modal_derivations(assumptions, budget.max_depth, conjunction_targets(problem));

  ProveResult result;
  if (auto hit = ex.find(goal)) {
    Proof proof;
    std::map<std::size_t, std::size_t> step_of;
    emit_expansion(ex, {*hit}, proof, step_of);
    result.status = ProveStatus::Proved;
    result.proof = std::move(proof);
    return result;
  }

  ShadowMap sm;
  const Formula negated = Formula::negation(goal);
  std::vector<std::pair<Clause, std::size_t>> inputs;
  std::optional<std::size_t> refutation;
  Saturation sat(sig, budget, deadline, trace);
  try {
    for (std::size_t i = 0; i <= ex.entries().size(); ++i) {
      const bool is_goal = i == ex.entries().size();
      const Formula& f = is_goal ? negated : ex.entries()[i].formula;
      for (Clause& c : clausify(sm.shadow(f), skolem_prefix(f), budget.max_clauses))
        inputs.emplace_back(std::move(c), is_goal ? kNegatedGoal : i);
    }
    refutation = sat.run(inputs);
  } catch (const BudgetExhausted& e) {
    result.status = ProveStatus::Timeout;
    result.detail = e.what;
    result.generated_clauses = sat.generated();
    return result;
  } catch (const std::length_error&) {
    result.status = ProveStatus::Timeout;
    result.detail = "clause limit";
    return result;
  }
  result.generated_clauses = sat.generated();
  if (!refutation) {
    result.status = ProveStatus::NoProof;
    return result;
  }

  // Clauses on the refutation, in generation order (parents precede children).
  const auto& recs = sat.records();
  std::set<std::size_t> used{*refutation};
  std::vector<std::size_t> stack{*refutation};
  std::set<std::size_t> needed_inputs;
  while (!stack.empty()) {
    std::size_t id = stack.back();
    stack.pop_back();
    const ClauseRec& r = recs[id];
    if (r.rule == rules::kCnf) {
      if (r.parents[0] != kNegatedGoal) needed_inputs.insert(r.parents[0]);
      continue;
    }
    for (std::size_t p : r.parents)
      if (used.insert(p).second) stack.push_back(p);
  }

  Proof proof;
  std::map<std::size_t, std::size_t> step_of;
  emit_expansion(ex, needed_inputs, proof, step_of);
  // The refute step needs the negated goal even if the assumptions alone are
  // contradictory.
  const std::size_t neg_step = proof.steps.size();
  proof.steps.push_back({negated, rules::kNegateGoal, {}});
  std::map<std::size_t, std::size_t> clause_step;
  for (std::size_t id : used) {
    const ClauseRec& r = recs[id];
    std::vector<std::size_t> premises;
    if (r.rule == rules::kCnf)
      premises.push_back(r.parents[0] == kNegatedGoal ? neg_step : step_of.at(r.parents[0]));
    else
      for (std::size_t p : r.parents) premises.push_back(clause_step.at(p));
    clause_step[id] = proof.steps.size();
    proof.steps.push_back({sm.unshadow(clause_formula(r.clause)), r.rule, std::move(premises)});
  }
  proof.steps.push_back({goal, rules::kRefute, {neg_step, clause_step.at(*refutation)}});
  result.status = ProveStatus::Proved;
  result.proof = std::move(proof);
  return result;
}

}  // namespace dcec
