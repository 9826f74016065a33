// Brute-force double-effect checker used to cross-check dde_compliant.
//
// It replays the trace moment by moment on printed fluents, recomputes causal
// ancestry by walking the whole change list, and decides intentions by
// finite-model search instead of resolution.

#ifndef DCEC_TESTS_DDE_ORACLE_HPP
#define DCEC_TESTS_DDE_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dcec/ethics/dde.hpp"
#include "dcec/prover/model_finder.hpp"
#include "generators.hpp"

namespace dcec::testing {

namespace oracle_detail {

using Subst = std::map<std::string, Term>;

inline bool match(const Term& p, const Term& t, Subst& s) {
  if (p.is_variable()) {
    auto [it, fresh] = s.emplace(p.name(), t);
    return fresh || it->second == t;
  }
  if (p.kind() != t.kind() || p.name() != t.name() || p.args().size() != t.args().size()) return false;
  for (std::size_t i = 0; i < p.args().size(); ++i)
    if (!match(p.args()[i], t.args()[i], s)) return false;
  return true;
}

inline Term instantiate(const Term& p, const Subst& s) {
  if (p.is_variable()) {
    auto it = s.find(p.name());
    return it == s.end() ? p : it->second;
  }
  if (!p.is_apply()) return p;
  std::vector<Term> args;
  for (const Term& a : p.args()) args.push_back(instantiate(a, s));
  return Term::apply(p.name(), std::move(args), p.sort());
}

// (fluent, moment, initiated)
using Key = std::tuple<std::string, std::int64_t, bool>;

struct Step {
  Key key;
  Term fluent;
  std::string cause;  // "<moment> <event>"
  std::vector<std::pair<std::string, bool>> guard;
};

struct Run {
  bool contradictory = false;
  std::vector<Step> steps;
};

inline std::string occ_key(const Occurrence& o) { return std::to_string(o.moment) + " " + print_term(o.event); }

inline Run replay(const ECTheory& th) {
  Run run;
  std::vector<Occurrence> occ = th.occurrences;
  std::sort(occ.begin(), occ.end(), [](const Occurrence& a, const Occurrence& b) {
    return std::make_pair(a.moment, print_term(a.event)) < std::make_pair(b.moment, print_term(b.event));
  });
  std::set<std::string> state;
  for (const Term& f : th.initial) state.insert(print_term(f));
  for (std::int64_t t = 0; t < th.horizon; ++t) {
    std::map<std::string, Step> up, down;
    for (const Occurrence& o : occ) {
      if (o.moment != t) continue;
      for (const EffectAxiom& ax : th.axioms) {
        Subst s;
        if (!match(ax.event, o.event, s)) continue;
        Step st{{}, instantiate(ax.fluent, s), occ_key(o), {}};
        bool fires = true;
        for (const FluentLiteral& l : ax.guard) {
          const std::string g = print_term(instantiate(l.fluent, s));
          if ((state.count(g) > 0) != l.positive) fires = false;
          st.guard.emplace_back(g, l.positive);
        }
        if (!fires) continue;
        const std::string f = print_term(st.fluent);
        st.key = {f, t, ax.initiates};
        (ax.initiates ? up : down).emplace(f, std::move(st));
      }
    }
    for (const auto& [f, st] : up)
      if (down.count(f)) {
        run.contradictory = true;
        return run;
      }
    for (auto& [f, st] : up)
      if (!state.count(f)) run.steps.push_back(st);
    for (auto& [f, st] : down)
      if (state.count(f)) run.steps.push_back(st);
    for (const auto& [f, st] : up) state.insert(f);
    for (const auto& [f, st] : down) state.erase(f);
  }
  return run;
}

inline const Step* find(const Run& r, const Key& k) {
  for (const Step& s : r.steps)
    if (s.key == k) return &s;
  return nullptr;
}

// Every step reachable from `k` through guard literals, `k` included.
inline void ancestors(const Run& r, const Key& k, std::set<Key>& seen) {
  if (!seen.insert(k).second) return;
  const Step* s = find(r, k);
  const std::int64_t at = std::get<1>(k);
  for (const auto& [g, positive] : s->guard) {
    const Step* last = nullptr;
    for (const Step& c : r.steps)
      if (std::get<0>(c.key) == g && std::get<1>(c.key) < at &&
          (!last || std::get<1>(c.key) >= std::get<1>(last->key)))
        last = &c;
    if (last && std::get<2>(last->key) == positive) ancestors(r, last->key, seen);
  }
}

inline std::int64_t worth(const UtilityMap& u, const Term& fluent, bool initiated) {
  for (const UtilityEntry& e : u.entries) {
    Subst s;
    if ((e.polarity == Polarity::Initiated) == initiated && match(e.pattern, fluent, s)) return e.utility;
  }
  return 0;
}

}  // namespace oracle_detail

struct OracleEffect {
  std::string fluent;
  std::int64_t moment = 0;
  bool initiated = true;
  std::int64_t utility = 0;

  friend bool operator==(const OracleEffect&, const OracleEffect&) = default;
};

struct OracleVerdict {
  bool contradictory = false;
  ClauseResult c1 = ClauseResult::Unknown, c2 = ClauseResult::Unknown, c3a = ClauseResult::Unknown,
               c3b = ClauseResult::Unknown, c4 = ClauseResult::Unknown;
  std::int64_t net = 0;
  std::vector<OracleEffect> effects;  // sorted by fluent, moment, polarity
};

inline OracleVerdict brute_force_dde(const DdeProblem& p) {
  using namespace oracle_detail;
  OracleVerdict v;
  const Occurrence act{Term::apply("action", {p.agent, p.atype}, "Action"), p.moment};
  ECTheory with = p.theory, without = p.theory;
  if (std::find(with.occurrences.begin(), with.occurrences.end(), act) == with.occurrences.end())
    with.occurrences.push_back(act);
  std::erase(without.occurrences, act);
  const Run a = replay(with), b = replay(without);
  if (a.contradictory || b.contradictory) {
    v.contradictory = true;
    return v;
  }

  std::vector<const Step*> mine;
  for (const Step& s : a.steps) {
    std::set<Key> anc;
    ancestors(a, s.key, anc);
    bool through = false;
    for (const Key& k : anc)
      if (find(a, k)->cause == occ_key(act)) through = true;
    if (through && !find(b, s.key)) mine.push_back(&s);
  }

  const auto cat = p.hierarchy.classification.find(print_term(p.atype));
  const std::string category = cat == p.hierarchy.classification.end() ? p.hierarchy.neutral : cat->second;
  const auto pos = [&](const std::string& c) {
    return std::find(p.hierarchy.categories.begin(), p.hierarchy.categories.end(), c) - p.hierarchy.categories.begin();
  };
  v.c1 = pos(category) >= pos(p.hierarchy.neutral) ? ClauseResult::Pass : ClauseResult::Fail;

  std::map<Key, std::int64_t> value;
  for (const Step* s : mine) {
    const std::int64_t u = worth(p.utilities, s->fluent, std::get<2>(s->key));
    value[s->key] = u;
    v.net += u;
    v.effects.push_back({std::get<0>(s->key), std::get<1>(s->key), std::get<2>(s->key), u});
  }
  std::sort(v.effects.begin(), v.effects.end(), [](const OracleEffect& x, const OracleEffect& y) {
    return std::make_tuple(x.fluent, x.moment, !x.initiated) < std::make_tuple(y.fluent, y.moment, !y.initiated);
  });
  v.c2 = v.net > p.utilities.gamma ? ClauseResult::Pass : ClauseResult::Fail;

  // An intention is provable iff the facts with its negation have no model.
  bool a_fail = false, a_unknown = false, b_fail = false, b_unknown = false;
  for (const Step* s : mine) {
    Formula at = Formula::atom("holds", {s->fluent, Term::moment(std::get<1>(s->key) + 1)});
    if (!std::get<2>(s->key)) at = Formula::negation(at);
    std::vector<Formula> fs = p.facts;
    fs.push_back(Formula::negation(Formula::intends(p.agent, Term::moment(p.moment), at)));
    const ModelStatus m = find_model(p.signature, fs).status;
    const std::int64_t u = value[s->key];
    if (m == ModelStatus::TooLarge) {
      a_unknown = true;
      if (u < 0) b_unknown = true;
      continue;
    }
    const bool intended = m == ModelStatus::Unsatisfiable;
    if (u > 0 && !intended) a_fail = true;
    if (u <= 0 && intended) a_fail = true;
    if (u < 0 && intended) b_fail = true;
  }
  const auto combine = [](bool fail, bool unknown) {
    return fail ? ClauseResult::Fail : unknown ? ClauseResult::Unknown : ClauseResult::Pass;
  };
  v.c3a = combine(a_fail, a_unknown);
  v.c3b = combine(b_fail, b_unknown);

  v.c4 = ClauseResult::Pass;
  for (const Step* s : mine) {
    if (value[s->key] <= 0) continue;
    std::set<Key> anc;
    ancestors(a, s->key, anc);
    for (const Key& k : anc)
      if (value.count(k) && value[k] < 0) v.c4 = ClauseResult::Fail;
  }
  return v;
}

// Clause results and effects on which the two checkers differ.
inline std::vector<std::string> disagreements(const DDEVerdict& got, const OracleVerdict& want) {
  std::vector<std::string> out;
  const std::pair<const ClauseVerdict*, ClauseResult> pairs[] = {
      {&got.c1, want.c1}, {&got.c2, want.c2}, {&got.c3a, want.c3a}, {&got.c3b, want.c3b}, {&got.c4, want.c4}};
  for (const auto& [c, w] : pairs)
    if (c->result != w)
      out.push_back(c->name + ": " + std::string(to_string(c->result)) + " vs " + std::string(to_string(w)));
  if (got.net != want.net) out.push_back("net " + std::to_string(got.net) + " vs " + std::to_string(want.net));
  std::vector<OracleEffect> mine;
  for (const Effect& e : got.effects) {
    const std::int64_t sign = e.valence == Valence::Good ? 1 : e.valence == Valence::Bad ? -1 : 0;
    mine.push_back({print_term(e.fluent), e.moment, e.polarity == Polarity::Initiated, sign});
  }
  std::vector<OracleEffect> theirs = want.effects;
  for (OracleEffect& e : theirs) e.utility = e.utility > 0 ? 1 : e.utility < 0 ? -1 : 0;
  const auto order = [](const OracleEffect& x, const OracleEffect& y) {
    return std::make_tuple(x.fluent, x.moment, !x.initiated) < std::make_tuple(y.fluent, y.moment, !y.initiated);
  };
  std::sort(mine.begin(), mine.end(), order);
  if (mine != theirs) out.push_back("effects differ");
  return out;
}

inline std::string describe(const DdeProblem& p) {
  std::string s = "request " + print_term(p.agent) + " " + print_term(p.atype) + " at " + std::to_string(p.moment) +
                  ", horizon " + std::to_string(p.theory.horizon) + "\n";
  for (const Term& f : p.theory.initial) s += "initially " + print_term(f) + "\n";
  for (const EffectAxiom& a : p.theory.axioms) {
    s += print_term(a.event) + (a.initiates ? " initiates " : " terminates ") + print_term(a.fluent);
    for (const FluentLiteral& l : a.guard) s += (l.positive ? " if " : " unless ") + print_term(l.fluent);
    s += "\n";
  }
  for (const Occurrence& o : p.theory.occurrences) s += "happens " + print_term(o.event) + " " + std::to_string(o.moment) + "\n";
  for (const UtilityEntry& u : p.utilities.entries)
    s += "utility " + print_term(u.pattern) + " " + std::string(to_string(u.polarity)) + " " + std::to_string(u.utility) + "\n";
  s += "gamma " + std::to_string(p.utilities.gamma) + "\n";
  for (const Formula& f : p.facts) s += "fact " + print_formula(f) + "\n";
  return s;
}

// Random scenarios with at most four moments and three fluents.
class DdeScenarioGen {
 public:
  explicit DdeScenarioGen(std::uint64_t seed)
      : rng_(seed),
        sig_(parse_formula_file("(constants (a0 a1 Agent) (k0 k1 k2 ActionType) (f0 f1 f2 Fluent)) (predicates P)")
                 .signature) {}

  DdeProblem next() {
    DdeProblem p;
    p.signature = sig_;
    p.theory.horizon = 2 + rng_.below(2);
    p.agent = agent();
    p.atype = atype();
    p.moment = rng_.below(static_cast<int>(p.theory.horizon));
    for (const std::string& f : fluents_)
      if (rng_.chance(40)) p.theory.initial.push_back(fluent(f));

    // The requested action usually has effects, and later occurrences may
    // depend on them through guards.
    const int axioms = 2 + rng_.below(4);
    for (int i = 0; i < axioms; ++i) {
      Term event = i < 2 && rng_.chance(80) ? action(rng_.chance(50) ? Term::variable("x", "Agent") : p.agent, p.atype)
                                            : event_pattern();
      EffectAxiom ax{std::move(event), rng_.chance(55), fluent(rng_.pick(fluents_)), {}};
      if (rng_.below(3) == 0) ax.guard.push_back({fluent(rng_.pick(fluents_)), rng_.chance(70)});
      p.theory.axioms.push_back(std::move(ax));
    }
    const int occs = rng_.below(4);
    for (int i = 0; i < occs; ++i) {
      Occurrence o{action(agent(), atype()), p.moment + rng_.below(static_cast<int>(p.theory.horizon - p.moment) + 1)};
      if (std::find(p.theory.occurrences.begin(), p.theory.occurrences.end(), o) == p.theory.occurrences.end())
        p.theory.occurrences.push_back(o);
    }

    if (rng_.chance(30)) p.hierarchy.classification[print_term(atype())] = rng_.pick(p.hierarchy.categories);

    const int entries = 1 + rng_.below(4);
    for (int i = 0; i < entries; ++i) {
      Term pattern = rng_.chance(15) ? Term::variable("x", "Fluent") : fluent(rng_.pick(fluents_));
      p.utilities.entries.push_back(
          {pattern, rng_.chance(50) ? Polarity::Initiated : Polarity::Terminated, rng_.below(5) - 2});
    }
    p.utilities.gamma = rng_.below(2);

    const int facts = rng_.below(5);
    for (int i = 0; i < facts; ++i) p.facts.push_back(fact(p));
    return p;
  }

 private:
  Term fluent(const std::string& name) { return Term::constant(name, "Fluent"); }
  Term agent() { return Term::constant(rng_.chance(50) ? "a0" : "a1", "Agent"); }
  Term atype() { return Term::constant(rng_.pick(atypes_), "ActionType"); }
  Term action(Term who, Term what) { return Term::apply("action", {std::move(who), std::move(what)}, "Action"); }
  Term event_pattern() {
    return action(rng_.chance(40) ? Term::variable("x", "Agent") : agent(), atype());
  }

  Formula intention(const Term& who, std::int64_t at, std::int64_t horizon) {
    const std::int64_t when = rng_.chance(60) ? at + 1 : 1 + rng_.below(static_cast<int>(horizon));
    Formula body = Formula::atom("holds", {fluent(rng_.pick(fluents_)), Term::moment(when)});
    if (rng_.chance(40)) body = Formula::negation(body);
    return Formula::intends(who, Term::moment(at), body);
  }

  // Mostly intentions of the acting agent, some through knowledge or a
  // conditional, some about another agent or moment.
  Formula fact(const DdeProblem& p) {
    const std::int64_t h = p.theory.horizon;
    switch (rng_.below(6)) {
      case 0: return Formula::knows(p.agent, Term::moment(p.moment), intention(p.agent, p.moment, h));
      case 1: return Formula::implication(Formula::atom("P", {}), intention(p.agent, p.moment, h));
      case 2: return rng_.chance(50) ? Formula::atom("P", {}) : intention(agent(), rng_.below(static_cast<int>(h)), h);
      default: return intention(p.agent, p.moment, h);
    }
  }

  Rng rng_;
  Signature sig_;
  std::vector<std::string> fluents_{"f0", "f1", "f2"};
  std::vector<std::string> atypes_{"k0", "k1", "k2"};
};

}  // namespace dcec::testing

#endif  // DCEC_TESTS_DDE_ORACLE_HPP
