#include "dcec/ec/event_calculus.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dcec/core/error.hpp"
#include "dcec/core/substitute.hpp"

namespace dcec {

bool operator<(const Occurrence& a, const Occurrence& b) {
  if (a.moment != b.moment) return a.moment < b.moment;
  return print_term(a.event) < print_term(b.event);
}

bool operator<(const Effect& a, const Effect& b) {
  if (a.moment != b.moment) return a.moment < b.moment;
  if (a.polarity != b.polarity) return a.polarity < b.polarity;
  return print_term(a.fluent) < print_term(b.fluent);
}

std::string_view to_string(Polarity p) { return p == Polarity::Initiated ? "initiated" : "terminated"; }

std::string_view to_string(Valence v) {
  switch (v) {
    case Valence::Good: return "good";
    case Valence::Bad: return "bad";
    case Valence::Neutral: return "neutral";
  }
  return "?";
}

std::string print_effect(const Effect& e) {
  return std::string(to_string(e.polarity)) + " " + print_term(e.fluent) + " at " + std::to_string(e.moment);
}

Formula effect_formula(const Effect& e) {
  Formula h = Formula::atom("holds", {e.fluent, Term::moment(e.moment + 1)});
  return e.polarity == Polarity::Initiated ? h : Formula::negation(h);
}

bool match_term(const Term& pattern, const Term& target, Binding& b) {
  if (pattern.is_variable()) {
    auto [it, inserted] = b.emplace(pattern.name(), target);
    return inserted || it->second == target;
  }
  if (pattern.kind() != target.kind() || pattern.name() != target.name() ||
      pattern.args().size() != target.args().size())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_term(pattern.args()[i], target.args()[i], b)) return false;
  return true;
}

namespace {

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) out.insert(t.name());
  for (const Term& a : t.args()) collect_vars(a, out);
}

void check_term(const Signature& sig, const Term& t, const std::string& sort, const std::string& what) {
  try {
    sig.check(t);
  } catch (const SortError& e) {
    throw ECError(what + ": " + e.what());
  }
  if (!sig.is_subsort(t.sort(), sort))
    throw ECError(what + ": " + print_term(t) + " is " + t.sort() + ", expected " + sort);
}

}  // namespace

void ECTheory::validate(const Signature& sig) const {
  if (horizon < 0) throw ECError("horizon must be non-negative");
  for (const Term& f : initial) {
    check_term(sig, f, std::string(sorts::kFluent), "initial fluent");
    if (!f.ground()) throw ECError("initial fluent " + print_term(f) + " is not ground");
  }
  for (const Occurrence& o : occurrences) {
    check_term(sig, o.event, std::string(sorts::kEvent), "occurrence");
    if (!o.event.ground()) throw ECError("occurrence " + print_term(o.event) + " is not ground");
    if (o.moment < 0 || o.moment > horizon)
      throw ECError("occurrence " + print_term(o.event) + " at " + std::to_string(o.moment) +
                    " lies outside [0, " + std::to_string(horizon) + "]");
  }
  for (const EffectAxiom& a : axioms) {
    const std::string what = "effect axiom for " + print_term(a.event);
    if (a.event.is_variable()) throw ECError(what + ": event pattern must not be a bare variable");
    check_term(sig, a.event, std::string(sorts::kEvent), what);
    check_term(sig, a.fluent, std::string(sorts::kFluent), what);
    std::set<std::string> bound;
    collect_vars(a.event, bound);
    std::set<std::string> used;
    collect_vars(a.fluent, used);
    for (const FluentLiteral& l : a.guard) {
      check_term(sig, l.fluent, std::string(sorts::kFluent), what + " guard");
      collect_vars(l.fluent, used);
    }
    for (const std::string& v : used)
      if (!bound.count(v)) throw ECError(what + ": variable " + v + " does not occur in the event pattern");
  }
}

ECTheory ECTheory::with_occurrence(const Occurrence& o) const {
  ECTheory t = *this;
  if (std::find(t.occurrences.begin(), t.occurrences.end(), o) == t.occurrences.end()) t.occurrences.push_back(o);
  return t;
}

ECTheory ECTheory::without_occurrence(const Occurrence& o) const {
  ECTheory t = *this;
  std::erase(t.occurrences, o);
  return t;
}

bool Trace::holds(const Term& fluent, std::int64_t moment) const {
  if (moment < 0 || moment > horizon) return false;
  const auto& fs = fluents[static_cast<std::size_t>(moment)];
  return std::binary_search(fs.begin(), fs.end(), fluent);
}

const Change* Trace::change(const Effect& e) const {
  for (const Change& c : changes)
    if (c.effect == e) return &c;
  return nullptr;
}

std::optional<Occurrence> Trace::provenance(const Term& fluent, std::int64_t moment) const {
  if (!holds(fluent, moment)) return std::nullopt;
  const Change* best = nullptr;
  for (const Change& c : changes)
    if (c.effect.fluent == fluent && c.effect.moment < moment) best = &c;
  if (best && best->effect.polarity == Polarity::Initiated) return best->cause;
  return std::nullopt;
}

Trace project(const ECTheory& theory) {
  Trace tr;
  tr.horizon = theory.horizon;
  std::vector<Occurrence> occ = theory.occurrences;
  std::sort(occ.begin(), occ.end());
  std::set<Term> state(theory.initial.begin(), theory.initial.end());
  struct Cause {
    Occurrence occurrence;
    std::vector<FluentLiteral> guard;
  };
  auto first = occ.begin();
  for (std::int64_t t = 0; t <= theory.horizon; ++t) {
    tr.fluents.emplace_back(state.begin(), state.end());
    auto last = first;
    while (last != occ.end() && last->moment == t) ++last;
    std::vector<Term> events;
    for (auto it = first; it != last; ++it) events.push_back(it->event);
    std::sort(events.begin(), events.end());
    tr.events.push_back(std::move(events));
    if (t == theory.horizon) break;

    std::map<Term, Cause> init, term;
    for (auto it = first; it != last; ++it)
      for (const EffectAxiom& ax : theory.axioms) {
        Binding b;
        if (!match_term(ax.event, it->event, b)) continue;
        std::vector<FluentLiteral> guard;
        bool ok = true;
        for (const FluentLiteral& l : ax.guard) {
          Term g = substitute_unchecked(l.fluent, b);
          if (state.count(g) != (l.positive ? 1u : 0u)) ok = false;
          guard.push_back({std::move(g), l.positive});
        }
        if (!ok) continue;
        (ax.initiates ? init : term).emplace(substitute_unchecked(ax.fluent, b), Cause{*it, std::move(guard)});
      }
    for (const auto& [f, c] : init) {
      auto clash = term.find(f);
      if (clash != term.end())
        throw ECError("contradictory effects at moment " + std::to_string(t) + ": " +
                      print_term(c.occurrence.event) + " initiates " + print_term(f) + " and " +
                      print_term(clash->second.occurrence.event) + " terminates it");
    }
    for (auto& [f, c] : init)
      if (!state.count(f)) tr.changes.push_back({{f, t, Polarity::Initiated, Valence::Neutral}, c.occurrence, c.guard});
    for (auto& [f, c] : term)
      if (state.count(f)) tr.changes.push_back({{f, t, Polarity::Terminated, Valence::Neutral}, c.occurrence, c.guard});
    for (const auto& [f, c] : init) state.insert(f);
    for (const auto& [f, c] : term) state.erase(f);
    first = last;
  }
  return tr;
}

namespace {

// Latest change to `fluent` strictly before `moment`.
const Change* latest_change(const Trace& tr, const Term& fluent, std::int64_t moment) {
  const Change* best = nullptr;
  for (const Change& c : tr.changes)
    if (c.effect.fluent == fluent && c.effect.moment < moment) best = &c;
  return best;
}

void ancestry(const Trace& tr, const Change& c, std::vector<ChainLink>& out) {
  for (const ChainLink& l : out)
    if (l.effect == c.effect) return;
  out.push_back({c.cause, c.effect});
  for (const FluentLiteral& lit : c.guard) {
    const Change* src = latest_change(tr, lit.fluent, c.effect.moment);
    const Polarity want = lit.positive ? Polarity::Initiated : Polarity::Terminated;
    if (src && src->effect.polarity == want) ancestry(tr, *src, out);
  }
}

}  // namespace

std::vector<ChainLink> causal_chain(const Effect& e, const Trace& trace) {
  const Change* c = trace.change(e);
  if (!c) throw ECError("effect not in the projection: " + print_effect(e));
  std::vector<ChainLink> out;
  ancestry(trace, *c, out);
  std::sort(out.begin(), out.end(), [](const ChainLink& a, const ChainLink& b) {
    if (a.occurrence.moment != b.occurrence.moment) return a.occurrence.moment < b.occurrence.moment;
    const std::string ea = print_term(a.occurrence.event), eb = print_term(b.occurrence.event);
    if (ea != eb) return ea < eb;
    return a.effect < b.effect;
  });
  return out;
}

std::vector<ChainLink> causal_chain(const Effect& e, const ECTheory& theory) {
  return causal_chain(e, project(theory));
}

std::vector<Effect> effects_of(const Occurrence& act, const ECTheory& theory, const Valuation& value) {
  if (std::find(theory.occurrences.begin(), theory.occurrences.end(), act) == theory.occurrences.end())
    throw ECError("not an occurrence of the theory: (happens " + print_term(act.event) + " " +
                  std::to_string(act.moment) + ")");
  const Trace with = project(theory);
  const Trace without = project(theory.without_occurrence(act));
  std::vector<Effect> out;
  for (const Change& c : with.changes) {
    bool through = false;
    for (const ChainLink& l : causal_chain(c.effect, with))
      if (l.occurrence == act) through = true;
    if (!through || without.change(c.effect)) continue;
    Effect e = c.effect;
    const std::int64_t u = value ? value(e) : 0;
    e.valence = u > 0 ? Valence::Good : u < 0 ? Valence::Bad : Valence::Neutral;
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Formula> trace_atoms(const Trace& trace) {
  std::vector<Formula> out;
  for (std::int64_t m = 0; m <= trace.horizon; ++m) {
    const auto i = static_cast<std::size_t>(m);
    for (const Term& f : trace.fluents[i]) out.push_back(Formula::atom("holds", {f, Term::moment(m)}));
    for (const Term& e : trace.events[i]) out.push_back(Formula::atom("happens", {e, Term::moment(m)}));
  }
  for (std::int64_t i = 0; i <= trace.horizon; ++i)
    for (std::int64_t j = i + 1; j <= trace.horizon; ++j)
      out.push_back(Formula::atom("prior", {Term::moment(i), Term::moment(j)}));
  return out;
}

}  // namespace dcec
