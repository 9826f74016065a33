#include <gtest/gtest.h>

#include <algorithm>

#include "dcec/core/parse.hpp"
#include "dcec/ec/event_calculus.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace dcec;
using dcec::testing::signature_from;

namespace {

const Signature& sig() {
  static const Signature s = signature_from(R"(
    (constants (p assailant ranger1 ranger2 ranger3 ranger4 Agent) (shoot secure wait Event))
    (functions (alive Agent -> Fluent) (safe Agent -> Fluent) (neutralized Agent -> Fluent)
               (armed Agent -> Fluent) (kill Agent -> Event) (arm Agent -> Event))
  )");
  return s;
}

Term t(std::string_view text) { return parse_term(read_sexprs(text).at(0), sig()); }

Term tv(std::string_view text, const VarEnv& env) { return parse_term(read_sexprs(text).at(0), sig(), env); }

EffectAxiom axiom(std::string_view ev, bool init, std::string_view fl, std::vector<FluentLiteral> guard = {}) {
  return {t(ev), init, t(fl), std::move(guard)};
}

std::vector<std::int64_t> moments_holding(const Trace& tr, const Term& f) {
  std::vector<std::int64_t> out;
  for (std::int64_t m = 0; m <= tr.horizon; ++m)
    if (tr.holds(f, m)) out.push_back(m);
  return out;
}

// Rangers stay alive; shooting terminates the assailant and neutralizes it;
// securing the scene makes each ranger safe once the assailant is neutralized.
ECTheory rescue(bool guard_on_death) {
  ECTheory th;
  th.horizon = 4;
  th.initial = {t("(alive assailant)"), t("(alive ranger1)"), t("(alive ranger2)"), t("(alive ranger3)"),
                t("(alive ranger4)")};
  th.axioms.push_back(axiom("shoot", false, "(alive assailant)"));
  th.axioms.push_back(axiom("shoot", true, "(neutralized assailant)"));
  FluentLiteral g = guard_on_death ? FluentLiteral{t("(alive assailant)"), false}
                                   : FluentLiteral{t("(neutralized assailant)"), true};
  for (const char* r : {"ranger1", "ranger2", "ranger3", "ranger4"})
    th.axioms.push_back(axiom("secure", true, std::string("(safe ") + r + ")", {g}));
  th.occurrences = {{t("shoot"), 2}, {t("secure"), 3}};
  return th;
}

std::int64_t rescue_utility(const Effect& e) {
  if (e.fluent.name() == "safe") return e.polarity == Polarity::Initiated ? 1 : -1;
  if (e.fluent.name() == "alive") return e.polarity == Polarity::Terminated ? -1 : 1;
  return 0;
}

}  // namespace

TEST(Project, InertiaWithoutOccurrences) {
  ECTheory th;
  th.horizon = 3;
  th.initial = {t("(alive p)")};
  th.validate(sig());
  Trace tr = project(th);
  EXPECT_EQ(moments_holding(tr, t("(alive p)")), (std::vector<std::int64_t>{0, 1, 2, 3}));
  EXPECT_TRUE(tr.changes.empty());
}

TEST(Project, SingleTermination) {
  ECTheory th;
  th.horizon = 3;
  th.initial = {t("(alive p)")};
  th.axioms.push_back(axiom("shoot", false, "(alive p)"));
  th.occurrences = {{t("shoot"), 1}};
  th.validate(sig());
  Trace tr = project(th);
  EXPECT_EQ(moments_holding(tr, t("(alive p)")), (std::vector<std::int64_t>{0, 1}));
  ASSERT_EQ(tr.changes.size(), 1u);
  EXPECT_EQ(tr.changes[0].cause, (Occurrence{t("shoot"), 1}));
}

TEST(Project, RescueTrace) {
  Trace tr = project(rescue(false));
  for (const char* r : {"(alive ranger1)", "(alive ranger2)", "(alive ranger3)", "(alive ranger4)"})
    EXPECT_EQ(moments_holding(tr, t(r)), (std::vector<std::int64_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(moments_holding(tr, t("(alive assailant)")), (std::vector<std::int64_t>{0, 1, 2}));
  EXPECT_EQ(moments_holding(tr, t("(neutralized assailant)")), (std::vector<std::int64_t>{3, 4}));
  EXPECT_EQ(moments_holding(tr, t("(safe ranger3)")), (std::vector<std::int64_t>{4}));
  EXPECT_EQ(tr.provenance(t("(safe ranger3)"), 4), (Occurrence{t("secure"), 3}));
  EXPECT_FALSE(tr.provenance(t("(alive ranger1)"), 2));
}

TEST(Project, GuardEvaluatedBeforeConcurrentEffects) {
  ECTheory th = rescue(false);
  th.occurrences = {{t("shoot"), 2}, {t("secure"), 2}};
  Trace tr = project(th);
  EXPECT_TRUE(moments_holding(tr, t("(safe ranger1)")).empty());
}

TEST(Project, PatternVariables) {
  ECTheory th;
  th.horizon = 2;
  th.initial = {t("(alive p)"), t("(alive ranger1)")};
  VarEnv env{Term::variable("x", "Agent")};
  th.axioms.push_back({tv("(kill x)", env), false, tv("(alive x)", env), {{tv("(armed x)", env), false}}});
  th.occurrences = {{t("(kill ranger1)"), 0}, {t("(kill p)"), 1}};
  th.validate(sig());
  Trace tr = project(th);
  EXPECT_EQ(moments_holding(tr, t("(alive ranger1)")), (std::vector<std::int64_t>{0}));
  EXPECT_EQ(moments_holding(tr, t("(alive p)")), (std::vector<std::int64_t>{0, 1}));
}

TEST(Project, ContradictionNamesBothOccurrences) {
  ECTheory th;
  th.horizon = 2;
  th.axioms.push_back(axiom("shoot", true, "(alive p)"));
  th.axioms.push_back(axiom("wait", false, "(alive p)"));
  th.occurrences = {{t("shoot"), 0}, {t("wait"), 0}};
  try {
    project(th);
    FAIL() << "expected ECError";
  } catch (const ECError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("shoot"), std::string::npos);
    EXPECT_NE(msg.find("wait"), std::string::npos);
  }
}

TEST(Project, OccurrenceAtHorizonHasNoEffect) {
  ECTheory th;
  th.horizon = 2;
  th.initial = {t("(alive p)")};
  th.axioms.push_back(axiom("shoot", false, "(alive p)"));
  th.occurrences = {{t("shoot"), 2}};
  EXPECT_EQ(moments_holding(project(th), t("(alive p)")).size(), 3u);
}

TEST(Validate, RejectsBadTheories) {
  ECTheory th;
  th.horizon = 2;
  th.occurrences = {{t("shoot"), 3}};
  EXPECT_THROW(th.validate(sig()), ECError);

  ECTheory unbound;
  unbound.horizon = 2;
  VarEnv env{Term::variable("x", "Agent"), Term::variable("y", "Agent")};
  unbound.axioms.push_back({tv("(kill x)", env), false, tv("(alive y)", env), {}});
  EXPECT_THROW(unbound.validate(sig()), ECError);

  ECTheory wrong_sort;
  wrong_sort.horizon = 1;
  wrong_sort.initial = {t("p")};
  EXPECT_THROW(wrong_sort.validate(sig()), ECError);
}

TEST(EffectsOf, NoMatchingAxiomIsEmpty) {
  ECTheory th = rescue(false);
  th.occurrences.push_back({t("wait"), 1});
  EXPECT_TRUE(effects_of({t("wait"), 1}, th).empty());
}

TEST(EffectsOf, RescueShoot) {
  std::vector<Effect> es = effects_of({t("shoot"), 2}, rescue(false), rescue_utility);
  int good = 0, bad = 0;
  for (const Effect& e : es) {
    if (e.valence == Valence::Good) {
      ++good;
      EXPECT_EQ(e.fluent.name(), "safe");
      EXPECT_EQ(e.polarity, Polarity::Initiated);
    }
    if (e.valence == Valence::Bad) {
      ++bad;
      EXPECT_EQ(e.fluent, t("(alive assailant)"));
      EXPECT_EQ(e.polarity, Polarity::Terminated);
    }
  }
  EXPECT_EQ(good, 4);
  EXPECT_EQ(bad, 1);
  // The only other effect is the neutral neutralization.
  EXPECT_EQ(es.size(), 6u);
}

TEST(EffectsOf, ConcurrentDuplicateIsEmpty) {
  ECTheory th;
  th.horizon = 2;
  th.initial = {t("(alive p)")};
  th.axioms.push_back(axiom("shoot", false, "(alive p)"));
  th.axioms.push_back(axiom("(kill p)", false, "(alive p)"));
  th.occurrences = {{t("shoot"), 1}, {t("(kill p)"), 1}};
  EXPECT_TRUE(effects_of({t("shoot"), 1}, th).empty());
  EXPECT_TRUE(effects_of({t("(kill p)"), 1}, th).empty());
  EXPECT_EQ(project(th).changes.size(), 1u);
}

TEST(EffectsOf, NotAnOccurrence) { EXPECT_THROW(effects_of({t("wait"), 0}, rescue(false)), ECError); }

TEST(CausalChain, DirectEffectIsSingleton) {
  ECTheory th = rescue(false);
  auto chain = causal_chain({t("(alive assailant)"), 2, Polarity::Terminated}, th);
  ASSERT_EQ(chain.size(), 1u);
  EXPECT_EQ(chain[0].occurrence, (Occurrence{t("shoot"), 2}));
}

TEST(CausalChain, GuardRecursion) {
  ECTheory th = rescue(false);
  auto chain = causal_chain({t("(safe ranger1)"), 3, Polarity::Initiated}, th);
  ASSERT_EQ(chain.size(), 2u);
  EXPECT_EQ(chain[0].effect, (Effect{t("(neutralized assailant)"), 2, Polarity::Initiated}));
  EXPECT_EQ(chain[1].occurrence, (Occurrence{t("secure"), 3}));
}

TEST(CausalChain, AuthoredVariantsDiffer) {
  const Effect bad{t("(alive assailant)"), 2, Polarity::Terminated};
  const Effect good{t("(safe ranger1)"), 3, Polarity::Initiated};
  auto independent = causal_chain(good, rescue(false));
  auto means = causal_chain(good, rescue(true));
  auto has_bad = [&](const std::vector<ChainLink>& c) {
    return std::any_of(c.begin(), c.end(), [&](const ChainLink& l) { return l.effect == bad; });
  };
  EXPECT_FALSE(has_bad(independent));
  EXPECT_TRUE(has_bad(means));
}

TEST(CausalChain, NotInTrace) {
  EXPECT_THROW(causal_chain({t("(safe p)"), 0, Polarity::Initiated}, rescue(false)), ECError);
}

TEST(TraceAtoms, Contents) {
  ECTheory th;
  th.horizon = 2;
  th.initial = {t("(alive p)")};
  th.axioms.push_back(axiom("shoot", false, "(alive p)"));
  th.occurrences = {{t("shoot"), 1}};
  std::vector<std::string> printed;
  for (const Formula& a : trace_atoms(project(th))) printed.push_back(print_formula(a));
  std::vector<std::string> want{"(holds (alive p) 0)", "(holds (alive p) 1)", "(happens shoot 1)",
                                "(prior 0 1)",         "(prior 0 2)",         "(prior 1 2)"};
  EXPECT_EQ(printed, want);
}

// Random theories over a small vocabulary: inertia, determinism, chain shape
// and the effects_of invariant.
TEST(Project, RandomTheoryProperties) {
  dcec::testing::Rng rng(7);
  const std::vector<std::string> agents{"p", "assailant", "ranger1", "ranger2"};
  const std::vector<std::string> ctors{"alive", "safe", "armed"};
  auto fluent = [&] { return t("(" + rng.pick(ctors) + " " + rng.pick(agents) + ")"); };
  const std::vector<std::string> events{"shoot", "secure", "wait", "(kill p)", "(arm ranger1)"};
  int checked = 0;
  for (int round = 0; round < 200; ++round) {
    ECTheory th;
    th.horizon = 2 + rng.below(4);
    for (int i = rng.below(4); i > 0; --i) th.initial.push_back(fluent());
    for (int i = 1 + rng.below(5); i > 0; --i) {
      std::vector<FluentLiteral> guard;
      if (rng.chance(50)) guard.push_back({fluent(), rng.chance(60)});
      th.axioms.push_back(axiom(rng.pick(events), rng.chance(50), print_term(fluent()), guard));
    }
    for (int i = rng.below(5); i > 0; --i) {
      Occurrence o{t(rng.pick(events)), rng.below(static_cast<int>(th.horizon) + 1)};
      if (std::find(th.occurrences.begin(), th.occurrences.end(), o) == th.occurrences.end())
        th.occurrences.push_back(o);
    }
    Trace tr;
    try {
      tr = project(th);
    } catch (const ECError&) {
      continue;
    }
    ++checked;
    Trace again = project(th);
    EXPECT_EQ(tr.fluents, again.fluents);

    for (std::int64_t m = 0; m < tr.horizon; ++m) {
      std::vector<Term> expect = tr.fluents[static_cast<std::size_t>(m)];
      for (const Change& c : tr.changes) {
        if (c.effect.moment != m) continue;
        if (c.effect.polarity == Polarity::Initiated)
          expect.push_back(c.effect.fluent);
        else
          std::erase(expect, c.effect.fluent);
      }
      std::sort(expect.begin(), expect.end());
      EXPECT_EQ(expect, tr.fluents[static_cast<std::size_t>(m + 1)]);
    }

    ECTheory quiet = th;
    quiet.occurrences.clear();
    Trace inert = project(quiet);
    for (std::int64_t m = 1; m <= inert.horizon; ++m) EXPECT_EQ(inert.fluents[m], inert.fluents[0]);

    for (const Change& c : tr.changes) {
      auto chain = causal_chain(c.effect, tr);
      ASSERT_FALSE(chain.empty());
      for (std::size_t i = 0; i < chain.size(); ++i) {
        EXPECT_LE(chain[i].effect.moment, c.effect.moment);
        for (std::size_t j = i + 1; j < chain.size(); ++j) EXPECT_FALSE(chain[i].effect == chain[j].effect);
      }
    }

    for (const Occurrence& o : th.occurrences)
      for (const Effect& e : effects_of(o, th)) EXPECT_NE(tr.change(e), nullptr);
  }
  EXPECT_GT(checked, 100);
}
