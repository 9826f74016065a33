#include <gtest/gtest.h>

#include <random>

#include "dcec/core/parse.hpp"
#include "dcec/core/substitute.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace dcec;
using dcec::testing::f;
using dcec::testing::signature_from;

namespace {

const char* kDecls = R"(
  (constants (x y a Agent) (t t1 t2 Moment) (g Fluent) (a1 ActionType))
  (predicates P Q A alpha (R Agent Agent))
  (functions (f Agent -> Agent))
)";

Term agent_var(const char* n) { return Term::variable(n, std::string(sorts::kAgent)); }

}  // namespace

TEST(Parse, NestedModal) {
  Signature sig = signature_from(kDecls);
  Formula k = f("(knows x t (desires y t (holds g t2)))", sig);
  ASSERT_TRUE(k.is_modal(ModalOp::Knows));
  EXPECT_EQ(print_term(k.agent()), "x");
  EXPECT_EQ(print_term(k.moment()), "t");
  const Formula& d = k.body();
  ASSERT_TRUE(d.is_modal(ModalOp::Desires));
  EXPECT_EQ(print_term(d.agent()), "y");
  ASSERT_TRUE(d.body().is(Formula::Kind::Atom));
  EXPECT_EQ(d.body().predicate(), "holds");
}

TEST(Parse, ModalArityError) {
  Signature sig = signature_from(kDecls);
  try {
    f("(knows x)", sig);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("arity mismatch for 'knows' (needs agent, moment, body)"),
              std::string::npos)
        << e.what();
  }
}

TEST(Parse, ActionTerm) {
  Signature sig = signature_from(kDecls);
  Formula h = f("(happens (action y a1) t1)", sig);
  ASSERT_EQ(h.predicate(), "happens");
  const Term& act = h.terms()[0];
  EXPECT_EQ(act.name(), "action");
  EXPECT_EQ(act.sort(), "Action");
  EXPECT_EQ(print_formula(h), "(happens (action y a1) t1)");
}

TEST(Parse, LexicalErrorHasPosition) {
  Signature sig = signature_from(kDecls);
  try {
    f("(and P\n  #Q)", sig);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position().line, 2);
    EXPECT_EQ(e.position().column, 3);
  }
}

TEST(Parse, UnknownSymbol) {
  Signature sig = signature_from(kDecls);
  EXPECT_THROW(f("(nope x)", sig), ParseError);
  EXPECT_THROW(f("(R x zz)", sig), ParseError);
}

TEST(Parse, SortMismatchNamesBothSorts) {
  Signature sig = signature_from(kDecls);
  try {
    f("(R x t)", sig);
    FAIL();
  } catch (const ParseError& e) {
    std::string m = e.what();
    EXPECT_NE(m.find("expected Agent"), std::string::npos) << m;
    EXPECT_NE(m.find("got Moment"), std::string::npos) << m;
  }
}

TEST(Parse, ThreeArgumentObligationGetsDefaultSituation) {
  Signature sig = signature_from(kDecls);
  Formula o = f("(obligated a t (not alpha))", sig);
  ASSERT_TRUE(o.is_modal(ModalOp::Obligated));
  EXPECT_EQ(o.situation().name(), "sigma_default");
  EXPECT_EQ(o, f("(obligated a t sigma_default (not alpha))", sig));
}

TEST(Print, CanonicalForms) {
  Signature sig = signature_from(kDecls);
  Term x = Term::constant("x", "Agent");
  Term t = Term::constant("t", "Moment");
  EXPECT_EQ(print_formula(Formula::knows(x, t, Formula::atom("P", {}))), "(knows x t P)");
  EXPECT_EQ(print_formula(Formula::conjunction({Formula::atom("A", {})})), "A");
  Formula o = Formula::obligation(Term::constant("a", "Agent"), t, Term::constant("sigma_default", "Situation"),
                                  Formula::negation(Formula::atom("alpha", {})));
  EXPECT_EQ(print_formula(o), "(obligated a t sigma_default (not alpha))");
}

TEST(Print, QuantifierAndEquality) {
  Signature sig = signature_from(kDecls);
  const char* text = "(forall z : Agent (exists w : Agent (or (= z w) (R z (f w)))))";
  EXPECT_EQ(print_formula(f(text, sig)), text);
}

TEST(Substitute, Examples) {
  Signature sig = signature_from("(constants (g Fluent)) (predicates (P Agent Agent)) (functions (fn Agent -> Agent))");
  Term t2 = Term::variable("t2", "Moment");
  Formula holds = Formula::atom("holds", {Term::constant("g", "Fluent"), t2});
  EXPECT_EQ(print_formula(substitute(holds, {{"t2", Term::moment(5)}}, sig)), "(holds g 5)");

  Formula ex = Formula::exists(t2, holds);
  EXPECT_EQ(substitute(ex, {{"t2", Term::moment(5)}}, sig), ex);

  Term z = agent_var("z");
  Term y = agent_var("y");
  Formula body = Formula::exists(z, Formula::atom("P", {z, y}));
  Formula out = substitute(body, {{"y", Term::apply("fn", {z}, "Agent")}}, sig);
  EXPECT_EQ(print_formula(out), "(exists z' : Agent (P z' (fn z)))");
}

TEST(Substitute, SortMismatchThrows) {
  Signature sig = signature_from("(constants (g Fluent))");
  Formula holds = Formula::atom("holds", {Term::constant("g", "Fluent"), Term::variable("t", "Moment")});
  EXPECT_THROW(substitute(holds, {{"t", Term::constant("g", "Fluent")}}, sig), SortError);
}

TEST(Substitute, SubsortWidening) {
  Signature sig = signature_from("(constants (a Agent) (k ActionType))");
  Formula h = Formula::atom("happens", {Term::variable("e", "Event"), Term::moment(1)});
  Term act = Term::apply("action", {Term::constant("a", "Agent"), Term::constant("k", "ActionType")}, "Action");
  EXPECT_EQ(print_formula(substitute(h, {{"e", act}}, sig)), "(happens (action a k) 1)");
}

TEST(Signature, BuiltinsPresent) {
  Signature sig;
  for (auto s : {"Agent", "Moment", "ActionType", "Action", "Event", "Fluent", "Boolean"})
    EXPECT_TRUE(sig.has_sort(s)) << s;
  EXPECT_TRUE(sig.is_subsort("Action", "Event"));
  for (auto p : {"holds", "happens", "prior", "initiates", "terminates", "Prevents", "Block"})
    EXPECT_NE(sig.predicate(p), nullptr) << p;
  ASSERT_NE(sig.function("action"), nullptr);
  EXPECT_EQ(sig.function("action")->result_sort, "Action");
}

TEST(Signature, RedeclarationRejected) {
  Signature sig;
  EXPECT_THROW(sig.add_sort("Agent"), SortError);
  sig.add_constant("a", "Agent");
  EXPECT_THROW(sig.add_constant("a", "Moment"), SortError);
}

TEST(Syntax, AlphaEquivalence) {
  Signature sig = signature_from(kDecls);
  EXPECT_TRUE(alpha_equivalent(f("(forall u : Agent (R u x))", sig), f("(forall v : Agent (R v x))", sig)));
  EXPECT_FALSE(alpha_equivalent(f("(forall u : Agent (R u x))", sig), f("(forall v : Agent (R x v))", sig)));
}

TEST(Syntax, ClosedAndFreeVariables) {
  Signature sig = signature_from(kDecls);
  Term u = agent_var("u");
  Formula open = parse_formula("(R u x)", sig, {u});
  EXPECT_FALSE(is_closed(open));
  EXPECT_TRUE(is_closed(Formula::forall(u, open)));
}

TEST(RoundTrip, GeneratedFormulas) {
  dcec::testing::FormulaGen gen(20240611);
  const Signature& sig = gen.signature();
  for (int i = 0; i < 300; ++i) {
    Formula g = gen.formula(4);
    std::string text = print_formula(g);
    Formula back = parse_formula(text, sig);
    ASSERT_EQ(back, g) << text;
    ASSERT_EQ(print_formula(back), text);
  }
}

TEST(RoundTrip, SubstitutionPreservesSorts) {
  dcec::testing::FormulaGen gen(77);
  const Signature& sig = gen.signature();
  for (int i = 0; i < 100; ++i) {
    Formula g = gen.open_formula(3);
    Binding b;
    for (const Term& v : free_variables(g)) b.emplace(v.name(), gen.ground_term(v.sort()));
    Formula s = substitute(g, b, sig);
    EXPECT_TRUE(is_closed(s)) << print_formula(s);
    EXPECT_NO_THROW(sig.check(s));
  }
}
