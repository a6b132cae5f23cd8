#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "simplylog/clausal.hpp"
#include "support.hpp"

using namespace slog;
using slog::testing::t;

namespace {

std::vector<Clause> cs(std::string_view text) { return parse_clauses(text); }

std::vector<std::string> strs(const TermSet& s) {
  std::vector<std::string> out;
  for (const Term& x : s) out.push_back(to_string(x));
  return out;
}

TermSet set_of(std::initializer_list<const char*> items) {
  TermSet s;
  for (const char* i : items) s.insert(t(i));
  return s;
}

}  // namespace

TEST(Herbrand, Universe) {
  EXPECT_EQ(herbrand_universe(cs("p(a). q(X) :- p(f(X))."), 2), set_of({"a", "f(a)", "f(f(a))"}));
  EXPECT_EQ(herbrand_universe(cs("p(a). p(b)."), 5), set_of({"a", "b"}));
  EXPECT_EQ(herbrand_universe(cs("p(f(X)) :- p(X)."), 1), set_of({"c0", "f(c0)"}));
  // g/2 over {a} up to depth 2: a, g(a,a), and the three new pairs with g(a,a).
  EXPECT_EQ(herbrand_universe(cs("p(g(a,a))."), 2).size(), 2u + 3u);
}

TEST(Herbrand, Base) {
  EXPECT_EQ(herbrand_base(cs("p(a). p(b)."), 0), set_of({"p(a)", "p(b)"}));
  EXPECT_EQ(herbrand_base(cs("p :- q."), 0), set_of({"p", "q"}));
  EXPECT_EQ(herbrand_base(cs("q(a,a)."), 0), set_of({"q(a,a)"}));
}

TEST(Herbrand, IsModel) {
  EXPECT_TRUE(is_model({}, cs("p :- q."), 0));
  EXPECT_FALSE(is_model(set_of({"q"}), cs("p :- q."), 0));
  EXPECT_TRUE(is_model(set_of({"p", "q"}), cs("p :- q. q."), 0));
  EXPECT_FALSE(is_model(set_of({"p"}), cs(":- p."), 0));
  EXPECT_TRUE(is_model(set_of({"q"}), cs("p ; q."), 0));
}

TEST(LeastModel, Examples) {
  EXPECT_EQ(strs(least_herbrand_model(Program(cs("q. p :- q.")), 0).true_atoms),
            (std::vector<std::string>{"p", "q"}));
  EXPECT_TRUE(least_herbrand_model(Program{}, 0).true_atoms.empty());
  auto m = least_herbrand_model(Program(cs("p(a). p(f(X)) :- p(X).")), 2);
  EXPECT_EQ(m.true_atoms, set_of({"p(a)", "p(f(a))", "p(f(f(a)))"}));
  EXPECT_TRUE(m.truncated);
  EXPECT_FALSE(m.partial);
  auto starved = least_herbrand_model(Program(cs("p(a). p(f(X)) :- p(X).")), 5, 2);
  EXPECT_TRUE(starved.partial);
  EXPECT_THROW(least_herbrand_model(Program(cs("p ; q.")), 0), ProgramError);
  auto open = least_herbrand_model(Program(cs("e(a). e(b). r(X, Y) :- e(X).")), 0);
  EXPECT_EQ(open.true_atoms.size(), 6u);
}

TEST(LeastModel, EqualsIntersectionOfAllModels) {
  std::mt19937 rng(21);
  for (int i = 0; i < 150; ++i) {
    int atoms = 1 + static_cast<int>(rng() % 8);
    auto prog = oracle::random_definite(rng, atoms, 1 + static_cast<int>(rng() % 10));
    std::uint32_t meet = oracle::model_intersection(prog, atoms);
    auto m = least_herbrand_model(Program(oracle::to_clauses(prog)), 0);
    for (int a = 0; a < atoms; ++a)
      EXPECT_EQ(m.holds(Term::atom(oracle::atom_name(a))), bool(meet >> a & 1));
    EXPECT_TRUE(is_model(m.true_atoms, oracle::to_clauses(prog), 0));
  }
}

TEST(LeastModel, Monotone) {
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto prog = oracle::random_definite(rng, 6, 6);
    auto base = least_herbrand_model(Program(oracle::to_clauses(prog)), 0);
    prog.push_back(oracle::random_definite(rng, 6, 1).front());
    auto more = least_herbrand_model(Program(oracle::to_clauses(prog)), 0);
    for (const Term& a : base.true_atoms) EXPECT_TRUE(more.holds(a));
  }
}

TEST(Resolve, Propositional) {
  auto r = propositional_resolve(Clause::fact(t("p")), Clause::denial({t("p")}));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0].is_empty());
  auto q = propositional_resolve(Clause::rule(t("q"), {t("p")}), Clause::fact(t("p")));
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q[0], Clause::fact(t("q")));
  EXPECT_TRUE(propositional_resolve(Clause::fact(t("p")), Clause::fact(t("q"))).empty());
}

TEST(Refute, Examples) {
  auto one = resolution_refute(cs("p. :- p."));
  ASSERT_EQ(one.status, RefuteStatus::Refuted);
  EXPECT_EQ(one.refutation->steps.size(), 1u);
  EXPECT_TRUE(replay(*one.refutation));
  EXPECT_EQ(refutation_to_text(*one.refutation), "step 1: c1 + c2 on p gives []\n");

  auto two = resolution_refute(cs("q :- p. p. :- q."));
  ASSERT_EQ(two.status, RefuteStatus::Refuted);
  EXPECT_EQ(two.refutation->steps.size(), 2u);
  EXPECT_TRUE(replay(*two.refutation));

  auto sat = resolution_refute(cs("p ; q."));
  EXPECT_EQ(sat.status, RefuteStatus::Saturated);
  EXPECT_FALSE(sat.refutation);
}

TEST(Refute, FirstOrderNeedsFactoring) {
  auto r = resolution_refute(cs("p(X) ; p(Y). :- p(U), p(V)."));
  ASSERT_EQ(r.status, RefuteStatus::Refuted);
  EXPECT_TRUE(replay(*r.refutation));

  auto chain = resolution_refute(cs("nat(z). nat(s(X)) :- nat(X). :- nat(s(s(z)))."));
  ASSERT_EQ(chain.status, RefuteStatus::Refuted);
  EXPECT_TRUE(replay(*chain.refutation));

  auto budget = resolution_refute(cs("nat(z). nat(s(X)) :- nat(X). :- nat(z), q."), 50);
  EXPECT_EQ(budget.status, RefuteStatus::Budget);
}

TEST(Refute, ReplayRejectsTampering) {
  auto r = resolution_refute(cs("q :- p. p. :- q."));
  ASSERT_TRUE(r.refutation);
  Refutation bad = *r.refutation;
  bad.steps[0].resolvent = Clause::fact(t("zzz"));
  EXPECT_FALSE(replay(bad));
  Refutation dangling = *r.refutation;
  dangling.steps[0].left = ClauseRef{false, 5};
  EXPECT_FALSE(replay(dangling));
}

TEST(Refute, AgreesWithTruthTable) {
  std::mt19937 rng(99);
  int unsat = 0;
  for (int i = 0; i < 150; ++i) {
    int atoms = 1 + static_cast<int>(rng() % 7);
    auto set = oracle::random_general(rng, atoms, 1 + static_cast<int>(rng() % (3 * atoms)));
    bool sat = oracle::satisfiable(set, atoms);
    auto r = resolution_refute(oracle::to_clauses(set));
    ASSERT_NE(r.status, RefuteStatus::Budget);
    EXPECT_EQ(r.status == RefuteStatus::Refuted, !sat);
    if (r.refutation) {
      ++unsat;
      EXPECT_TRUE(replay(*r.refutation));
    }
  }
  EXPECT_GT(unsat, 10);
}

TEST(Refute, JsonExport) {
  auto r = resolution_refute(cs("p. :- p."));
  std::string j = refutation_to_json(*r.refutation);
  EXPECT_NE(j.find("\"resolvent\": \"[]\""), std::string::npos);
  EXPECT_NE(j.find("\"left\": \"c1\""), std::string::npos);
}

TEST(FullClausal, Queries) {
  auto a = full_clausal_query(cs("p(a)."), {t("p(X)")});
  ASSERT_TRUE(a.answer);
  ASSERT_EQ(a.answer->bindings.size(), 1u);
  EXPECT_EQ(a.answer->bindings.begin()->second.value, t("a"));
  EXPECT_TRUE(replay(a.answer->refutation));

  // Case split over a disjunctive head.
  auto split = full_clausal_query(cs("p(a) ; p(b). q :- p(a). q :- p(b)."), {t("q")});
  ASSERT_EQ(split.status, RefuteStatus::Refuted);
  EXPECT_TRUE(replay(split.answer->refutation));

  auto none = full_clausal_query({}, {t("p")});
  EXPECT_EQ(none.status, RefuteStatus::Saturated);
  EXPECT_FALSE(none.answer);
}

TEST(Soundness, Audit) {
  Program q(cs("q."));
  EXPECT_TRUE(soundness_audit(q, {{{t("q")}, {}}}).ok());
  EXPECT_EQ(soundness_audit(q, {{{t("p")}, {}}}).violations.size(), 1u);
  Program pa(cs("p(a)."));
  Term x = Term::var("X");
  Substitution s;
  s.bind(x, t("a"));
  EXPECT_TRUE(soundness_audit(pa, {{{Term::compound("p", {x})}, s}}).ok());
}
