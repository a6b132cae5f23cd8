#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "simplylog/error.hpp"
#include "simplylog/induce.hpp"
#include "support.hpp"

using namespace slog;
using namespace slog::testing;

namespace {

Clause cl(std::string_view text) { return Clause::from_term(parse_term(text)); }

// Clauses read in one term share variables by name.
std::pair<Clause, Clause> pair_of(std::string_view a, std::string_view b) {
  Term t = parse_term("f((" + std::string(a) + "), (" + std::string(b) + "))");
  return {Clause::from_term(t.arg(0)), Clause::from_term(t.arg(1))};
}

const char* kBirds = R"(
bird(sparrow).
bird(eagle).
mammal(dog).
:- pos(flies(sparrow)).
:- pos(flies(eagle)).
:- neg(flies(dog)).
)";

// Ground atoms over p/1, q/1 and r/2 with domain {a, b}.
std::vector<Term> herbrand_atoms() {
  std::vector<Term> out;
  Term a = Term::atom("a"), b = Term::atom("b");
  for (const char* n : {"p", "q"})
    for (const Term& x : {a, b}) out.push_back(Term::compound(n, {x}));
  for (const char* n : {"p", "r"})
    for (const Term& x : {a, b})
      for (const Term& y : {a, b}) out.push_back(Term::compound(n, {x, y}));
  return out;
}

bool clause_true(const Clause& c, const std::set<Term, TermLess>& m) {
  std::vector<Term> vars = variables_of(c);
  std::vector<Term> dom{Term::atom("a"), Term::atom("b")};
  std::vector<std::size_t> pick(vars.size(), 0);
  while (true) {
    Substitution s;
    for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], dom[pick[i]]);
    bool body = std::all_of(c.body.begin(), c.body.end(), [&](const Term& l) { return m.count(s.apply(l)) != 0; });
    bool head = std::any_of(c.head.begin(), c.head.end(), [&](const Term& l) { return m.count(s.apply(l)) != 0; });
    if (body && !head) return false;
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == dom.size()) pick[i++] = 0;
    if (i == pick.size()) return true;
  }
}

}  // namespace

TEST(ThetaSubsumes, Examples) {
  Clause px = cl("p(X)");
  auto s = theta_subsumes(px, cl("p(a)"));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->size(), 1u);
  EXPECT_EQ(s->apply(px.head.front()), t("p(a)"));

  auto c = cl("p(X,Y) :- q(X)");
  auto d = cl("p(a,b) :- q(a), r(b)");
  s = theta_subsumes(c, d);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->apply(c.head.front()), t("p(a,b)"));
  EXPECT_TRUE(oracle::brute_theta_subsumes(c, d));

  EXPECT_FALSE(theta_subsumes(cl("p(X,X)"), cl("p(a,b)")));
  EXPECT_FALSE(oracle::brute_theta_subsumes(cl("p(X,X)"), cl("p(a,b)")));
}

TEST(ThetaSubsumes, AgreesWithBruteForce) {
  oracle::ClauseGen gen(11);
  int yes = 0;
  for (int i = 0; i < 600; ++i) {
    Clause c = gen.clause(3);
    Clause d = gen.pick(0, 1) ? gen.specialize(c, 2) : gen.clause(4);
    bool fast = theta_subsumes(c, d).has_value();
    EXPECT_EQ(fast, oracle::brute_theta_subsumes(c, d)) << to_string(c) << " vs " << to_string(d);
    if (fast) {
      Substitution s = *theta_subsumes(c, d);
      Clause inst = apply(s, c);
      for (const Term& l : inst.body) EXPECT_NE(std::find(d.body.begin(), d.body.end(), l), d.body.end());
      EXPECT_EQ(inst.head, d.head);
    }
    yes += fast;
  }
  EXPECT_GT(yes, 100);
}

TEST(ThetaSubsumes, ReflexiveAndTransitive) {
  oracle::ClauseGen gen(3);
  for (int i = 0; i < 300; ++i) {
    Clause a = gen.clause(4);
    EXPECT_TRUE(theta_subsumes(a, a));
    Clause b = gen.specialize(a, 1);
    Clause c = gen.specialize(b, 1);
    ASSERT_TRUE(theta_subsumes(a, b));
    ASSERT_TRUE(theta_subsumes(b, c));
    EXPECT_TRUE(theta_subsumes(a, c)) << to_string(a) << " / " << to_string(c);
  }
}

TEST(ThetaSubsumes, ImpliesEntailmentOnSmallModels) {
  oracle::ClauseGen gen(8);
  std::vector<Term> atoms = herbrand_atoms();
  int checked = 0;
  for (int i = 0; i < 150 && checked < 40; ++i) {
    Clause c = gen.clause(2);
    Clause d = gen.pick(0, 2) ? gen.specialize(c, 1) : gen.clause(2);
    if (!theta_subsumes(c, d)) continue;
    ++checked;
    for (std::uint32_t mask = 0; mask < (1u << atoms.size()); mask += 7) {
      std::set<Term, TermLess> m;
      for (std::size_t k = 0; k < atoms.size(); ++k)
        if (mask >> k & 1) m.insert(atoms[k]);
      if (clause_true(c, m)) EXPECT_TRUE(clause_true(d, m)) << to_string(c) << " / " << to_string(d);
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(Lgg, Examples) {
  EXPECT_EQ(clause_text(lgg_clauses(cl("p(a) :- q(a)"), cl("p(b) :- q(b)"))), "p(A) :- q(A).");
  Clause c = cl("p(X, f(X)) :- q(X), r(X, a)");
  EXPECT_TRUE(clause_variant(lgg_clauses(c, c), c));
  EXPECT_EQ(clause_text(lgg_clauses(cl("p(a) :- q(a), r(a, a)"), cl("p(b) :- q(b)"))), "p(A) :- q(A).");
  EXPECT_THROW(lgg_clauses(cl("p(a)"), cl("q(a)")), ProgramError);
}

TEST(Lgg, SharedDisagreementMap) {
  // One variable per disagreement pair across the whole clause.
  EXPECT_EQ(clause_text(lgg_clauses(cl("p(a, b) :- r(a, b)"), cl("p(b, a) :- r(b, a)"))), "p(A,B) :- r(A,B).");
}

TEST(Lgg, GeneralizesBothInputs) {
  oracle::ClauseGen gen(21);
  for (int i = 0; i < 300; ++i) {
    Clause c1 = gen.clause(3);
    Clause c2 = gen.clause(3);
    if (PredKey::of(c1.head.front()) != PredKey::of(c2.head.front())) continue;
    Clause g = lgg_clauses(c1, c2);
    EXPECT_TRUE(theta_subsumes(g, c1)) << to_string(g) << " / " << to_string(c1);
    EXPECT_TRUE(theta_subsumes(g, c2)) << to_string(g) << " / " << to_string(c2);
  }
}

TEST(Lgg, LeastAmongEnumeratedGeneralizations) {
  // Candidates g: head p(T), body of up to two literals q(T) or r(T),
  // T over {X, Y, a, b, f(X), f(Y), f(a), f(b)}.
  Term x = Term::var("X"), y = Term::var("Y"), a = Term::atom("a"), b = Term::atom("b");
  auto f = [](const Term& u) { return Term::compound("f", {u}); };
  std::vector<Term> ts{x, y, a, b, f(x), f(y), f(a), f(b)};
  std::vector<Term> lits;
  for (const char* n : {"q", "r"})
    for (const Term& u : ts) lits.push_back(Term::compound(n, {u}));
  std::vector<Clause> cands;
  for (const Term& h : ts) {
    Term head = Term::compound("p", {h});
    cands.push_back(Clause::fact(head));
    for (std::size_t i = 0; i < lits.size(); ++i) {
      cands.push_back(Clause::rule(head, {lits[i]}));
      for (std::size_t j = i + 1; j < lits.size(); ++j) cands.push_back(Clause::rule(head, {lits[i], lits[j]}));
    }
  }
  std::mt19937 rng(4);
  auto ground = [&](int depth) {
    std::function<Term(int)> go = [&](int d) {
      int k = std::uniform_int_distribution<int>(0, d > 0 ? 2 : 1)(rng);
      return k == 0 ? Term::atom("a") : k == 1 ? Term::atom("b") : Term::compound("f", {go(d - 1)});
    };
    return go(depth);
  };
  auto ground_clause = [&] {
    Clause c = Clause::fact(Term::compound("p", {ground(2)}));
    int n = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int i = 0; i < n; ++i)
      c.body.push_back(Term::compound(std::uniform_int_distribution<int>(0, 1)(rng) ? "q" : "r", {ground(2)}));
    return c;
  };
  for (int round = 0; round < 25; ++round) {
    Clause c1 = ground_clause(), c2 = ground_clause();
    Clause g = lgg_clauses(c1, c2);
    for (const Clause& cand : cands)
      if (theta_subsumes(cand, c1) && theta_subsumes(cand, c2))
        EXPECT_TRUE(theta_subsumes(cand, g)) << to_string(cand) << " vs lgg " << to_string(g);
  }
}

TEST(Generality, Examples) {
  EXPECT_EQ(generality_check(cl("p(X)"), cl("p(a)")), Generality::MoreGeneral);
  EXPECT_EQ(generality_check(cl("p(a)"), cl("p(X)")), Generality::MoreSpecific);
  EXPECT_EQ(generality_check(cl("p(X, Y)"), cl("p(U, V)")), Generality::Equivalent);
  EXPECT_EQ(generality_check(cl("p(a)"), cl("q(a)")), Generality::Incomparable);
}

TEST(Generality, SelfRecursiveClauseDivergesFromImplication) {
  // c implies d, but c does not θ-subsume d.
  Clause c = cl("p(f(X)) :- p(X)");
  Clause d = cl("p(f(f(Y))) :- p(Y)");
  EXPECT_FALSE(theta_subsumes(c, d));
  EXPECT_EQ(generality_check(c, d), Generality::Incomparable);
}

TEST(Induce, Birds) {
  ILPTask task = load_ilp_task(kBirds);
  auto h = induce(task);
  ASSERT_TRUE(h);
  ASSERT_EQ(h->size(), 1u);
  EXPECT_EQ(clause_text(h->front()), "flies(A) :- bird(A).");

  // Oracle: every clause flies(X) :- B with at most one background literal
  // B over X; exactly one covers the positives and no negative.
  std::vector<Clause> consistent;
  Term x = Term::var("X");
  std::vector<std::vector<Term>> bodies{{}, {Term::compound("bird", {x})}, {Term::compound("mammal", {x})}};
  for (const auto& body : bodies) {
    Clause c = Clause::rule(Term::compound("flies", {x}), body);
    bool ok = std::all_of(task.positives.begin(), task.positives.end(),
                          [&](const Term& e) { return covers(task, {c}, e); }) &&
              std::none_of(task.negatives.begin(), task.negatives.end(),
                           [&](const Term& e) { return covers(task, {c}, e); });
    if (ok) consistent.push_back(c);
  }
  ASSERT_EQ(consistent.size(), 1u);
  EXPECT_TRUE(clause_variant(consistent.front(), h->front()));
}

TEST(Induce, SinglePositiveStaysSpecific) {
  auto h = induce(load_ilp_task(":- pos(p(a)).\n"));
  ASSERT_TRUE(h);
  ASSERT_EQ(h->size(), 1u);
  EXPECT_EQ(clause_text(h->front()), "p(a).");
}

TEST(Induce, RejectsBadTasks) {
  EXPECT_THROW(load_ilp_task(":- pos(p(a)).\n:- neg(p(a)).\n"), ProgramError);
  EXPECT_THROW(load_ilp_task(":- pos(p(a)).\np(b).\n"), ProgramError);
  EXPECT_THROW(load_ilp_task(":- pos(p(X)).\n"), ProgramError);
}

TEST(Induce, NoConsistentHypothesisWithinBounds) {
  ILPTask task = load_ilp_task(R"(
big(a). big(b). big(c).
:- pos(good(a)).
:- pos(good(b)).
:- neg(good(c)).
)");
  task.max_clauses = 1;
  EXPECT_FALSE(induce(task));
  task.max_clauses = 2;
  auto h = induce(task);
  ASSERT_TRUE(h);
  EXPECT_EQ(h->size(), 2u);
}

TEST(Induce, OutputIsCorrectOnRandomTasks) {
  std::mt19937 rng(9);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const char* consts[] = {"a", "b", "c", "d", "e", "f"};
  int found = 0;
  for (int round = 0; round < 60; ++round) {
    std::string text;
    for (const char* k : consts) {
      if (pick(0, 1)) text += std::string("red(") + k + ").\n";
      if (pick(0, 1)) text += std::string("big(") + k + ").\n";
    }
    std::set<std::string> used;
    for (int i = 0; i < 4; ++i) {
      std::string k = consts[pick(0, 5)];
      if (!used.insert(k).second) continue;
      text += std::string(i < 2 ? ":- pos(" : ":- neg(") + "t(" + k + ")).\n";
    }
    if (text.find("pos(") == std::string::npos) continue;
    ILPTask task = load_ilp_task(text);
    auto h = induce(task);
    if (!h) continue;
    ++found;
    for (const Term& e : task.positives) EXPECT_TRUE(covers(task, *h, e)) << text;
    for (const Term& e : task.negatives) EXPECT_FALSE(covers(task, *h, e)) << text;
  }
  EXPECT_GT(found, 20);
}
