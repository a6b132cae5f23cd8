#include <gtest/gtest.h>

#include "simplylog/reader.hpp"
#include "simplylog/term.hpp"
#include "support.hpp"

using namespace slog;
using slog::testing::t;

namespace {

Term vx = Term::var("X");
Term vy = Term::var("Y");
Term vz = Term::var("Z");

Term f(Term a) { return Term::compound("f", {std::move(a)}); }
Term g(Term a, Term b) { return Term::compound("g", {std::move(a), std::move(b)}); }
Term a() { return Term::atom("a"); }
Term b() { return Term::atom("b"); }

/// Oracle for "σ factors through θ": some η with θη = σ on the given vars.
bool factors_through(const Substitution& sigma, const Substitution& theta, const std::vector<Term>& vars) {
  Substitution eta;
  for (const Term& v : vars) {
    auto m = match(theta.apply(v), sigma.apply(v), eta);
    if (!m) return false;
    eta = *m;
  }
  return true;
}

}  // namespace

TEST(Substitution, ApplyIsSimultaneous) {
  Substitution s;
  s.bind(vx, g(vy, vy));
  s.bind(vy, b());
  EXPECT_EQ(s.apply(vx), g(vy, vy));
  EXPECT_EQ(s.apply(g(vx, vy)), g(g(vy, vy), b()));
  EXPECT_EQ(Substitution{}.apply(f(vx)), f(vx));
}

TEST(Substitution, SelfBindingIsDropped) {
  Substitution s;
  s.bind(vx, vx);
  EXPECT_TRUE(s.empty());
}

TEST(Substitution, ComposeMatchesSequentialApplication) {
  Substitution s1, s2;
  s1.bind(vx, vy);
  s2.bind(vy, a());
  Substitution c = compose(s1, s2);
  EXPECT_EQ(c.apply(vx), a());
  EXPECT_EQ(c.apply(vy), a());
  EXPECT_EQ(compose(s1, {}), s1);
  EXPECT_EQ(compose({}, s1), s1);
}

TEST(Unify, Examples) {
  auto th = unify(vx, a());
  ASSERT_TRUE(th);
  EXPECT_EQ(th->apply(vx), a());

  auto th2 = unify(Term::compound("f", {vx, b()}), Term::compound("f", {a(), vy}));
  ASSERT_TRUE(th2);
  EXPECT_EQ(th2->apply(vx), a());
  EXPECT_EQ(th2->apply(vy), b());
  EXPECT_EQ(th2->size(), 2u);

  EXPECT_FALSE(unify(vx, f(vx)));
  EXPECT_TRUE(unify(vx, f(vx), false));
  EXPECT_FALSE(unify(f(a()), f(b())));
  EXPECT_FALSE(unify(f(a()), g(a(), a())));
}

TEST(Unify, ChainedBindingsResolveFully) {
  auto th = unify(g(vx, vy), g(vy, f(vz)));
  ASSERT_TRUE(th);
  EXPECT_EQ(th->apply(vx), f(vz));
  EXPECT_EQ(th->apply(vy), f(vz));
  EXPECT_EQ(th->apply(th->apply(g(vx, vy))), th->apply(g(vx, vy)));
}

TEST(Unify, RandomPairsAreIdempotentSymmetricAndMostGeneral) {
  slog::testing::TermGen gen(7, {vx, vy, vz});
  std::vector<Term> witnesses = slog::testing::ground_terms(1);
  int unified = 0;
  for (int i = 0; i < 300; ++i) {
    Term l = gen.term(3), r = gen.term(3);
    auto th = unify(l, r);
    auto back = unify(r, l);
    ASSERT_EQ(th.has_value(), back.has_value()) << to_string(l) << " / " << to_string(r);
    std::vector<Term> vars = variables_of(Term::compound("p", {l, r}));
    if (th) {
      ++unified;
      EXPECT_EQ(th->apply(l), th->apply(r));
      for (const Term& v : vars) EXPECT_EQ(th->apply(th->apply(v)), th->apply(v));
      EXPECT_TRUE(is_variant(th->apply(l), back->apply(l)));
    }
    // Brute-force ground witnesses over a small universe.
    std::vector<std::size_t> idx(vars.size(), 0);
    for (;;) {
      Substitution sigma;
      for (std::size_t k = 0; k < vars.size(); ++k) sigma.bind(vars[k], witnesses[idx[k]]);
      if (sigma.apply(l) == sigma.apply(r)) {
        ASSERT_TRUE(th) << to_string(l) << " / " << to_string(r);
        EXPECT_TRUE(factors_through(sigma, *th, vars));
      }
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == witnesses.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  EXPECT_GT(unified, 20);
}

TEST(Rename, ProducesFreshVariant) {
  VarSupply supply;
  Substitution r1, r2;
  Term p = Term::compound("p", {vx, f(vx)});
  Term c1 = rename(p, supply, r1);
  Term c2 = rename(p, supply, r2);
  EXPECT_TRUE(is_variant(p, c1));
  EXPECT_TRUE(is_variant(c1, c2));
  EXPECT_NE(c1.arg(0), c2.arg(0));
  EXPECT_EQ(c1.arg(0), c1.arg(1).arg(0));
  EXPECT_EQ(c1.arg(0).name(), "_G1");
  Substitution r3;
  EXPECT_EQ(rename(f(a()), supply, r3), f(a()));
}

TEST(AntiUnify, Examples) {
  VarSupply supply;
  auto r = anti_unify(t("f(a,b)"), t("f(a,c)"), supply);
  EXPECT_TRUE(r.generalization.arg(1).is_var());
  EXPECT_EQ(r.generalization.arg(0), a());
  EXPECT_EQ(r.left.apply(r.generalization), t("f(a,b)"));
  EXPECT_EQ(r.right.apply(r.generalization), t("f(a,c)"));

  auto same = anti_unify(t("g(a,f(b))"), t("g(a,f(b))"), supply);
  EXPECT_EQ(same.generalization, t("g(a,f(b))"));
  EXPECT_TRUE(same.left.empty());

  auto shared = anti_unify(t("f(a,a)"), t("f(b,b)"), supply);
  ASSERT_TRUE(shared.generalization.arg(0).is_var());
  EXPECT_EQ(shared.generalization.arg(0), shared.generalization.arg(1));
}

TEST(AntiUnify, RandomPairsAreCommonGeneralizations) {
  slog::testing::TermGen gen(11, {vx, vy});
  VarSupply supply;
  for (int i = 0; i < 300; ++i) {
    Term l = gen.term(3), r = gen.term(3);
    auto au = anti_unify(l, r, supply);
    EXPECT_EQ(au.left.apply(au.generalization), l);
    EXPECT_EQ(au.right.apply(au.generalization), r);
  }
}

TEST(Variables, FirstOccurrenceOrder) {
  auto vs = variables_of(Term::compound("f", {vx, g(vy, vx)}));
  ASSERT_EQ(vs.size(), 2u);
  EXPECT_EQ(vs[0], vx);
  EXPECT_EQ(vs[1], vy);
  EXPECT_TRUE(variables_of(a()).empty());
  EXPECT_EQ(variables_of(vx).size(), 1u);
}

TEST(StandardOrder, VarIntAtomCompound) {
  EXPECT_LT(compare(vx, Term::integer(1)), 0);
  EXPECT_LT(compare(Term::integer(9), a()), 0);
  EXPECT_LT(compare(a(), b()), 0);
  EXPECT_LT(compare(b(), f(a())), 0);
  EXPECT_LT(compare(t("z(a)"), t("a(a,a)")), 0);
  EXPECT_LT(compare(t("f(a)"), t("g(a)")), 0);
  EXPECT_LT(compare(t("f(a,b)"), t("f(b,a)")), 0);
}
