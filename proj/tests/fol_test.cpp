#include <gtest/gtest.h>

#include "oracles.hpp"
#include "simplylog/fol.hpp"
#include "support.hpp"

using namespace slog;
using slog::testing::program_of;
using slog::testing::t;

namespace {

std::vector<std::string> clause_strings(const std::vector<Clause>& cs) {
  std::vector<std::string> out;
  for (const Clause& c : cs) out.push_back(to_string(c));
  return out;
}

std::vector<std::string> formula_strings(const std::vector<Formula>& fs) {
  std::vector<std::string> out;
  for (const Formula& f : fs) out.push_back(f.str());
  return out;
}

}  // namespace

TEST(Clausify, Examples) {
  EXPECT_EQ(clause_strings(to_clausal_form(parse_formula("forall(X, implies(p(X), q(X)))"))),
            std::vector<std::string>{"q(X) :- p(X)."});
  EXPECT_EQ(clause_strings(to_clausal_form(parse_formula("p(a)"))), std::vector<std::string>{"p(a)."});
  EXPECT_EQ(clause_strings(to_clausal_form(parse_formula("exists(X, p(X))"))), std::vector<std::string>{"p(sk1)."});
  EXPECT_EQ(clause_strings(to_clausal_form(parse_formula("forall(X, exists(Y, r(X, Y)))"))),
            std::vector<std::string>{"r(X,sk1(X))."});
  EXPECT_EQ(clause_strings(to_clausal_form(parse_formula("and(or(p, q), not(r))"))),
            (std::vector<std::string>{"p ; q.", ":- r."}));
  // Skolem names skip symbols already in the formula.
  EXPECT_EQ(clause_strings(to_clausal_form(parse_formula("and(sk1, exists(X, p(X)))"))),
            (std::vector<std::string>{"sk1.", "p(sk2)."}));
}

TEST(Clausify, StagesProduceNnf) {
  oracle::FormulaGen gen(4);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.formula(3);
    Formula n = negation_normal_form(f);
    EXPECT_TRUE(is_nnf(n)) << f.str();
    EXPECT_FALSE(is_nnf(Formula::implies(n, n)));
  }
}

TEST(Clausify, Equisatisfiable) {
  oracle::FormulaGen gen(17);
  int unsat = 0;
  for (int i = 0; i < 40; ++i) {
    Formula f = gen.formula(3);
    std::vector<Clause> cs = to_clausal_form(f);
    for (int d = 1; d <= 2; ++d) {
      bool a = oracle::formula_satisfiable(f, d), b = oracle::clauses_satisfiable(cs, d);
      EXPECT_EQ(a, b) << f.str() << " at size " << d;
      unsat += !a;
    }
  }
  EXPECT_GT(unsat, 0);
}

TEST(Completion, Examples) {
  Completion c = predicate_completion(program_of("bird(tweety).\nflies(X) :- bird(X)."));
  EXPECT_EQ(formula_strings(c.definitions),
            (std::vector<std::string>{"forall(X1,iff(bird(X1),X1=tweety))", "forall(X1,iff(flies(X1),bird(X1)))"}));
  EXPECT_TRUE(c.equality_theory.empty());
  EXPECT_EQ(formula_strings(predicate_completion(program_of("p(a). p(f(b)).")).equality_theory),
            (std::vector<std::string>{"not(a=b)", "forall(Y1,not(a=f(Y1)))", "forall(Y1,not(b=f(Y1)))",
                                      "forall(X1,forall(Y1,implies(f(X1)=f(Y1),X1=Y1)))",
                                      "forall(X1,not(X1=f(X1)))"}));

  Completion ab = predicate_completion(program_of(":- dynamic(ab/1)."));
  EXPECT_EQ(formula_strings(ab.definitions), std::vector<std::string>{"forall(X1,not(ab(X1)))"});

  Completion loop = predicate_completion(program_of("p :- p."));
  EXPECT_EQ(formula_strings(loop.definitions), std::vector<std::string>{"iff(p,p)"});

  Completion mixed = predicate_completion(program_of("e(a, b).\nr(X, X) :- \\+ e(X, X).\nr(X, Y) :- e(X, Z), e(Z, Y)."));
  EXPECT_EQ(mixed.definitions[1].str(),
            "forall(X1,forall(X2,iff(r(X1,X2),or(exists(X,and(and(X1=X,X2=X),not(e(X,X)))),"
            "exists(Z,and(e(X1,Z),e(Z,X2)))))))");
  EXPECT_THROW(predicate_completion(Program(parse_clauses("p ; q."))), ProgramError);
}

TEST(Completion, DefiniteProgramsAgreeWithLeastModel) {
  std::mt19937 rng(8);
  for (int i = 0; i < 40; ++i) {
    int atoms = 1 + static_cast<int>(rng() % 6);
    auto prog = oracle::random_definite(rng, atoms, 1 + static_cast<int>(rng() % 6));
    Program p(oracle::to_clauses(prog));
    for (int a = 0; a < atoms; ++a) p.declare({oracle::atom_name(a), 0});
    Completion comp = predicate_completion(p);
    std::vector<Term> base;
    for (int a = 0; a < atoms; ++a) base.push_back(Term::atom(oracle::atom_name(a)));
    std::uint32_t meet = (1u << atoms) - 1;
    bool any = false;
    for (std::uint32_t mask = 0; mask < (1u << atoms); ++mask) {
      TermSet truth;
      for (int a = 0; a < atoms; ++a)
        if (mask >> a & 1) truth.insert(base[static_cast<std::size_t>(a)]);
      bool model = true;
      for (const Formula& f : comp.definitions) {
        Substitution env;
        model = model && oracle::herbrand_holds(f, truth, {Term::atom("c0")}, env);
      }
      if (model) {
        meet &= mask;
        any = true;
      }
    }
    ASSERT_TRUE(any);
    auto m = least_herbrand_model(p, 0);
    for (int a = 0; a < atoms; ++a) EXPECT_EQ(m.holds(base[static_cast<std::size_t>(a)]), bool(meet >> a & 1));
  }
}

TEST(Cwa, Examples) {
  EXPECT_EQ(cwa_consequences(program_of("q.\n:- dynamic(p/0).")), (TermSet{t("p")}));
  EXPECT_EQ(cwa_consequences(program_of(":- dynamic(p/0).")), (TermSet{t("p")}));
  EXPECT_EQ(cwa_consequences(program_of("p(a).\nq(b).")), (TermSet{t("p(b)"), t("q(a)")}));
}
