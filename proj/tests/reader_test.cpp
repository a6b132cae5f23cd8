#include <gtest/gtest.h>

#include "simplylog/reader.hpp"
#include "support.hpp"

using namespace slog;
using slog::testing::t;

TEST(Tokenize, Basic) {
  auto toks = tokenize("p(X).");
  ASSERT_EQ(toks.size(), 5u);
  EXPECT_EQ(toks[0].kind, TokenKind::Atom);
  EXPECT_EQ(toks[0].text, "p");
  EXPECT_TRUE(toks[1].is_punct("("));
  EXPECT_EQ(toks[2].kind, TokenKind::Variable);
  EXPECT_TRUE(toks[3].is_punct(")"));
  EXPECT_EQ(toks[4].kind, TokenKind::End);
}

TEST(Tokenize, CommentsAndQuotes) {
  auto toks = tokenize("% c\nq.");
  ASSERT_EQ(toks.size(), 2u);
  EXPECT_EQ(toks[0].text, "q");
  EXPECT_EQ(toks[0].line, 2);

  auto q = tokenize("'a b'.");
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q[0].kind, TokenKind::QuotedAtom);
  EXPECT_EQ(q[0].text, "a b");

  EXPECT_EQ(tokenize("/* x\n y */ r.").front().text, "r");
}

TEST(Tokenize, Errors) {
  EXPECT_THROW(tokenize("'abc"), SyntaxError);
  EXPECT_THROW(tokenize("/* open"), SyntaxError);
  try {
    tokenize("p.\n  'oops");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
}

TEST(Tokenize, LengthBound) {
  std::string junk = "a(B, 'c d') :- [x|T], 12 >= -3 % tail\n.";
  for (std::size_t n = 0; n <= junk.size(); ++n) {
    try {
      auto toks = tokenize(junk.substr(0, n));
      EXPECT_LE(toks.size(), n + 1);
    } catch (const SyntaxError&) {
    }
  }
}

TEST(Parse, OperatorPriorities) {
  Term e = t("1+2*3");
  EXPECT_EQ(e, Term::compound("+", {Term::integer(1), Term::compound("*", {Term::integer(2), Term::integer(3)})}));
  Term l = t("1-2-3");
  EXPECT_EQ(l.arg(0), t("1-2"));
  Term c = t("a :- b, c ; d");
  EXPECT_EQ(c.name(), ":-");
  EXPECT_EQ(c.arg(1).name(), ";");
  EXPECT_EQ(t("- 1").name(), "-");
  EXPECT_TRUE(t("-1").is_int());
  EXPECT_EQ(t("\\+ a, b").name(), ",");
  Term univ = t("X =.. [f, a]");
  EXPECT_EQ(univ.name(), "=..");
  EXPECT_EQ(univ.arg(1), t("[f, a]"));
}

TEST(Parse, ListsAndCanonical) {
  EXPECT_EQ(t("[1,2]"), Term::list({Term::integer(1), Term::integer(2)}));
  Term ht = t("[a|T]");
  EXPECT_TRUE(ht.is_cons());
  EXPECT_TRUE(ht.arg(1).is_var());
  Term fx = t("f(X,a)");
  EXPECT_EQ(fx.arity(), 2u);
  EXPECT_TRUE(fx.arg(0).is_var());
  EXPECT_EQ(fx.arg(0).name(), "X");
  Term shared = t("f(X,X,_,_)");
  EXPECT_EQ(shared.arg(0), shared.arg(1));
  EXPECT_NE(shared.arg(2), shared.arg(3));
}

TEST(Parse, Errors) {
  EXPECT_THROW(t("f(a"), SyntaxError);
  EXPECT_THROW(t("a b"), SyntaxError);
  EXPECT_THROW(t("a = b = c"), SyntaxError);
}

TEST(ParseProgram, KindsAndRecovery) {
  auto p = parse_program("p. q :- p.");
  ASSERT_EQ(p.clauses.size(), 2u);
  EXPECT_EQ(p.clauses[0].kind, ClauseKind::Clause);
  EXPECT_EQ(p.clauses[1].kind, ClauseKind::Clause);
  EXPECT_EQ(parse_program("s --> np, vp.").clauses.at(0).kind, ClauseKind::DcgRule);
  EXPECT_EQ(parse_program(":- dynamic(p/1).").clauses.at(0).kind, ClauseKind::Directive);
  EXPECT_EQ(parse_program("?- p.").clauses.at(0).kind, ClauseKind::Query);

  auto bad = parse_program("p(.\nq.\nr(a b).\ns.");
  EXPECT_EQ(bad.errors.size(), 2u);
  ASSERT_EQ(bad.clauses.size(), 2u);
  EXPECT_EQ(bad.clauses[0].term, Term::atom("q"));
  EXPECT_EQ(bad.clauses[1].line, 4);
}

TEST(Write, Examples) {
  EXPECT_EQ(to_string(t("1+2*3")), "1+2*3");
  EXPECT_EQ(to_string(t("(1+2)*3")), "(1+2)*3");
  EXPECT_EQ(to_string(Term::list({Term::atom("a")})), "[a]");
  EXPECT_EQ(to_string(Term::compound("a b", {Term::atom("c")})), "'a b'(c)");
  EXPECT_EQ(to_string(t("[a,b|T]")), "[a,b|T]");
  EXPECT_EQ(to_string(t("p :- q, r")), "p:-q,r");
  EXPECT_EQ(to_string(t("- (1)")), "- 1");
  EXPECT_EQ(to_string(t("1 - -1")), "1- -1");
  EXPECT_EQ(to_string(t("\\+ p")), "\\+p");
}

TEST(Write, RoundTripOnRandomTerms) {
  std::mt19937 rng(3);
  Term vars[] = {Term::var("X"), Term::var("Y")};
  std::function<Term(int)> gen = [&](int depth) -> Term {
    int k = std::uniform_int_distribution<int>(0, depth > 0 ? 9 : 4)(rng);
    switch (k) {
      case 0: return Term::atom("a");
      case 1: return Term::atom("b");
      case 2: return vars[rng() % 2];
      case 3: return Term::integer(static_cast<int>(rng() % 7) - 3);
      case 4: return Term::nil();
      case 5: return Term::compound("f", {gen(depth - 1)});
      case 6: return Term::compound("g", {gen(depth - 1), gen(depth - 1)});
      case 7: return Term::compound("+", {gen(depth - 1), gen(depth - 1)});
      case 8: return Term::compound("*", {gen(depth - 1), gen(depth - 1)});
      default: return Term::list({gen(depth - 1), gen(depth - 1)}, rng() % 2 ? Term::nil() : vars[0]);
    }
  };
  for (int i = 0; i < 500; ++i) {
    Term x = gen(4);
    std::string text = to_string(x);
    Term back = parse_term(text);
    EXPECT_TRUE(is_variant(x, back)) << text;
    EXPECT_EQ(to_string(back), text);
  }
}

TEST(Formula, Parse) {
  Formula f = parse_formula("forall(X, implies(p(X), q(X)))");
  EXPECT_EQ(f.kind(), Formula::Kind::Forall);
  EXPECT_EQ(f.body().kind(), Formula::Kind::Implies);
  EXPECT_EQ(f.var(), f.body().left().term().arg(0));
  EXPECT_EQ(parse_formula("exists(X, p(X))").kind(), Formula::Kind::Exists);
  Formula iff = parse_formula("iff(p, not(q))");
  EXPECT_EQ(iff.kind(), Formula::Kind::Iff);
  EXPECT_EQ(iff.right().kind(), Formula::Kind::Not);
  EXPECT_THROW(parse_formula("forall(a, p)"), SyntaxError);
  EXPECT_THROW(parse_formula("p :- q"), SyntaxError);
  EXPECT_THROW(parse_formula("and(p, (q ; r))"), SyntaxError);
}
