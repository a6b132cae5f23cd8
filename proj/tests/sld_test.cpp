#include <gtest/gtest.h>

#include <sstream>

#include "simplylog/sld.hpp"
#include "support.hpp"

using namespace slog;
using slog::testing::answers;
using slog::testing::goals_of;
using slog::testing::program_of;
using slog::testing::t;

namespace {

const char* kLists = R"(
append([], L, L).
append([H|T], L, [H|R]) :- append(T, L, R).
member(X, [X|_]).
member(X, [_|T]) :- member(X, T).
)";

EngineLimits depth(std::size_t d) {
  EngineLimits l;
  l.max_depth = d;
  return l;
}

}  // namespace

TEST(Solve, FactsAndAppend) {
  Program p = program_of("likes(peter, prolog).");
  EXPECT_EQ(answers(p, "likes(peter, X)"), std::vector<std::string>{"X = prolog"});
  Program lists = program_of(kLists);
  auto r = solve_all(lists, goals_of("append([1],[2],Z)"));
  ASSERT_EQ(r.answers.size(), 1u);
  EXPECT_EQ(format_bindings(r.answers[0]), "Z = [1,2]");
  EXPECT_EQ(r.answers[0].depth, 2u);
  EXPECT_EQ(answers(lists, "append(X, Y, [a,b])"),
            (std::vector<std::string>{"X = [], Y = [a,b]", "X = [a], Y = [b]", "X = [a,b], Y = []"}));
}

TEST(Solve, LoopingProgramsAndStrategies) {
  Program loop = program_of("p :- p.");
  for (Strategy s : {Strategy::depth_first(), Strategy::iterative_deepening(), Strategy::breadth_first()}) {
    EngineLimits lim = depth(50);
    if (s.kind == Strategy::Kind::BreadthFirst) lim = EngineLimits{std::nullopt, 1000};
    auto r = solve_all(loop, goals_of("p"), s, lim);
    EXPECT_TRUE(r.answers.empty()) << s.name();
    EXPECT_EQ(r.end, StreamEnd::ResourcesExhausted) << s.name();
  }
  Program pp = program_of("p :- p.\np.");
  auto dfs = solve_all(pp, goals_of("p"), Strategy::depth_first(), depth(50));
  EXPECT_TRUE(dfs.answers.empty());
  EXPECT_EQ(dfs.end, StreamEnd::ResourcesExhausted);
  auto bfs = solve_all(pp, goals_of("p"), Strategy::breadth_first(), depth(50), {}, 1);
  EXPECT_EQ(bfs.answers.size(), 1u);
  auto id = solve_all(pp, goals_of("p"), Strategy::iterative_deepening(), depth(50), {}, 1);
  EXPECT_EQ(id.answers.size(), 1u);
}

TEST(Solve, IterativeDeepeningDoesNotRepeatAnswers) {
  Program lists = program_of(kLists);
  auto id = solve_all(lists, goals_of("member(X, [a,b,c])"), Strategy::iterative_deepening(2));
  EXPECT_EQ(id.end, StreamEnd::Exhausted);
  ASSERT_EQ(id.answers.size(), 3u);
  EXPECT_EQ(format_bindings(id.answers[2]), "X = c");
}

TEST(Solve, Resumable) {
  Program lists = program_of(kLists);
  auto all = answers(lists, "member(X, [a,b,c,d])");
  Solver s(lists, goals_of("member(X, [a,b,c,d])"));
  for (std::size_t k = 0; k < all.size(); ++k) {
    auto a = s.next();
    ASSERT_TRUE(a);
    EXPECT_EQ(format_bindings(*a), all[k]);
  }
  EXPECT_FALSE(s.next());
  EXPECT_EQ(s.end(), StreamEnd::Exhausted);
  EXPECT_FALSE(s.next());
}

TEST(Solve, UndefinedPredicate) {
  Program p = program_of("q.");
  try {
    solve_all(p, goals_of("undefined_pred"));
    FAIL();
  } catch (const ExistenceError& e) {
    EXPECT_EQ(e.indicator(), "undefined_pred/0");
  }
  EngineOptions quiet;
  quiet.undefined_is_error = false;
  EXPECT_TRUE(solve_all(p, goals_of("undefined_pred"), {}, {}, quiet).answers.empty());
  Program d = consult(Program{}, parse_program(":- dynamic(r/1).").clauses);
  EXPECT_TRUE(solve_all(d, goals_of("r(X)")).answers.empty());
}

TEST(Solve, OccursCheckFlag) {
  Program p = program_of("same(X, X).");
  EXPECT_TRUE(answers(p, "same(Y, f(Y))").empty());
  EngineOptions off;
  off.occurs_check = false;
  EXPECT_EQ(solve_all(p, goals_of("same(Y, f(Y))"), {}, {}, off).answers.size(), 1u);
}

TEST(Cut, CommitsToClause) {
  Program p = program_of("max3(X,Y,X) :- X >= Y, !.\nmax3(X,Y,Y).");
  EXPECT_EQ(answers(p, "max3(3,2,M)"), std::vector<std::string>{"M = 3"});
  EXPECT_EQ(answers(p, "max3(2,3,M)"), std::vector<std::string>{"M = 3"});
  Program q = program_of(std::string(kLists) + "first(X, L) :- member(X, L), !.\n");
  EXPECT_EQ(answers(q, "first(X, [a,b])"), std::vector<std::string>{"X = a"});
  Program opaque = program_of("t(X) :- call((member(X, [a,b]), !)).\nt(c).\n" + std::string(kLists));
  EXPECT_EQ(answers(opaque, "t(X)"), (std::vector<std::string>{"X = a", "X = c"}));
  EXPECT_THROW(solve_all(p, goals_of("max3(3,2,M)"), Strategy::breadth_first()), ProgramError);
  EXPECT_THROW(solve_all(p, goals_of("max3(3,2,M)"), Strategy::iterative_deepening()), ProgramError);
}

TEST(Control, DisjunctionAndIfThenElse) {
  Program p = program_of("c(X, Y) :- ( X > 0 -> Y = pos ; Y = nonpos ).\nd(X) :- X = a ; X = b.");
  EXPECT_EQ(answers(p, "c(1, Y)"), std::vector<std::string>{"Y = pos"});
  EXPECT_EQ(answers(p, "c(0, Y)"), std::vector<std::string>{"Y = nonpos"});
  EXPECT_EQ(answers(p, "d(X)"), (std::vector<std::string>{"X = a", "X = b"}));
}

TEST(Arith, EvalAndErrors) {
  EXPECT_EQ(eval_arith(t("3+4")), 7);
  EXPECT_EQ(eval_arith(t("7 // 2")), 3);
  EXPECT_EQ(eval_arith(t("7 mod 2")), 1);
  for (int x = -9; x <= 9; ++x)
    for (int d : {-4, -3, -1, 1, 2, 5}) {
      std::int64_t q = eval_arith(Term::compound("//", {Term::integer(x), Term::integer(d)}));
      std::int64_t m = eval_arith(Term::compound("mod", {Term::integer(x), Term::integer(d)}));
      EXPECT_EQ(q * d + m, x);
      EXPECT_TRUE(m == 0 || (m < 0) == (d < 0));
    }
  EXPECT_THROW(eval_arith(t("X+1")), InstantiationError);
  EXPECT_THROW(eval_arith(t("1//0")), EvaluationError);
  EXPECT_THROW(eval_arith(t("foo+1")), TypeError);
  EXPECT_THROW(eval_arith(t("9223372036854775807+1")), EvaluationError);
  Program p = program_of("len([], 0).\nlen([_|T], N) :- len(T, M), N is M+1.");
  EXPECT_EQ(answers(p, "len([a,b,c], N)"), std::vector<std::string>{"N = 3"});
}

TEST(Collect, FindallBagofSetof) {
  Program lists = program_of(kLists);
  auto run = [&](CollectKind k, const char* templ_and_goal) {
    Term both = t(templ_and_goal);
    return collect(lists, k, both.arg(0), {both.arg(1)});
  };
  EXPECT_EQ(to_string(*run(CollectKind::Findall, "x(X, member(X,[a,b]))")), "[a,b]");
  EXPECT_EQ(to_string(*run(CollectKind::Findall, "x(X, fail)")), "[]");
  EXPECT_FALSE(run(CollectKind::Bagof, "x(X, fail)"));
  EXPECT_EQ(to_string(*run(CollectKind::Setof, "x(X, member(X,[b,a,b]))")), "[a,b]");
  Program ages = program_of("age(ann, 30). age(bob, 25). age(cid, 30).");
  EXPECT_EQ(answers(ages, "bagof(P, age(P, A), L)"),
            (std::vector<std::string>{"A = 30, L = [ann,cid]", "A = 25, L = [bob]"}));
  EXPECT_EQ(answers(ages, "setof(P, age(P, A), L)"),
            (std::vector<std::string>{"A = 25, L = [bob]", "A = 30, L = [ann,cid]"}));
}

TEST(Naf, GroundOnly) {
  Program p = program_of("bird(tweety).\n:- dynamic(ab/1).");
  EXPECT_EQ(naf(p, goals_of("ab(tweety)")), NafResult::Success);
  EXPECT_EQ(naf(p, goals_of("bird(tweety)")), NafResult::Failure);
  EXPECT_THROW(naf(p, goals_of("bird(X)")), InstantiationError);
  EXPECT_THROW(solve_all(p, goals_of("\\+ bird(X)")), InstantiationError);
  Program loop = program_of("p :- p.");
  EXPECT_THROW(naf(loop, goals_of("p"), {}, depth(20)), ResourceError);
  auto r = solve_all(loop, goals_of("\\+ p"), {}, depth(20));
  EXPECT_EQ(r.end, StreamEnd::ResourcesExhausted);
}

TEST(Proof, TreeAndReplay) {
  Program p = program_of("q.\np :- q.");
  auto tree = proof_tree(p, goals_of("p"));
  ASSERT_TRUE(tree);
  EXPECT_EQ(proof_to_text(*tree, p), "p  [clause 2]\n  q  [clause 1]\n");
  EXPECT_TRUE(verify_proof(*tree, p));
  auto fact = proof_tree(p, goals_of("q"));
  ASSERT_TRUE(fact);
  EXPECT_TRUE(fact->children.empty());
  EXPECT_FALSE(proof_tree(p, goals_of("r"), {}, {}, EngineOptions{true, false}));

  Program lists = program_of(kLists + std::string("len([], 0).\nlen([_|T], N) :- len(T, M), N is M+1."));
  auto app = proof_tree(lists, goals_of("append(X, [c], [a,b,c]), len(X, N)"));
  ASSERT_TRUE(app);
  EXPECT_TRUE(verify_proof(*app, lists));
  EXPECT_EQ(to_string(app->children[0].atom), "append([a,b],[c],[a,b,c])");
  EXPECT_EQ(to_string(app->children[1].atom), "len([a,b],2)");

  ProofTree forged = *tree;
  forged.children[0].atom = Term::atom("r");
  EXPECT_FALSE(verify_proof(forged, p));
}

TEST(Trace, FourPorts) {
  Program p = program_of("q(a).\nq(b).\np(X) :- q(X), X == b.");
  std::ostringstream out;
  EngineOptions opts;
  opts.trace = true;
  opts.trace_out = &out;
  auto r = solve_all(p, goals_of("p(X)"), {}, {}, opts);
  ASSERT_EQ(r.answers.size(), 1u);
  EXPECT_EQ(out.str(),
            "   Call: (1) p(X)\n"
            "   Call: (2) q(_G1)\n"
            "   Exit: (2) q(a)\n"
            "   Redo: (2) q(_G1)\n"
            "   Exit: (2) q(b)\n"
            "   Exit: (1) p(b)\n"
            "   Fail: (2) q(_G1)\n"
            "   Fail: (1) p(X)\n");
}

TEST(SldTree, Shapes) {
  Program p = program_of("p :- q.\np :- r.\nq.\n:- dynamic(r/0).");
  SldTree tr = sld_tree(p, goals_of("p"), 10);
  ASSERT_EQ(tr.root.children.size(), 2u);
  EXPECT_EQ(tr.root.children[0].children.at(0).status, SldNode::Status::Success);
  EXPECT_EQ(tr.root.children[1].status, SldNode::Status::Failure);
  EXPECT_EQ(sld_tree_to_text(tr), "?- p\n  (1) q\n    (3) []  [success]\n  (2) r  [failure]\n");

  SldTree none = sld_tree(p, goals_of("s"), 10);
  EXPECT_EQ(none.root.status, SldNode::Status::Failure);
  EXPECT_TRUE(none.root.children.empty());

  Program m = program_of("max3(X,Y,X) :- X >= Y, !.\nmax3(X,Y,Y).");
  SldTree mt = sld_tree(m, goals_of("max3(3,2,M)"), 10);
  EXPECT_EQ(sld_tree_to_text(mt),
            "?- max3(3,2,M)\n"
            "  (1) 3>=2, !\n"
            "    !\n"
            "      []  [success: M = 3]\n"
            "  (2) []  [pruned]\n");

  Program loop = program_of("p :- p.");
  SldTree lt = sld_tree(loop, goals_of("p"), 3);
  EXPECT_EQ(lt.root.children.at(0).children.at(0).children.at(0).status, SldNode::Status::DepthBounded);
}

TEST(Consult, OrderAndRejection) {
  Program one = consult(Program{}, parse_program("p.").clauses);
  EXPECT_EQ(one.size(), 1u);
  Program two = consult(one, parse_program("q. p(a).").clauses);
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(to_string(two.clauses()[2]), "p(a).");
  EXPECT_THROW(consult(Program{}, parse_program("p ; q :- r.").clauses), ProgramError);
  Program dcg = consult(Program{}, parse_program("n --> [dog].").clauses);
  EXPECT_EQ(to_string(dcg.clauses()[0]), "n([dog|S1],S1).");
}

// Generated programs with a single cut: removing the cut never loses the
// first depth-first answer.
TEST(Cut, RemovingCutKeepsFirstAnswer) {
  std::mt19937 rng(5);
  const char* consts[] = {"a", "b", "c"};
  for (int round = 0; round < 60; ++round) {
    std::string facts;
    for (int i = 0; i < 6; ++i)
      facts += std::string(rng() % 2 ? "e" : "f") + "(" + consts[rng() % 3] + "," + consts[rng() % 3] + ").\n";
    facts += "e(z,z).\nf(z,z).\n";
    std::string with_cut = facts + "r(X, Y) :- e(X, Z), !, f(Z, Y).\nr(X, X) :- f(X, a).\n";
    std::string without = facts + "r(X, Y) :- e(X, Z), f(Z, Y).\nr(X, X) :- f(X, a).\n";
    auto a = answers(program_of(with_cut), "r(X, Y)");
    auto b = answers(program_of(without), "r(X, Y)");
    if (!a.empty()) {
      ASSERT_FALSE(b.empty());
      EXPECT_EQ(a.front(), b.front());
    }
  }
}
