#include "simplylog/sld.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <set>

#include "sld_internal.hpp"

namespace slog {

using detail::Context;
using detail::Expansion;
using detail::GoalCell;
using detail::GoalList;
using detail::LogCell;
using detail::LogPtr;
using detail::State;

Strategy Strategy::iterative_deepening(std::size_t step) {
  if (step == 0) throw std::invalid_argument("iterative deepening step must be positive");
  return {Kind::IterativeDeepening, step};
}

std::string Strategy::name() const {
  switch (kind) {
    case Kind::DepthFirst: return "dfs";
    case Kind::BreadthFirst: return "bfs";
    case Kind::IterativeDeepening: return "id";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Arithmetic

namespace {

std::int64_t checked(bool overflow, std::int64_t v) {
  if (overflow) throw EvaluationError("integer overflow");
  return v;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  if (b == 0) throw EvaluationError("zero divisor");
  if (a == INT64_MIN && b == -1) throw EvaluationError("integer overflow");
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::int64_t eval_arith(const Term& e) {
  if (e.is_int()) return e.value();
  if (e.is_var()) throw InstantiationError("unbound variable in arithmetic");
  const std::string& f = e.name();
  if (e.is_compound() && e.arity() == 1) {
    std::int64_t x = eval_arith(e.arg(0));
    if (f == "-") {
      std::int64_t r = 0;
      bool overflow = __builtin_sub_overflow(std::int64_t{0}, x, &r);
      return checked(overflow, r);
    }
    if (f == "+") return x;
    if (f == "abs") {
      if (x == INT64_MIN) throw EvaluationError("integer overflow");
      return x < 0 ? -x : x;
    }
  }
  if (e.is_compound() && e.arity() == 2) {
    std::int64_t x = eval_arith(e.arg(0));
    std::int64_t y = eval_arith(e.arg(1));
    std::int64_t r = 0;
    if (f == "+") {
      bool overflow = __builtin_add_overflow(x, y, &r);
      return checked(overflow, r);
    }
    if (f == "-") {
      bool overflow = __builtin_sub_overflow(x, y, &r);
      return checked(overflow, r);
    }
    if (f == "*") {
      bool overflow = __builtin_mul_overflow(x, y, &r);
      return checked(overflow, r);
    }
    if (f == "//") return floor_div(x, y);
    if (f == "mod") {
      if (y == 0) throw EvaluationError("zero divisor");
      if (y == -1) return 0;
      return x - floor_div(x, y) * y;
    }
    if (f == "min") return std::min(x, y);
    if (f == "max") return std::max(x, y);
  }
  throw TypeError("not evaluable: " + PredKey::of(e).str());
}

// ---------------------------------------------------------------------------
// Goal lists

namespace detail {

GoalList push_goals(const std::vector<Term>& goals, std::size_t barrier, std::size_t call_depth, GoalList rest) {
  for (std::size_t i = goals.size(); i-- > 0;)
    rest = std::make_shared<const GoalCell>(GoalCell{GoalCell::Kind::Goal, goals[i], barrier, call_depth, rest});
  return rest;
}

std::vector<Term> goal_terms(const GoalList& g) {
  std::vector<Term> out;
  for (const GoalCell* c = g.get(); c; c = c->next.get())
    if (c->kind == GoalCell::Kind::Goal) out.push_back(c->goal);
  return out;
}

void count_node(const Context& ctx) {
  ++*ctx.nodes;
  if (ctx.limits.max_nodes && *ctx.nodes > *ctx.limits.max_nodes) throw ResourceError();
}

}  // namespace detail

namespace {

GoalList apply_goals(const Substitution& s, const GoalList& g) {
  if (s.empty() || !g) return g;
  std::vector<const GoalCell*> cells;
  for (const GoalCell* c = g.get(); c; c = c->next.get()) cells.push_back(c);
  GoalList out;
  for (std::size_t i = cells.size(); i-- > 0;) {
    const GoalCell& c = *cells[i];
    Term t = c.kind == GoalCell::Kind::CutTo ? c.goal : s.apply(c.goal);
    out = std::make_shared<const GoalCell>(GoalCell{c.kind, t, c.barrier, c.call_depth, out});
  }
  return out;
}

bool is_control(const Term& t, const char* name, std::size_t arity) {
  return t.is_callable() && t.name() == name && (t.is_compound() ? t.arity() : 0) == arity;
}

const std::set<PredKey>& builtin_keys() {
  static const std::set<PredKey> keys = {
      {"true", 0},    {"fail", 0},     {"false", 0},    {"!", 0},        {",", 2},       {";", 2},
      {"->", 2},      {"call", 1},     {"\\+", 1},      {"not", 1},      {"=", 2},       {"\\=", 2},
      {"==", 2},      {"\\==", 2},     {"@<", 2},       {"@>", 2},       {"@=<", 2},     {"@>=", 2},
      {"is", 2},      {"=:=", 2},      {"=\\=", 2},     {"<", 2},        {">", 2},       {"=<", 2},
      {">=", 2},      {"var", 1},      {"nonvar", 1},   {"atom", 1},     {"integer", 1}, {"atomic", 1},
      {"compound", 1}, {"callable", 1}, {"is_list", 1},  {"functor", 3},  {"arg", 3},     {"=..", 2},
      {"copy_term", 2}, {"findall", 3}, {"bagof", 3},    {"setof", 3},    {"clause", 2},
  };
  return keys;
}

void check_cut_free(const Term& t) {
  if (t.is_var() || !t.is_callable()) return;
  if (t.is_atom() && t.name() == "!")
    throw ProgramError("cut is only available under depth-first search");
  if (is_control(t, "->", 2)) throw ProgramError("if-then-else is only available under depth-first search");
  if (is_control(t, ",", 2) || is_control(t, ";", 2)) {
    check_cut_free(t.arg(0));
    check_cut_free(t.arg(1));
  } else if (is_control(t, "call", 1) || is_control(t, "\\+", 1) || is_control(t, "not", 1)) {
    check_cut_free(t.arg(0));
  }
}

}  // namespace

bool is_builtin(const PredKey& key) { return builtin_keys().count(key) != 0; }

void detail::reject_cut(const Program& p, const std::vector<Term>& goals) {
  for (const Clause& c : p.clauses())
    for (const Term& b : c.body) check_cut_free(b);
  for (const Term& g : goals) check_cut_free(g);
}

// ---------------------------------------------------------------------------
// Streams

namespace {

class Stream {
 public:
  Stream(std::shared_ptr<const Context> ctx, State root);
  std::optional<State> next();
  StreamEnd end() const { return end_; }

 private:
  struct ChoicePoint {
    std::vector<State> alts;
    std::size_t next = 0;
    bool user = false;
    Term atom;
    std::size_t call_depth = 0;
  };
  struct DfsRun {
    std::vector<ChoicePoint> stack;
    std::optional<State> current;
    std::optional<std::size_t> cutoff;
    std::optional<std::size_t> suppress_upto;
    bool cut_off_hit = false;
  };

  std::optional<State> dfs_next(DfsRun& r);
  bool backtrack(DfsRun& r);
  std::optional<State> bfs_next();
  std::optional<State> id_next();
  void trace(const char* port, std::size_t depth, const Term& t) const;

  std::shared_ptr<const Context> ctx_;
  State root_;
  StreamEnd end_ = StreamEnd::None;

  DfsRun run_;
  std::size_t limit_ = 0;
  std::deque<State> queue_;
  bool dropped_ = false;
};

Stream::Stream(std::shared_ptr<const Context> ctx, State root) : ctx_(std::move(ctx)), root_(std::move(root)) {
  switch (ctx_->strategy.kind) {
    case Strategy::Kind::DepthFirst:
      run_.current = root_;
      break;
    case Strategy::Kind::BreadthFirst:
      queue_.push_back(root_);
      break;
    case Strategy::Kind::IterativeDeepening:
      limit_ = ctx_->strategy.step;
      if (ctx_->limits.max_depth) limit_ = std::min(limit_, *ctx_->limits.max_depth);
      run_.current = root_;
      run_.cutoff = limit_;
      break;
  }
}

void Stream::trace(const char* port, std::size_t depth, const Term& t) const {
  if (!ctx_->options.trace || !ctx_->options.trace_out) return;
  *ctx_->options.trace_out << "   " << port << ": (" << depth << ") " << to_string(t) << "\n";
}

std::optional<State> Stream::next() {
  if (end_ != StreamEnd::None) return std::nullopt;
  try {
    std::optional<State> s;
    switch (ctx_->strategy.kind) {
      case Strategy::Kind::DepthFirst: s = dfs_next(run_); break;
      case Strategy::Kind::BreadthFirst: s = bfs_next(); break;
      case Strategy::Kind::IterativeDeepening: s = id_next(); break;
    }
    if (!s && end_ == StreamEnd::None) end_ = StreamEnd::Exhausted;
    return s;
  } catch (const ResourceError&) {
    end_ = StreamEnd::ResourcesExhausted;
    return std::nullopt;
  } catch (...) {
    end_ = StreamEnd::Exhausted;
    throw;
  }
}

bool Stream::backtrack(DfsRun& r) {
  while (!r.stack.empty()) {
    ChoicePoint& cp = r.stack.back();
    if (cp.next < cp.alts.size()) {
      if (cp.next > 0 && cp.user) trace("Redo", cp.call_depth, cp.atom);
      r.current = std::move(cp.alts[cp.next++]);
      return true;
    }
    if (cp.user) trace("Fail", cp.call_depth, cp.atom);
    r.stack.pop_back();
  }
  return false;
}

std::optional<State> Stream::dfs_next(DfsRun& r) {
  const bool id = ctx_->strategy.kind == Strategy::Kind::IterativeDeepening;
  for (;;) {
    if (!r.current && !backtrack(r)) return std::nullopt;
    State s = std::move(*r.current);
    r.current.reset();
    if (!s.goals) {
      if (r.suppress_upto && s.depth <= *r.suppress_upto) continue;
      return s;
    }
    GoalList head = s.goals;
    if (head->kind == GoalCell::Kind::Exit) {
      trace("Exit", head->call_depth, head->goal);
      s.goals = head->next;
      r.current = std::move(s);
      continue;
    }
    if (head->kind == GoalCell::Kind::CutTo) {
      if (r.stack.size() > head->barrier) r.stack.resize(head->barrier);
      s.goals = head->next;
      r.current = std::move(s);
      continue;
    }
    if (r.cutoff && s.depth >= *r.cutoff) {
      r.cut_off_hit = true;
      continue;
    }
    if (!id && ctx_->limits.max_depth && s.depth >= *ctx_->limits.max_depth) throw ResourceError();
    detail::count_node(*ctx_);
    bool user = !is_builtin(PredKey::of(head->goal.is_callable() ? head->goal : Term::atom("call")));
    if (user) trace("Call", head->call_depth, head->goal);
    Expansion e = detail::expand(*ctx_, s, r.stack.size());
    if (e.cut_to && r.stack.size() > *e.cut_to) r.stack.resize(*e.cut_to);
    if (e.user_call) {
      r.stack.push_back(ChoicePoint{std::move(e.children), 0, true, head->goal, head->call_depth});
    } else if (e.children.size() == 1) {
      r.current = std::move(e.children.front());
    } else if (!e.children.empty()) {
      r.stack.push_back(ChoicePoint{std::move(e.children), 0, false, head->goal, head->call_depth});
    }
  }
}

std::optional<State> Stream::bfs_next() {
  while (!queue_.empty()) {
    State s = std::move(queue_.front());
    queue_.pop_front();
    while (s.goals && s.goals->kind != GoalCell::Kind::Goal) {
      if (s.goals->kind == GoalCell::Kind::Exit) trace("Exit", s.goals->call_depth, s.goals->goal);
      s.goals = s.goals->next;
    }
    if (!s.goals) return s;
    if (ctx_->limits.max_depth && s.depth >= *ctx_->limits.max_depth) {
      dropped_ = true;
      continue;
    }
    detail::count_node(*ctx_);
    const Term& g = s.goals->goal;
    if (g.is_callable() && !is_builtin(PredKey::of(g))) trace("Call", s.goals->call_depth, g);
    Expansion e = detail::expand(*ctx_, s, 0);
    for (State& c : e.children) queue_.push_back(std::move(c));
  }
  if (dropped_) end_ = StreamEnd::ResourcesExhausted;
  return std::nullopt;
}

std::optional<State> Stream::id_next() {
  for (;;) {
    if (auto s = dfs_next(run_)) return s;
    if (!run_.cut_off_hit) return std::nullopt;
    if (ctx_->limits.max_depth && limit_ >= *ctx_->limits.max_depth) {
      end_ = StreamEnd::ResourcesExhausted;
      return std::nullopt;
    }
    std::size_t prev = limit_;
    limit_ += ctx_->strategy.step;
    if (ctx_->limits.max_depth) limit_ = std::min(limit_, *ctx_->limits.max_depth);
    run_ = DfsRun{};
    run_.current = root_;
    run_.cutoff = limit_;
    run_.suppress_upto = prev;
  }
}

State make_root(const std::vector<Term>& goals, const Term& answer) {
  State s;
  s.goals = detail::push_goals(goals, 0, 1, nullptr);
  s.answer = answer;
  return s;
}

std::shared_ptr<Context> sub_context(const Context& ctx) {
  auto c = std::make_shared<Context>(ctx);
  c->options.trace = false;
  return c;
}

// ---------------------------------------------------------------------------
// Builtins

struct Builtins {
  const Context& ctx;
  const State& s;
  const GoalCell& g;
  std::size_t barrier;
  Expansion& out;

  bool occurs() const { return ctx.options.occurs_check; }

  State child(const Substitution& theta, const std::vector<Term>& new_goals, std::size_t goal_barrier,
              ProofTree::Source src = ProofTree::Source::Builtin, std::size_t clause = 0,
              std::optional<std::size_t> logged = std::nullopt) {
    State c;
    GoalList rest = apply_goals(theta, g.next);
    c.goals = detail::push_goals(theta.apply(new_goals), goal_barrier, g.call_depth + 1, rest);
    c.answer = theta.empty() ? s.answer : theta.apply(s.answer);
    c.residue = s.residue;
    c.depth = s.depth + 1;
    c.log = std::make_shared<const LogCell>(
        LogCell{g.goal, src, clause, logged.value_or(new_goals.size()), theta, s.log});
    return c;
  }

  void succeed(const Substitution& theta = {}) { out.children.push_back(child(theta, {}, 0)); }

  void unify_and_succeed(const Term& a, const Term& b) {
    if (auto th = unify(a, b, occurs())) succeed(*th);
  }

  void test(bool ok) {
    if (ok) succeed();
  }

  std::vector<State> solve_states(const Term& goal, const Term& answer) {
    auto sub = sub_context(ctx);
    Stream st(sub, make_root({goal}, answer));
    std::vector<State> found;
    while (auto r = st.next()) found.push_back(std::move(*r));
    if (st.end() == StreamEnd::ResourcesExhausted) throw ResourceError();
    return found;
  }

  bool has_solution(const Term& goal) {
    auto sub = sub_context(ctx);
    sub->under_negation = true;
    Stream st(sub, make_root({goal}, Term::atom("$answer")));
    if (st.next()) return true;
    if (st.end() == StreamEnd::ResourcesExhausted) throw ResourceError();
    return false;
  }

  static Term callable_goal(const Term& t) {
    if (t.is_var()) throw InstantiationError("unbound goal");
    if (!t.is_callable()) throw TypeError("callable expected, found " + to_string(t));
    return t;
  }

  void collect(const std::string& kind) {
    const Term& templ = g.goal.arg(0);
    Term goal = g.goal.arg(1);
    const Term& result = g.goal.arg(2);
    if (kind == "findall") {
      std::vector<State> found = solve_states(callable_goal(goal), templ);
      std::vector<Term> items;
      for (const State& st : found) {
        Substitution ren;
        items.push_back(rename(st.answer, *ctx.supply, ren));
      }
      unify_and_succeed(result, Term::list(items));
      return;
    }
    std::vector<Term> excluded = variables_of(templ);
    std::vector<Term> witness;
    for (const Term& v : variables_of(goal))
      if (std::find(excluded.begin(), excluded.end(), v) == excluded.end()) witness.push_back(v);
    Term w = Term::compound("$w", witness);
    std::vector<State> found = solve_states(callable_goal(goal), Term::compound("$tw", {templ, w}));
    if (found.empty()) return;
    std::vector<std::pair<Term, std::vector<Term>>> groups;
    for (const State& st : found) {
      Substitution ren;
      Term pair = rename(st.answer, *ctx.supply, ren);
      auto it = std::find_if(groups.begin(), groups.end(),
                             [&](const auto& gr) { return is_variant(gr.first, pair.arg(1)); });
      if (it == groups.end()) {
        groups.push_back({pair.arg(1), {pair.arg(0)}});
      } else {
        auto th = unify(it->first, pair.arg(1), occurs());
        it->second.push_back(th ? th->apply(pair.arg(0)) : pair.arg(0));
      }
    }
    if (kind == "setof") {
      std::stable_sort(groups.begin(), groups.end(),
                       [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
      for (auto& gr : groups) {
        std::sort(gr.second.begin(), gr.second.end(), TermLess{});
        gr.second.erase(std::unique(gr.second.begin(), gr.second.end()), gr.second.end());
      }
    }
    for (const auto& gr : groups) {
      auto th = unify_all({{w, gr.first}, {result, Term::list(gr.second)}}, occurs());
      if (th) succeed(*th);
    }
  }

  void clause_builtin() {
    Term head = callable_goal(g.goal.arg(0));
    const Program& p = *ctx.program;
    for (std::size_t idx : p.clauses_for(PredKey::of(head))) {
      const Clause& c = p.clauses()[idx];
      Substitution ren;
      Term h = rename(c.head.front(), *ctx.supply, ren);
      Term b = rename(conjunction(c.body), *ctx.supply, ren);
      auto th = unify_all({{head, h}, {g.goal.arg(1), b}}, occurs());
      if (th) succeed(*th);
    }
  }

  void functor_builtin() {
    const Term& t = g.goal.arg(0);
    if (!t.is_var()) {
      Term name = t.is_int() ? t : Term::atom(t.name());
      auto th = unify_all({{g.goal.arg(1), name}, {g.goal.arg(2), Term::integer(t.is_compound() ? t.arity() : 0)}},
                          occurs());
      if (th) succeed(*th);
      return;
    }
    const Term& n = g.goal.arg(1);
    const Term& a = g.goal.arg(2);
    if (n.is_var() || a.is_var()) throw InstantiationError("functor/3 needs a term or a name and arity");
    if (!a.is_int()) throw TypeError("integer expected, found " + to_string(a));
    if (a.value() == 0) {
      unify_and_succeed(t, n);
      return;
    }
    if (!n.is_atom()) throw TypeError("atom expected, found " + to_string(n));
    std::vector<Term> args;
    for (std::int64_t i = 0; i < a.value(); ++i) args.push_back(ctx.supply->fresh());
    unify_and_succeed(t, Term::compound(n.name(), args));
  }

  void arg_builtin() {
    const Term& n = g.goal.arg(0);
    const Term& t = g.goal.arg(1);
    if (n.is_var() || t.is_var()) throw InstantiationError("arg/3 needs bound arguments");
    if (!n.is_int()) throw TypeError("integer expected, found " + to_string(n));
    if (!t.is_compound()) throw TypeError("compound expected, found " + to_string(t));
    if (n.value() < 1 || static_cast<std::size_t>(n.value()) > t.arity()) return;
    unify_and_succeed(g.goal.arg(2), t.arg(n.value() - 1));
  }

  void univ_builtin() {
    const Term& t = g.goal.arg(0);
    if (!t.is_var()) {
      std::vector<Term> items;
      items.push_back(t.is_compound() ? Term::atom(t.name()) : t);
      if (t.is_compound())
        for (const Term& a : t.args()) items.push_back(a);
      unify_and_succeed(g.goal.arg(1), Term::list(items));
      return;
    }
    auto items = g.goal.arg(1).list_items();
    if (!items || items->empty()) throw InstantiationError("=.. needs a term or a proper list");
    const Term& f = items->front();
    if (items->size() == 1) {
      unify_and_succeed(t, f);
      return;
    }
    if (!f.is_atom()) throw TypeError("atom expected, found " + to_string(f));
    unify_and_succeed(t, Term::compound(f.name(), std::vector<Term>(items->begin() + 1, items->end())));
  }

  void if_then_else(const Term& cond, const Term& then, const std::optional<Term>& otherwise) {
    if (ctx.strategy.kind != Strategy::Kind::DepthFirst)
      throw ProgramError("if-then-else is only available under depth-first search");
    State a;
    GoalList rest = detail::push_goals({then}, g.barrier, g.call_depth + 1, g.next);
    rest = std::make_shared<const GoalCell>(GoalCell{GoalCell::Kind::CutTo, Term(), barrier, 0, rest});
    a.goals = detail::push_goals({cond}, barrier, g.call_depth + 1, rest);
    a.answer = s.answer;
    a.residue = s.residue;
    a.depth = s.depth + 1;
    a.log = std::make_shared<const LogCell>(LogCell{g.goal, ProofTree::Source::Builtin, 0, 2, {}, s.log});
    out.children.push_back(std::move(a));
    if (otherwise) out.children.push_back(child({}, {*otherwise}, g.barrier));
  }

  void run() {
    const Term& t = g.goal;
    const std::string& f = t.name();
    std::size_t n = t.is_compound() ? t.arity() : 0;
    auto cmp = [&](auto pred) { test(pred(compare(t.arg(0), t.arg(1)))); };
    auto arith = [&](auto pred) { test(pred(eval_arith(t.arg(0)), eval_arith(t.arg(1)))); };

    if (n == 0) {
      if (f == "true") return succeed();
      if (f == "fail" || f == "false") return;
      if (f == "!") {
        if (ctx.strategy.kind != Strategy::Kind::DepthFirst)
          throw ProgramError("cut is only available under depth-first search");
        out.cut_to = g.barrier;
        return succeed();
      }
    }
    if (n == 1) {
      const Term& a = t.arg(0);
      if (f == "call") {
        out.children.push_back(child({}, {callable_goal(a)}, barrier));
        return;
      }
      if (f == "\\+" || f == "not") {
        if (!a.is_ground()) throw InstantiationError("negated goal is not ground: " + to_string(a));
        return test(!has_solution(callable_goal(a)));
      }
      if (f == "var") return test(a.is_var());
      if (f == "nonvar") return test(!a.is_var());
      if (f == "atom") return test(a.is_atom());
      if (f == "integer") return test(a.is_int());
      if (f == "atomic") return test(a.is_atomic());
      if (f == "compound") return test(a.is_compound());
      if (f == "callable") return test(a.is_callable());
      if (f == "is_list") return test(a.list_items().has_value());
    }
    if (n == 2) {
      if (f == ",") {
        out.children.push_back(child({}, conjuncts(t), g.barrier));
        return;
      }
      if (f == ";") {
        const Term& l = t.arg(0);
        if (is_control(l, "->", 2)) return if_then_else(l.arg(0), l.arg(1), t.arg(1));
        out.children.push_back(child({}, {l}, g.barrier));
        out.children.push_back(child({}, {t.arg(1)}, g.barrier));
        return;
      }
      if (f == "->") return if_then_else(t.arg(0), t.arg(1), std::nullopt);
      if (f == "=") return unify_and_succeed(t.arg(0), t.arg(1));
      if (f == "\\=") return test(!unify(t.arg(0), t.arg(1), occurs()));
      if (f == "==") return test(t.arg(0) == t.arg(1));
      if (f == "\\==") return test(t.arg(0) != t.arg(1));
      if (f == "@<") return cmp([](int c) { return c < 0; });
      if (f == "@>") return cmp([](int c) { return c > 0; });
      if (f == "@=<") return cmp([](int c) { return c <= 0; });
      if (f == "@>=") return cmp([](int c) { return c >= 0; });
      if (f == "is") return unify_and_succeed(t.arg(0), Term::integer(eval_arith(t.arg(1))));
      if (f == "=:=") return arith([](auto x, auto y) { return x == y; });
      if (f == "=\\=") return arith([](auto x, auto y) { return x != y; });
      if (f == "<") return arith([](auto x, auto y) { return x < y; });
      if (f == ">") return arith([](auto x, auto y) { return x > y; });
      if (f == "=<") return arith([](auto x, auto y) { return x <= y; });
      if (f == ">=") return arith([](auto x, auto y) { return x >= y; });
      if (f == "=..") return univ_builtin();
      if (f == "copy_term") {
        Substitution ren;
        return unify_and_succeed(rename(t.arg(0), *ctx.supply, ren), t.arg(1));
      }
      if (f == "clause") return clause_builtin();
    }
    if (n == 3) {
      if (f == "findall" || f == "bagof" || f == "setof") return collect(f);
      if (f == "functor") return functor_builtin();
      if (f == "arg") return arg_builtin();
    }
  }
};

bool first_arg_compatible(const Term& goal, const Term& head) {
  if (!goal.is_compound()) return true;
  const Term& a = goal.arg(0);
  const Term& b = head.arg(0);
  if (a.is_var() || b.is_var()) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_int()) return a.value() == b.value();
  if (a.name() != b.name()) return false;
  return a.arity() == b.arity();
}

}  // namespace

Expansion detail::expand(const Context& ctx, const State& s, std::size_t barrier) {
  Expansion out;
  const GoalCell& g = *s.goals;
  const Term& goal = g.goal;
  if (goal.is_var()) throw InstantiationError("unbound goal");
  if (!goal.is_callable()) throw TypeError("callable expected, found " + to_string(goal));
  PredKey key = PredKey::of(goal);

  if (is_builtin(key)) {
    Builtins{ctx, s, g, barrier, out}.run();
    return out;
  }

  out.user_call = true;
  if (ctx.options.abducibles.count(key)) {
    if (ctx.under_negation) throw ProgramError("cannot abduce under negation: " + to_string(goal));
    if (!goal.is_ground()) throw InstantiationError("abducible goal is not ground: " + to_string(goal));
    State c;
    c.goals = g.next;
    c.answer = s.answer;
    c.residue = s.residue;
    if (std::find(c.residue.begin(), c.residue.end(), goal) == c.residue.end()) c.residue.push_back(goal);
    c.depth = s.depth + 1;
    c.log = std::make_shared<const LogCell>(LogCell{goal, ProofTree::Source::Abduced, 0, 0, {}, s.log});
    out.children.push_back(std::move(c));
    return out;
  }

  const Program& p = *ctx.program;
  if (!p.defines(key)) {
    if (ctx.options.undefined_is_error) throw ExistenceError(key.str());
    return out;
  }
  for (std::size_t idx : p.clauses_for(key)) {
    const Clause& cl = p.clauses()[idx];
    if (!first_arg_compatible(goal, cl.head.front())) continue;
    Substitution ren;
    Term head = rename(cl.head.front(), *ctx.supply, ren);
    auto theta = unify(goal, head, ctx.options.occurs_check);
    if (!theta) continue;
    std::vector<Term> body;
    body.reserve(cl.body.size());
    for (const Term& b : cl.body) body.push_back(theta->apply(rename(b, *ctx.supply, ren)));

    bool touches_old = false;
    for (const auto& [id, bnd] : *theta) {
      bool fresh = false;
      for (const auto& [rid, rb] : ren) fresh = fresh || rb.value.var_id() == id;
      if (!fresh) {
        touches_old = true;
        break;
      }
    }
    State c;
    GoalList rest = touches_old ? apply_goals(*theta, g.next) : g.next;
    if (ctx.options.trace && ctx.strategy.kind != Strategy::Kind::BreadthFirst)
      rest = std::make_shared<const GoalCell>(
          GoalCell{GoalCell::Kind::Exit, theta->apply(goal), 0, g.call_depth, rest});
    c.goals = push_goals(body, barrier, g.call_depth + 1, rest);
    c.answer = touches_old ? theta->apply(s.answer) : s.answer;
    c.residue = s.residue;
    c.depth = s.depth + 1;
    c.log = std::make_shared<const LogCell>(
        LogCell{goal, ProofTree::Source::Clause, idx, body.size(), std::move(*theta), s.log});
    out.children.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Solver

struct Solver::Impl {
  std::shared_ptr<Context> ctx;
  std::vector<Term> query_vars;
  std::size_t goal_count;
  std::unique_ptr<Stream> stream;
};

namespace {

std::vector<Term> named_vars(const std::vector<Term>& goals) {
  std::vector<Term> vars;
  for (const Term& g : goals) collect_variables(g, vars);
  std::vector<Term> out;
  for (const Term& v : vars)
    if (!v.name().empty() && v.name()[0] != '_') out.push_back(v);
  return out;
}

}  // namespace

Solver::Solver(std::shared_ptr<const Program> program, std::vector<Term> goals, Strategy strategy,
               EngineLimits limits, EngineOptions options)
    : impl_(std::make_unique<Impl>()) {
  if (strategy.kind != Strategy::Kind::DepthFirst) detail::reject_cut(*program, goals);
  auto ctx = std::make_shared<Context>();
  ctx->program = std::move(program);
  ctx->strategy = strategy;
  ctx->limits = limits;
  ctx->options = std::move(options);
  ctx->supply = std::make_shared<VarSupply>();
  ctx->nodes = std::make_shared<std::size_t>(0);
  impl_->ctx = ctx;
  impl_->query_vars = named_vars(goals);
  impl_->goal_count = goals.size();
  impl_->stream =
      std::make_unique<Stream>(ctx, make_root(goals, Term::compound("$answer", impl_->query_vars)));
}

Solver::Solver(const Program& program, std::vector<Term> goals, Strategy strategy, EngineLimits limits,
               EngineOptions options)
    : Solver(std::make_shared<const Program>(program), std::move(goals), strategy, limits, std::move(options)) {}

Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

std::optional<Answer> Solver::next() {
  auto s = impl_->stream->next();
  if (!s) return std::nullopt;
  Answer a;
  a.query_vars = impl_->query_vars;
  for (std::size_t i = 0; i < a.query_vars.size(); ++i) a.bindings.bind(a.query_vars[i], s->answer.arg(i));
  a.residue = s->residue;
  a.depth = s->depth;
  a.log = s->log;
  a.goal_count = impl_->goal_count;
  return a;
}

StreamEnd Solver::end() const { return impl_->stream->end(); }
std::size_t Solver::nodes() const { return *impl_->ctx->nodes; }

std::string format_bindings(const Answer& a) {
  std::string out;
  for (const Term& v : a.query_vars) {
    const Term* val = a.bindings.lookup(v.var_id());
    if (!val) continue;
    if (!out.empty()) out += ", ";
    out += v.name() + " = " + write_term(*val, OperatorTable::standard(), WriteOptions{}, 699);
  }
  return out.empty() ? "true" : out;
}

SolveResult solve_all(const Program& p, const std::vector<Term>& goals, Strategy s, EngineLimits lim,
                      EngineOptions opts, std::optional<std::size_t> max_answers) {
  Solver solver(p, goals, s, lim, std::move(opts));
  SolveResult r;
  while (!max_answers || r.answers.size() < *max_answers) {
    auto a = solver.next();
    if (!a) {
      r.end = solver.end();
      return r;
    }
    r.answers.push_back(std::move(*a));
  }
  r.end = StreamEnd::None;
  return r;
}

std::optional<ProofTree> proof_tree(const Program& p, const std::vector<Term>& goals, Strategy s,
                                    EngineLimits lim, EngineOptions opts) {
  Solver solver(p, goals, s, lim, std::move(opts));
  auto a = solver.next();
  if (!a) return std::nullopt;
  return a->proof();
}

NafResult naf(const Program& p, const std::vector<Term>& goals, Strategy s, EngineLimits lim, EngineOptions opts) {
  for (const Term& g : goals)
    if (!g.is_ground()) throw InstantiationError("negated goal is not ground: " + to_string(g));
  Solver solver(p, goals, s, lim, std::move(opts));
  if (solver.next()) return NafResult::Failure;
  if (solver.end() == StreamEnd::ResourcesExhausted) throw ResourceError();
  return NafResult::Success;
}

std::optional<Term> collect(const Program& p, CollectKind kind, const Term& templ, const std::vector<Term>& goals,
                            EngineLimits lim, EngineOptions opts) {
  static const char* names[] = {"findall", "bagof", "setof"};
  Term result = Term::var("Result");
  Term call = Term::compound(names[static_cast<int>(kind)], {templ, conjunction(goals), result});
  Solver solver(p, {call}, Strategy::depth_first(), lim, std::move(opts));
  auto a = solver.next();
  if (!a) {
    if (solver.end() == StreamEnd::ResourcesExhausted) throw ResourceError();
    return std::nullopt;
  }
  return a->bindings.apply(result);
}

// ---------------------------------------------------------------------------
// Proof trees

namespace {

struct Step {
  const LogCell* cell;
  Term atom;
};

ProofTree build_proof(const std::vector<Step>& steps, std::size_t& pos) {
  const Step& st = steps.at(pos++);
  ProofTree t;
  t.atom = st.atom;
  t.source = st.cell->source;
  t.clause = st.cell->clause;
  for (std::size_t i = 0; i < st.cell->n_children; ++i) t.children.push_back(build_proof(steps, pos));
  return t;
}

}  // namespace

std::vector<ProofTree> Answer::proofs() const {
  std::vector<const LogCell*> cells;
  for (const LogCell* c = log.get(); c; c = c->prev.get()) cells.push_back(c);
  std::reverse(cells.begin(), cells.end());
  std::vector<Step> steps(cells.size());
  Substitution later;
  for (std::size_t i = cells.size(); i-- > 0;) {
    Term own = cells[i]->theta.apply(cells[i]->atom);
    steps[i] = Step{cells[i], later.apply(own)};
    later = compose(cells[i]->theta, later);
  }
  std::vector<ProofTree> out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < goal_count && pos < steps.size(); ++i) out.push_back(build_proof(steps, pos));
  return out;
}

ProofTree Answer::proof() const {
  std::vector<ProofTree> ps = proofs();
  if (ps.size() == 1) return ps.front();
  ProofTree root;
  root.atom = Term::atom("true");
  std::vector<Term> atoms;
  for (const ProofTree& p : ps) atoms.push_back(p.atom);
  if (!atoms.empty()) root.atom = conjunction(atoms);
  root.children = std::move(ps);
  return root;
}

}  // namespace slog
