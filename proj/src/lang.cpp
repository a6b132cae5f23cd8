#include "simplylog/lang.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "simplylog/reader.hpp"

namespace slog {

namespace {

bool is_control(const Term& t, const char* name, std::size_t arity) {
  return t.is_compound() && t.arity() == arity && t.name() == name;
}

void flatten_rhs(const Term& t, std::vector<GrammarItem>& out) {
  if (t.is_var()) throw ProgramError("variable in grammar rule body");
  if (is_control(t, ",", 2)) {
    flatten_rhs(t.arg(0), out);
    flatten_rhs(t.arg(1), out);
    return;
  }
  if (is_control(t, ";", 2) || is_control(t, "|", 2) || is_control(t, "->", 2))
    throw ProgramError("disjunction in grammar rule body; write separate rules");
  if (t.is_nil() || t.is_cons()) {
    auto items = t.list_items();
    if (!items) throw ProgramError("terminal list is not a proper list: " + to_string(t));
    for (const Term& w : *items)
      if (!w.is_atomic()) throw ProgramError("terminal is not an atom: " + to_string(w));
    out.push_back({GrammarItem::Kind::Terminals, t});
    return;
  }
  if (is_control(t, "{}", 1)) {
    out.push_back({GrammarItem::Kind::Goal, t.arg(0)});
    return;
  }
  if (!t.is_callable()) throw ProgramError("bad grammar body element: " + to_string(t));
  out.push_back({GrammarItem::Kind::NonTerminal, t});
}

Term extend(const Term& nt, const Term& s0, const Term& s) {
  std::vector<Term> args;
  if (nt.is_compound()) args = nt.args();
  args.push_back(s0);
  args.push_back(s);
  return Term::compound(nt.name(), args);
}

Term strip_threading(const Term& t) {
  if (!t.is_compound() || t.arity() < 2) return t;
  if (t.arity() == 2) return Term::atom(t.name());
  return Term::compound(t.name(), std::vector<Term>(t.args().begin(), t.args().end() - 2));
}

Term word_list(const Sentence& s, Term tail = Term::nil()) {
  std::vector<Term> items;
  for (const std::string& w : s) items.push_back(Term::atom(w));
  return Term::list(items, tail);
}

std::set<PredKey> translated_keys(const Grammar& g) {
  std::set<PredKey> out;
  for (const GrammarRule& r : g.rules) {
    PredKey k = PredKey::of(r.lhs);
    out.insert({k.name, k.arity + 2});
  }
  return out;
}

ParseTree to_parse_tree(const ProofTree& p, const std::set<PredKey>& grammar) {
  ParseTree t;
  t.label = strip_threading(p.atom);
  std::size_t n = p.atom.arity();
  auto l0 = p.atom.arg(n - 2).list_items();
  auto l = p.atom.arg(n - 1).list_items();
  std::size_t consumed = (l0 && l && l0->size() >= l->size()) ? l0->size() - l->size() : 0;
  std::size_t pos = 0;
  auto words_until = [&](std::size_t end) {
    for (; pos < end && l0 && pos < l0->size(); ++pos) t.children.push_back(ParseTree{(*l0)[pos], true, {}});
  };
  for (const ProofTree& c : p.children) {
    if (c.source != ProofTree::Source::Clause || !grammar.count(PredKey::of(c.atom))) continue;
    std::size_t cn = c.atom.arity();
    auto c0 = c.atom.arg(cn - 2).list_items();
    if (!c0 || !l0 || c0->size() > l0->size()) continue;
    std::size_t start = l0->size() - c0->size();
    words_until(start);
    ParseTree sub = to_parse_tree(c, grammar);
    t.children.push_back(sub);
    auto c1 = c.atom.arg(cn - 1).list_items();
    if (c1) pos = l0->size() - c1->size();
  }
  words_until(consumed);
  return t;
}

void tree_string(const ParseTree& t, std::string& out) {
  if (t.word || t.children.empty()) {
    out += to_string(t.label);
    return;
  }
  out += to_string(t.label) + "(";
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) out += ",";
    tree_string(t.children[i], out);
  }
  out += ")";
}

}  // namespace

GrammarRule GrammarRule::from_term(const Term& t) {
  if (!is_control(t, "-->", 2)) throw ProgramError("not a grammar rule: " + to_string(t));
  GrammarRule r;
  r.lhs = t.arg(0);
  if (r.lhs.is_var() || !r.lhs.is_callable() || is_control(r.lhs, ",", 2))
    throw ProgramError("bad grammar rule head: " + to_string(r.lhs));
  flatten_rhs(t.arg(1), r.rhs);
  return r;
}

Clause dcg_translate(const GrammarRule& r) {
  int counter = 0;
  auto fresh = [&] { return Term::var("S" + std::to_string(counter++)); };
  Term start = fresh();
  Term cur = start;
  std::vector<Term> body;
  Substitution folded;  // threading variables fixed by terminal lists
  for (const GrammarItem& it : r.rhs) {
    switch (it.kind) {
      case GrammarItem::Kind::NonTerminal: {
        Term next = fresh();
        body.push_back(extend(it.term, cur, next));
        cur = next;
        break;
      }
      case GrammarItem::Kind::Terminals: {
        auto words = it.term.list_items();
        if (words->empty()) break;
        Term next = fresh();
        folded.bind(cur, Term::list(*words, next));
        cur = next;
        break;
      }
      case GrammarItem::Kind::Goal:
        for (const Term& g : conjuncts(it.term)) body.push_back(g);
        break;
    }
  }
  Term head = extend(r.lhs, start, cur);
  // Resolve the chain: a bound variable's list tail may itself be bound.
  for (std::size_t i = 0; i <= r.rhs.size(); ++i) {
    head = folded.apply(head);
    body = folded.apply(body);
  }
  return Clause::rule(head, body);
}

std::set<PredKey> Grammar::nonterminals() const {
  std::set<PredKey> out;
  for (const GrammarRule& r : rules) out.insert(PredKey::of(r.lhs));
  return out;
}

Grammar make_grammar(std::vector<GrammarRule> rules, const Program& helpers) {
  Grammar g;
  Program p = helpers;
  for (const GrammarRule& r : rules) p.add(dcg_translate(r));
  g.rules = std::move(rules);
  g.program = std::make_shared<const Program>(std::move(p));
  return g;
}

Grammar load_grammar(std::string_view text) {
  ParsedProgram parsed = parse_program(text);
  if (!parsed.ok()) throw parsed.errors.front();
  std::vector<GrammarRule> rules;
  Program helpers;
  for (const SourceClause& sc : parsed.clauses) {
    if (sc.kind == ClauseKind::DcgRule)
      rules.push_back(GrammarRule::from_term(sc.term));
    else if (sc.kind == ClauseKind::Clause)
      helpers.add(Clause::from_term(sc.term));
  }
  return make_grammar(std::move(rules), helpers);
}

std::string to_string(const ParseTree& t) {
  std::string out;
  tree_string(t, out);
  return out;
}

ParseOutcome parse(const Grammar& g, const Term& nt, const Sentence& s, EngineLimits lim, Strategy strategy) {
  std::set<PredKey> keys = translated_keys(g);
  Solver solver(g.program, {extend(nt, word_list(s), Term::nil())}, strategy, lim);
  ParseOutcome out;
  while (auto a = solver.next()) {
    ParseResult r;
    r.bindings = a->bindings;
    r.tree = to_parse_tree(a->proof(), keys);
    out.results.push_back(std::move(r));
  }
  out.end = solver.end();
  return out;
}

std::size_t count_parses(const Grammar& g, const Term& nt, const Sentence& s, EngineLimits lim) {
  Solver solver(g.program, {extend(nt, word_list(s), Term::nil())}, Strategy::depth_first(), lim);
  std::size_t n = 0;
  while (solver.next()) ++n;
  if (solver.end() == StreamEnd::ResourcesExhausted) throw ResourceError();
  return n;
}

std::vector<Sentence> generate(const Grammar& g, const Term& nt, std::size_t max_len, EngineLimits lim) {
  std::vector<Sentence> out;
  std::set<Sentence> seen;
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<Term> slots;
    for (std::size_t i = 0; i < len; ++i) slots.push_back(Term::var("W" + std::to_string(i + 1)));
    Term words = Term::list(slots);
    Solver solver(g.program, {extend(nt, words, Term::nil())}, Strategy::depth_first(), lim);
    while (auto a = solver.next()) {
      Term inst = a->bindings.apply(words);
      Sentence s;
      bool ok = true;
      std::vector<Term> items = *inst.list_items();
      for (const Term& w : items) {
        if (!w.is_atomic()) {
          ok = false;
          break;
        }
        s.push_back(w.is_atom() ? w.name() : std::to_string(w.value()));
      }
      if (ok && seen.insert(s).second) out.push_back(std::move(s));
    }
  }
  return out;
}

Sentence split_words(std::string_view text) {
  Sentence out;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) {
    while (!w.empty() && (w.back() == '?' || w.back() == '.' || w.back() == '!')) w.pop_back();
    if (!w.empty()) out.push_back(w);
  }
  return out;
}

std::string join_words(const Sentence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += " ";
    out += s[i];
  }
  return out;
}

Sentence longest_viable_prefix(const Grammar& g, const Term& nt, const Sentence& s) {
  EngineLimits lim;
  lim.max_depth = 64;
  lim.max_nodes = 100000;
  for (std::size_t k = s.size() + 1; k-- > 0;) {
    Sentence prefix(s.begin(), s.begin() + k);
    Term goal = extend(nt, word_list(prefix, Term::var("Rest")), Term::var("Left"));
    auto r = solve_all(*g.program, {goal}, Strategy::depth_first(), lim, {}, 1);
    if (!r.answers.empty()) return prefix;
  }
  return {};
}

// ---------------------------------------------------------------------------

KnowledgeStore KnowledgeStore::with(Clause c) const {
  KnowledgeStore k = *this;
  k.program_.add(std::move(c));
  return k;
}

const Grammar& agent_grammar() {
  static const Grammar g = load_grammar(R"(
statement(fact(P)) --> proper_noun(X), [is], property(X, P).
statement(rule(H, B)) --> [every], noun(X, B), [is], property(X, H).
question(yesno(P)) --> [is], proper_noun(X), property(X, P).
question(who(X, P)) --> [who, is], property(X, P).
property(X, P) --> noun(X, P).
property(X, P) --> [a], noun(X, P).
proper_noun(socrates) --> [socrates].
proper_noun(plato) --> [plato].
proper_noun(aristotle) --> [aristotle].
noun(X, human(X)) --> [human].
noun(X, mortal(X)) --> [mortal].
noun(X, immortal(X)) --> [immortal].
noun(X, philosopher(X)) --> [philosopher].
noun(X, greek(X)) --> [greek].
)");
  return g;
}

namespace {

/// Gives the variables of a told clause readable names.
Clause name_variables(const Clause& c) {
  Substitution s;
  int i = 0;
  for (const Term& v : variables_of(c)) {
    static const char* names[] = {"X", "Y", "Z"};
    std::string name = i < 3 ? names[i] : "V" + std::to_string(i + 1);
    s.bind(v, Term::var(name));
    ++i;
  }
  return apply(s, c);
}

std::optional<Term> meaning(const Term& nt, const Sentence& s) {
  EngineLimits lim;
  lim.max_depth = 64;
  Term m = Term::var("M");
  ParseOutcome r = parse(agent_grammar(), Term::compound(nt.name(), {m}), s, lim);
  if (r.results.empty()) return std::nullopt;
  return r.results.front().bindings.apply(m);
}

std::string rejection(const Term& nt, const Sentence& s) {
  Sentence p = longest_viable_prefix(agent_grammar(), Term::compound(nt.name(), {Term::var("M")}), s);
  return "not understood: \"" + join_words(s) + "\"; longest understood prefix: \"" + join_words(p) + "\"";
}

}  // namespace

TellResult qa_tell(const KnowledgeStore& k, const Sentence& s) {
  TellResult r;
  r.store = k;
  Term stmt = Term::atom("statement");
  auto m = meaning(stmt, s);
  if (!m) {
    r.message = rejection(stmt, s);
    return r;
  }
  Clause c = m->name() == "fact" ? Clause::fact(m->arg(0)) : Clause::rule(m->arg(0), {m->arg(1)});
  c = name_variables(c);
  r.accepted = true;
  r.added = c;
  r.store = k.with(c);
  return r;
}

AskResult qa_ask(const KnowledgeStore& k, const Sentence& s, EngineLimits lim) {
  AskResult r;
  Term q = Term::atom("question");
  auto m = meaning(q, s);
  if (!m) {
    r.kind = AskResult::Kind::Rejected;
    r.message = rejection(q, s);
    return r;
  }
  EngineOptions opts;
  opts.undefined_is_error = false;
  if (m->name() == "yesno") {
    auto res = solve_all(k.program(), {m->arg(0)}, Strategy::depth_first(), lim, opts, 1);
    r.kind = res.answers.empty() ? AskResult::Kind::NoAnswerFound : AskResult::Kind::Yes;
    return r;
  }
  Term x = Term::var("X");
  Substitution name;
  name.bind(m->arg(0), x);
  Term goal = name.apply(m->arg(1));
  auto res = solve_all(k.program(), {goal}, Strategy::depth_first(), lim, opts);
  std::set<std::string> seen;
  for (const Answer& a : res.answers) {
    Term fact = a.bindings.apply(goal);
    if (!fact.is_ground()) continue;
    auto sentences = generate(agent_grammar(), Term::compound("statement", {Term::compound("fact", {fact})}), 4);
    if (sentences.empty()) continue;
    std::string text = join_words(sentences.front());
    if (seen.insert(text).second) r.sentences.push_back(text);
  }
  r.kind = r.sentences.empty() ? AskResult::Kind::NoAnswerFound : AskResult::Kind::Answers;
  return r;
}

}  // namespace slog
