#include "simplylog/reason.hpp"

#include <algorithm>

#include "simplylog/error.hpp"
#include "simplylog/reader.hpp"

namespace slog {

namespace {

struct Edge {
  PredKey from, to;
  bool negative;
};

bool is_call(const Term& t, const char* name, std::size_t arity) {
  return t.is_compound() ? t.arity() == arity && t.name() == name : arity == 0 && t.is_atom() && t.name() == name;
}

void body_edges(const PredKey& head, const Term& g, bool negative, std::vector<Edge>& out) {
  if (g.is_var() || !g.is_callable()) return;
  if (is_call(g, ",", 2) || is_call(g, ";", 2) || is_call(g, "->", 2)) {
    body_edges(head, g.arg(0), negative, out);
    body_edges(head, g.arg(1), negative, out);
    return;
  }
  if (is_call(g, "call", 1)) return body_edges(head, g.arg(0), negative, out);
  if (is_call(g, "\\+", 1) || is_call(g, "not", 1)) return body_edges(head, g.arg(0), true, out);
  if (is_call(g, "findall", 3) || is_call(g, "bagof", 3) || is_call(g, "setof", 3)) {
    Term inner = g.arg(1);
    while (is_call(inner, "^", 2)) inner = inner.arg(1);
    return body_edges(head, inner, true, out);
  }
  PredKey k = PredKey::of(g);
  if (is_builtin(k)) return;
  out.push_back({head, k, negative});
}

std::vector<Term> term_vars(const std::vector<Term>& ts) {
  std::vector<Term> vs;
  for (const Term& t : ts) collect_variables(t, vs);
  return vs;
}

EngineOptions quiet_options() {
  EngineOptions o;
  o.undefined_is_error = false;
  return o;
}

bool derivable(const Program& p, const std::vector<Term>& goals, EngineLimits lim) {
  if (goals.empty()) return true;
  return !solve_all(p, goals, Strategy::depth_first(), lim, quiet_options(), 1).answers.empty();
}

Program with_delta(const AbductionSpec& spec, const Explanation& delta) {
  Program p = spec.program;
  for (const PredKey& k : spec.abducibles) p.declare(k);
  for (const Term& a : delta) p.add(Clause::fact(a));
  return p;
}

void add_indicators(const Term& ind, std::set<PredKey>& out) {
  if (is_call(ind, ",", 2)) {
    add_indicators(ind.arg(0), out);
    add_indicators(ind.arg(1), out);
    return;
  }
  if (!(is_call(ind, "/", 2) && ind.arg(0).is_atom() && ind.arg(1).is_int() && ind.arg(1).value() >= 0))
    throw ProgramError("bad predicate indicator: " + to_string(ind));
  out.insert({ind.arg(0).name(), static_cast<std::size_t>(ind.arg(1).value())});
}

ParsedProgram parse_or_throw(std::string_view text, const std::string& file) {
  ParsedProgram pp = parse_program(text, file);
  if (!pp.ok()) throw pp.errors.front();
  return pp;
}

std::string where(const SourceClause& sc) {
  return sc.file.empty() ? "" : sc.file + ":" + std::to_string(sc.line) + ": ";
}

// Answer bindings skip variables whose names start with an underscore.
Term rename_visible(const Term& t, std::size_t& counter, Substitution& ren) {
  for (const Term& v : variables_of(t))
    if (!ren.binds(v)) ren.bind(v, Term::var("D" + std::to_string(++counter)));
  return ren.apply(t);
}

Term exception_head(const DefaultRule& r) {
  std::vector<Term> goals{r.conclusion};
  goals.insert(goals.end(), r.prerequisite.begin(), r.prerequisite.end());
  return Term::compound("$exc_" + r.name, term_vars(goals));
}

}  // namespace

std::optional<std::map<PredKey, std::size_t>> stratify(const Program& p) {
  std::vector<Edge> edges;
  std::map<PredKey, std::size_t> strata;
  for (const Clause& c : p.clauses()) {
    for (const Term& h : c.head) {
      PredKey hk = PredKey::of(h);
      strata.emplace(hk, 0);
      for (const Term& b : c.body) body_edges(hk, b, false, edges);
    }
  }
  for (const PredKey& k : p.declared()) strata.emplace(k, 0);
  for (const Edge& e : edges) strata.emplace(e.to, 0);
  const std::size_t limit = strata.size();
  for (bool changed = true; changed;) {
    changed = false;
    for (const Edge& e : edges) {
      std::size_t need = strata[e.to] + (e.negative ? 1 : 0);
      if (strata[e.from] < need) {
        strata[e.from] = need;
        if (need > limit) return std::nullopt;
        changed = true;
      }
    }
  }
  return strata;
}

// ---------------------------------------------------------------------------
// Abduction

void AbductionSpec::validate() const {
  for (const PredKey& k : abducibles)
    if (!program.clauses_for(k).empty()) throw ProgramError("abducible " + k.str() + " has defining clauses");
}

AbductionSpec load_abduction_spec(std::string_view text, const std::string& file) {
  ParsedProgram pp = parse_or_throw(text, file);
  AbductionSpec spec;
  std::vector<SourceClause> rest;
  for (const SourceClause& sc : pp.clauses) {
    if (sc.kind == ClauseKind::Directive) {
      const Term& d = sc.term.arg(0);
      if (d.is_compound() && d.name() == "abducible") {
        for (std::size_t i = 0; i < d.arity(); ++i) add_indicators(d.arg(i), spec.abducibles);
        continue;
      }
      if (is_call(d, "constraint", 1)) {
        spec.constraints.push_back(conjuncts(d.arg(0)));
        continue;
      }
    }
    rest.push_back(sc);
  }
  spec.program = consult({}, rest);
  spec.validate();
  return spec;
}

bool violates_constraints(const AbductionSpec& spec, const Explanation& delta, EngineLimits lim) {
  if (spec.constraints.empty()) return false;
  Program p = with_delta(spec, delta);
  for (const auto& body : spec.constraints)
    if (derivable(p, body, lim)) return true;
  return false;
}

bool replays(const AbductionSpec& spec, const std::vector<Term>& goal, const Explanation& delta, EngineLimits lim) {
  for (const Term& a : delta)
    if (!a.is_ground() || !spec.abducibles.count(PredKey::of(a))) return false;
  return derivable(with_delta(spec, delta), goal, lim);
}

namespace {

EngineOptions abducing(const AbductionSpec& spec) {
  EngineOptions o;
  o.abducibles = spec.abducibles;
  return o;
}

std::shared_ptr<const Program> declared_program(const AbductionSpec& spec) {
  spec.validate();
  return std::make_shared<const Program>(with_delta(spec, {}));
}

}  // namespace

Abducer::Abducer(AbductionSpec spec, std::vector<Term> goal, EngineLimits lim, Strategy strategy)
    : spec_(std::make_shared<const AbductionSpec>(std::move(spec))),
      lim_(lim),
      solver_(declared_program(*spec_), std::move(goal), strategy, lim, abducing(*spec_)) {}

std::optional<Explanation> Abducer::next() {
  while (auto a = solver_.next()) {
    Explanation delta = a->residue;
    std::sort(delta.begin(), delta.end(), TermLess{});
    delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
    bool subsumed = std::any_of(returned_.begin(), returned_.end(), [&](const Explanation& r) {
      return std::includes(delta.begin(), delta.end(), r.begin(), r.end(), TermLess{});
    });
    if (subsumed || violates_constraints(*spec_, delta, lim_)) continue;
    returned_.push_back(delta);
    return delta;
  }
  return std::nullopt;
}

std::vector<Explanation> abduce(const AbductionSpec& spec, const std::vector<Term>& goal, EngineLimits lim,
                                std::optional<std::size_t> max) {
  Abducer ab(spec, goal, lim);
  std::vector<Explanation> out;
  while (!max || out.size() < *max) {
    auto d = ab.next();
    if (!d) break;
    out.push_back(std::move(*d));
  }
  std::vector<Explanation> kept;
  for (const Explanation& e : out) {
    bool strict_superset = std::any_of(out.begin(), out.end(), [&](const Explanation& f) {
      return f.size() < e.size() && std::includes(e.begin(), e.end(), f.begin(), f.end(), TermLess{});
    });
    if (!strict_superset) kept.push_back(e);
  }
  return kept;
}

std::string to_string(const Explanation& delta) {
  std::string s = "{";
  for (std::size_t i = 0; i < delta.size(); ++i) s += (i ? ", " : "") + to_string(delta[i]);
  return s + "}";
}

// ---------------------------------------------------------------------------
// Defaults

void validate(const DefaultTheory& t) {
  std::set<std::string> names;
  for (const DefaultRule& r : t.rules) {
    if (!names.insert(r.name).second) throw ProgramError("duplicate default name " + r.name);
    const Term& c = r.conclusion;
    if (c.is_var() || !c.is_callable() || is_builtin(PredKey::of(c)))
      throw ProgramError("default " + r.name + " must conclude a positive atom, not " + to_string(c));
  }
  for (const DefaultException& e : t.exceptions)
    if (!names.count(e.name)) throw ProgramError("exception for unknown default " + e.name);
  if (!stratify(compile_defaults(t))) throw ProgramError("default theory is not stratified");
}

DefaultTheory load_default_theory(std::string_view text, const std::string& file) {
  ParsedProgram pp = parse_or_throw(text, file);
  DefaultTheory t;
  std::vector<SourceClause> rest, exceptions;
  for (const SourceClause& sc : pp.clauses) {
    if (sc.kind == ClauseKind::Directive) {
      const Term& d = sc.term.arg(0);
      if (is_call(d, "default", 2)) {
        if (!d.arg(0).is_atom() || !is_call(d.arg(1), "=>", 2))
          throw ProgramError(where(sc) + "expected default(Name, Prereq => Conclusion)");
        t.rules.push_back({d.arg(0).name(), conjuncts(d.arg(1).arg(0)), d.arg(1).arg(1)});
        continue;
      }
      if (is_call(d, "exception", 2)) {
        if (!d.arg(0).is_atom()) throw ProgramError(where(sc) + "expected exception(Name, Condition)");
        exceptions.push_back(sc);
        continue;
      }
    }
    rest.push_back(sc);
  }
  for (const SourceClause& sc : exceptions) {
    const Term& d = sc.term.arg(0);
    const std::string& name = d.arg(0).name();
    auto r = std::find_if(t.rules.begin(), t.rules.end(), [&](const DefaultRule& x) { return x.name == name; });
    if (r == t.rules.end()) throw ProgramError(where(sc) + "exception for unknown default " + name);
    std::vector<Term> rule_terms{r->conclusion};
    rule_terms.insert(rule_terms.end(), r->prerequisite.begin(), r->prerequisite.end());
    std::vector<Term> cond_vars;
    collect_variables(d.arg(1), cond_vars);
    Substitution link;
    for (const Term& v : term_vars(rule_terms))
      for (const Term& w : cond_vars)
        if (w.name() == v.name() && w.name() != "_") link.bind(w, v);
    t.exceptions.push_back({name, conjuncts(link.apply(d.arg(1)))});
  }
  t.facts = consult({}, rest);
  validate(t);
  return t;
}

Program compile_defaults(const DefaultTheory& t) {
  Program p = t.facts;
  for (const DefaultRule& r : t.rules) {
    Term exc = exception_head(r);
    std::vector<Term> body = r.prerequisite;
    body.push_back(Term::compound("\\+", {exc}));
    p.add(Clause::rule(r.conclusion, body));
    p.declare(PredKey::of(exc));
    for (const DefaultException& e : t.exceptions)
      if (e.name == r.name) p.add(Clause::rule(exc, e.condition));
  }
  return p;
}

std::string to_string(DefaultStatus s) {
  switch (s) {
    case DefaultStatus::Holds: return "holds";
    case DefaultStatus::Blocked: return "blocked";
    case DefaultStatus::Underivable: return "underivable";
  }
  return "";
}

DefaultVerdict default_conclusions(const DefaultTheory& t, const Term& query, EngineLimits lim) {
  if (!query.is_ground()) throw InstantiationError("default query is not ground: " + to_string(query));
  Program compiled = compile_defaults(t);
  const std::string q = to_string(query);
  bool derived = derivable(compiled, {query}, lim);

  std::string holds_by, blocked_by, fired;
  std::size_t counter = 0;
  for (const DefaultRule& r : t.rules) {
    if (!holds_by.empty()) break;
    Substitution ren;
    Term concl = rename_visible(r.conclusion, counter, ren);
    auto theta = unify(query, concl, true);
    if (!theta) continue;
    std::vector<Term> prereq;
    for (const Term& g : r.prerequisite) prereq.push_back(theta->apply(rename_visible(g, counter, ren)));
    std::vector<std::vector<Term>> conds;
    for (const DefaultException& e : t.exceptions) {
      if (e.name != r.name) continue;
      std::vector<Term> c;
      for (const Term& g : e.condition) c.push_back(theta->apply(rename_visible(g, counter, ren)));
      conds.push_back(std::move(c));
    }
    SolveResult pre = prereq.empty() ? SolveResult{{Answer{}}, StreamEnd::Exhausted}
                                     : solve_all(compiled, prereq, Strategy::depth_first(), lim, quiet_options());
    for (const Answer& a : pre.answers) {
      std::string firing;
      for (const auto& c : conds) {
        std::vector<Term> inst = a.bindings.apply(c);
        SolveResult hit = solve_all(compiled, inst, Strategy::depth_first(), lim, quiet_options(), 1);
        if (!hit.answers.empty()) {
          firing = to_string(conjunction(hit.answers.front().bindings.apply(inst)));
          break;
        }
      }
      if (firing.empty()) {
        holds_by = r.name;
        break;
      }
      if (blocked_by.empty()) {
        blocked_by = r.name;
        fired = firing;
      }
    }
  }

  DefaultVerdict v;
  if (derived) {
    v.status = DefaultStatus::Holds;
    v.rule = holds_by;
    v.justification = holds_by.empty() ? q + " holds: it follows from the facts" : q + " holds by default " + holds_by;
  } else if (!blocked_by.empty()) {
    v.status = DefaultStatus::Blocked;
    v.rule = blocked_by;
    v.exception = fired;
    v.justification = q + " is blocked: default " + blocked_by + " applies but exception " + fired + " fires";
  } else {
    v.justification = q + " is underivable: no default applies";
  }
  return v;
}

}  // namespace slog
