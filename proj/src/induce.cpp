#include "simplylog/induce.hpp"

#include <algorithm>
#include <set>

#include "simplylog/error.hpp"
#include "simplylog/reader.hpp"

namespace slog {

namespace {

bool negated(const Term& t) { return t.is_compound() && t.arity() == 1 && (t.name() == "\\+" || t.name() == "not"); }

// Matches `lits` (in order) into `pool`, extending theta; backtracks.
bool match_into(const std::vector<Term>& lits, std::size_t i, const std::vector<Term>& pool, Substitution& theta) {
  if (i == lits.size()) return true;
  for (const Term& target : pool) {
    auto m = match(lits[i], target, theta);
    if (!m) continue;
    Substitution saved = theta;
    theta = std::move(*m);
    if (match_into(lits, i + 1, pool, theta)) return true;
    theta = std::move(saved);
  }
  return false;
}

void collect_constants(const Term& t, std::set<Term, TermLess>& out) {
  if (t.is_atomic()) out.insert(t);
  if (t.is_compound())
    for (std::size_t i = 0; i < t.arity(); ++i) collect_constants(t.arg(i), out);
}

}  // namespace

std::optional<Substitution> theta_subsumes(const Clause& c, const Clause& d) {
  VarSupply supply;
  Substitution ren;
  Clause cr{{}, {}};
  for (const Term& h : c.head) cr.head.push_back(rename(h, supply, ren));
  for (const Term& b : c.body) cr.body.push_back(rename(b, supply, ren));
  Substitution theta;
  if (!match_into(cr.head, 0, d.head, theta)) return std::nullopt;
  if (!match_into(cr.body, 0, d.body, theta)) return std::nullopt;
  Substitution out;
  for (const Term& v : variables_of(c)) out.bind(v, theta.apply(ren.apply(v)));
  return out;
}

bool compatible_literals(const Term& a, const Term& b) {
  if (negated(a) != negated(b)) return false;
  if (negated(a)) return compatible_literals(a.arg(0), b.arg(0));
  if (!a.is_callable() || !b.is_callable()) return false;
  return PredKey::of(a) == PredKey::of(b);
}

Clause reduce_clause(const Clause& c) {
  Clause cur = c;
  for (std::size_t i = 0; i < cur.body.size();) {
    Clause without = cur;
    without.body.erase(without.body.begin() + static_cast<std::ptrdiff_t>(i));
    if (theta_subsumes(cur, without))
      cur = std::move(without);
    else
      ++i;
  }
  return cur;
}

Clause lgg_clauses(const Clause& c1, const Clause& c2) {
  if (!c1.is_definite() || !c2.is_definite() || !compatible_literals(c1.head.front(), c2.head.front()))
    throw ProgramError("lgg needs definite clauses with the same head predicate: " + to_string(c1) + " and " +
                       to_string(c2));
  VarSupply supply;
  AntiUnifier au(supply);
  Clause g{{au.generalize(c1.head.front(), c2.head.front())}, {}};
  for (const Term& a : c1.body)
    for (const Term& b : c2.body) {
      if (!compatible_literals(a, b)) continue;
      Term l = au.generalize(a, b);
      if (std::find(g.body.begin(), g.body.end(), l) == g.body.end()) g.body.push_back(l);
    }
  return reduce_clause(g);
}

Generality generality_check(const Clause& c, const Clause& d) {
  bool cd = theta_subsumes(c, d).has_value();
  bool dc = theta_subsumes(d, c).has_value();
  if (cd && dc) return Generality::Equivalent;
  if (cd) return Generality::MoreGeneral;
  if (dc) return Generality::MoreSpecific;
  return Generality::Incomparable;
}

std::string to_string(Generality g) {
  switch (g) {
    case Generality::MoreGeneral: return "more-general";
    case Generality::MoreSpecific: return "more-specific";
    case Generality::Equivalent: return "equivalent";
    case Generality::Incomparable: return "incomparable";
  }
  return "";
}

void ILPTask::validate() const {
  auto check = [&](const Term& e, const char* kind) {
    if (!e.is_ground()) throw ProgramError(std::string(kind) + " example is not ground: " + to_string(e));
    if (!e.is_callable() || PredKey::of(e) != target)
      throw ProgramError(std::string(kind) + " example " + to_string(e) + " is not about " + target.str());
  };
  for (const Term& e : positives) check(e, "positive");
  for (const Term& e : negatives) check(e, "negative");
  for (const Term& e : positives)
    if (std::find(negatives.begin(), negatives.end(), e) != negatives.end())
      throw ProgramError("example " + to_string(e) + " is both positive and negative");
  if (!background.clauses_for(target).empty()) throw ProgramError("background defines the target " + target.str());
}

ILPTask load_ilp_task(std::string_view text, const std::string& file) {
  ParsedProgram pp = parse_program(text, file);
  if (!pp.ok()) throw pp.errors.front();
  ILPTask task;
  std::vector<SourceClause> rest;
  for (const SourceClause& sc : pp.clauses) {
    if (sc.kind == ClauseKind::Directive) {
      const Term& d = sc.term.arg(0);
      if (d.is_compound() && d.arity() == 1 && (d.name() == "pos" || d.name() == "neg")) {
        (d.name() == "pos" ? task.positives : task.negatives).push_back(d.arg(0));
        continue;
      }
    }
    rest.push_back(sc);
  }
  task.background = consult({}, rest);
  if (task.positives.empty()) throw ProgramError("task has no positive examples");
  if (!task.positives.front().is_callable()) throw ProgramError("example is not an atom");
  task.target = PredKey::of(task.positives.front());
  task.validate();
  return task;
}

Clause saturate(const ILPTask& task, const Term& example) {
  std::set<Term, TermLess> consts;
  collect_constants(example, consts);
  Clause c = Clause::fact(example);
  for (const Clause& bc : task.background.clauses()) {
    if (c.body.size() >= task.max_body) break;
    if (!bc.body.empty() || !bc.is_ground()) continue;
    std::set<Term, TermLess> mine;
    collect_constants(bc.head.front(), mine);
    bool shares = std::any_of(mine.begin(), mine.end(), [&](const Term& k) { return consts.count(k) != 0; });
    if (shares && std::find(c.body.begin(), c.body.end(), bc.head.front()) == c.body.end())
      c.body.push_back(bc.head.front());
  }
  return c;
}

bool covers(const ILPTask& task, const std::vector<Clause>& hypothesis, const Term& atom, EngineLimits lim) {
  Program p = task.background;
  for (const Clause& c : hypothesis) p.add(c);
  EngineOptions opts;
  opts.undefined_is_error = false;
  return !solve_all(p, {atom}, Strategy::depth_first(), lim, opts, 1).answers.empty();
}

std::optional<std::vector<Clause>> induce(const ILPTask& task, EngineLimits lim) {
  task.validate();
  auto consistent = [&](const std::vector<Clause>& h) {
    return std::none_of(task.negatives.begin(), task.negatives.end(),
                        [&](const Term& n) { return covers(task, h, n, lim); });
  };
  std::vector<Clause> h;
  for (const Term& e : task.positives) {
    if (!h.empty() && covers(task, h, e, lim)) continue;
    Clause bottom = saturate(task, e);
    if (!h.empty()) {
      Clause g = lgg_clauses(h.back(), bottom);
      if (g.body.size() > task.max_body) g.body.resize(task.max_body);
      std::vector<Clause> trial = h;
      trial.back() = g;
      if (consistent(trial)) {
        h = std::move(trial);
        continue;
      }
    }
    h.push_back(bottom);
  }
  if (h.size() > task.max_clauses || !consistent(h)) return std::nullopt;
  for (const Term& e : task.positives)
    if (!covers(task, h, e, lim)) return std::nullopt;
  return h;
}

std::string clause_text(const Clause& c) {
  Substitution names;
  std::size_t i = 0;
  for (const Term& v : variables_of(c)) {
    std::string n(1, static_cast<char>('A' + i % 26));
    if (i >= 26) n += std::to_string(i / 26);
    names.bind(v, Term::var(n));
    ++i;
  }
  return to_string(apply(names, c));
}

}  // namespace slog
