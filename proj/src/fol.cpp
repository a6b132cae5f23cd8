#include "simplylog/fol.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "simplylog/error.hpp"
#include "simplylog/sld.hpp"

namespace slog {

std::string SkolemSupply::next() {
  for (;;) {
    std::string name = "sk" + std::to_string(++counter_);
    if (!avoid_.count(name)) return name;
  }
}

namespace {

void term_symbols(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) return;
  if (t.is_atom() || t.is_compound()) out.insert(t.name());
  for (const Term& a : t.args()) term_symbols(a, out);
}

void formula_symbols(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: term_symbols(f.term(), out); break;
    case Formula::Kind::Equals:
      term_symbols(f.term(), out);
      term_symbols(f.rhs(), out);
      break;
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: formula_symbols(f.body(), out); break;
    default:
      formula_symbols(f.left(), out);
      formula_symbols(f.right(), out);
  }
}

Formula rebuild(const Formula& f, const Formula& l, const Formula& r) {
  switch (f.kind()) {
    case Formula::Kind::And: return Formula::conj(l, r);
    case Formula::Kind::Or: return Formula::disj(l, r);
    case Formula::Kind::Implies: return Formula::implies(l, r);
    case Formula::Kind::Iff: return Formula::iff(l, r);
    default: return f;
  }
}

}  // namespace

std::set<std::string> symbols_of(const Formula& f) {
  std::set<std::string> out;
  formula_symbols(f, out);
  return out;
}

Formula eliminate_implications(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::Equals: return f;
    case K::Not: return Formula::negation(eliminate_implications(f.body()));
    case K::Forall: return Formula::forall(f.var(), eliminate_implications(f.body()));
    case K::Exists: return Formula::exists(f.var(), eliminate_implications(f.body()));
    case K::Implies:
      return Formula::disj(Formula::negation(eliminate_implications(f.left())), eliminate_implications(f.right()));
    case K::Iff: {
      Formula a = eliminate_implications(f.left()), b = eliminate_implications(f.right());
      return Formula::conj(Formula::disj(Formula::negation(a), b), Formula::disj(Formula::negation(b), a));
    }
    default: return rebuild(f, eliminate_implications(f.left()), eliminate_implications(f.right()));
  }
}

Formula negation_normal_form(const Formula& f) {
  using K = Formula::Kind;
  Formula g = eliminate_implications(f);
  std::function<Formula(const Formula&, bool)> nnf = [&](const Formula& x, bool neg) -> Formula {
    switch (x.kind()) {
      case K::Atom:
        if (neg && x.is_true()) return Formula::falsity();
        if (neg && x.is_false()) return Formula::truth();
        return neg ? Formula::negation(x) : x;
      case K::Equals: return neg ? Formula::negation(x) : x;
      case K::Not: return nnf(x.body(), !neg);
      case K::And:
        return neg ? Formula::disj(nnf(x.left(), true), nnf(x.right(), true))
                   : Formula::conj(nnf(x.left(), false), nnf(x.right(), false));
      case K::Or:
        return neg ? Formula::conj(nnf(x.left(), true), nnf(x.right(), true))
                   : Formula::disj(nnf(x.left(), false), nnf(x.right(), false));
      case K::Forall:
        return neg ? Formula::exists(x.var(), nnf(x.body(), true)) : Formula::forall(x.var(), nnf(x.body(), false));
      case K::Exists:
        return neg ? Formula::forall(x.var(), nnf(x.body(), true)) : Formula::exists(x.var(), nnf(x.body(), false));
      default: return x;  // eliminated above
    }
  };
  return nnf(g, false);
}

bool is_nnf(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::Equals: return true;
    case K::Not: return f.body().kind() == K::Atom || f.body().kind() == K::Equals;
    case K::Implies:
    case K::Iff: return false;
    case K::Forall:
    case K::Exists: return is_nnf(f.body());
    default: return is_nnf(f.left()) && is_nnf(f.right());
  }
}

Formula standardize_apart(const Formula& f) {
  using K = Formula::Kind;
  std::map<std::string, std::size_t> used;
  auto fresh = [&](const Term& v) {
    std::string base = v.name();
    std::string name = base;
    while (used.count(name)) name = base + std::to_string(used[base]++);
    used[name] = 1;
    return Term::var(name);
  };
  std::vector<Term> free = free_variables(f);
  for (const Term& v : free) used[v.name()] = 1;
  std::function<Formula(const Formula&)> walk = [&](const Formula& x) -> Formula {
    switch (x.kind()) {
      case K::Atom:
      case K::Equals: return x;
      case K::Not: return Formula::negation(walk(x.body()));
      case K::Forall:
      case K::Exists: {
        Term nv = fresh(x.var());
        Substitution s;
        s.bind(x.var(), nv);
        Formula body = walk(substitute(x.body(), s));
        return x.kind() == K::Forall ? Formula::forall(nv, body) : Formula::exists(nv, body);
      }
      default: return rebuild(x, walk(x.left()), walk(x.right()));
    }
  };
  Formula out = walk(f);
  for (std::size_t i = free.size(); i-- > 0;) out = Formula::forall(free[i], out);
  return out;
}

Formula skolemize(const Formula& f, SkolemSupply& supply) {
  using K = Formula::Kind;
  std::vector<Term> universals;
  std::function<Formula(const Formula&)> walk = [&](const Formula& x) -> Formula {
    switch (x.kind()) {
      case K::Forall: {
        universals.push_back(x.var());
        Formula body = walk(x.body());
        universals.pop_back();
        return Formula::forall(x.var(), body);
      }
      case K::Exists: {
        Substitution s;
        s.bind(x.var(), Term::compound(supply.next(), universals));
        return walk(substitute(x.body(), s));
      }
      case K::Not: return Formula::negation(walk(x.body()));
      case K::And:
      case K::Or:
      case K::Implies:
      case K::Iff: return rebuild(x, walk(x.left()), walk(x.right()));
      default: return x;
    }
  };
  return walk(f);
}

Formula drop_universals(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Forall: return drop_universals(f.body());
    case K::Exists: return Formula::exists(f.var(), drop_universals(f.body()));
    case K::Not: return Formula::negation(drop_universals(f.body()));
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff: return rebuild(f, drop_universals(f.left()), drop_universals(f.right()));
    default: return f;
  }
}

namespace {

struct Literal {
  bool positive;
  Term atom;
  bool operator==(const Literal&) const = default;
};
using LitClause = std::vector<Literal>;
using Cnf = std::vector<LitClause>;

Term atom_of(const Formula& f) {
  if (f.kind() == Formula::Kind::Equals) return Term::compound("=", {f.term(), f.rhs()});
  return f.term();
}

void add_literal(LitClause& c, const Literal& l) {
  if (std::find(c.begin(), c.end(), l) == c.end()) c.push_back(l);
}

/// Expects quantifier-free NNF.
Cnf cnf_of(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
      if (f.is_true()) return {};
      if (f.is_false()) return {LitClause{}};
      return {LitClause{{true, f.term()}}};
    case K::Equals: return {LitClause{{true, atom_of(f)}}};
    case K::Not: return {LitClause{{false, atom_of(f.body())}}};
    case K::And: {
      Cnf a = cnf_of(f.left()), b = cnf_of(f.right());
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case K::Or: {
      Cnf a = cnf_of(f.left()), b = cnf_of(f.right());
      Cnf out;
      for (const LitClause& x : a)
        for (const LitClause& y : b) {
          LitClause c = x;
          for (const Literal& l : y) add_literal(c, l);
          out.push_back(std::move(c));
        }
      return out;
    }
    default: throw ProgramError("clausal form: unexpected connective in " + f.str());
  }
}

}  // namespace

std::vector<Clause> to_clausal_form(const Formula& f, SkolemSupply& supply) {
  for (const std::string& s : symbols_of(f)) supply.avoid(s);
  Formula g = drop_universals(skolemize(standardize_apart(negation_normal_form(f)), supply));
  std::vector<Clause> out;
  for (const LitClause& lc : cnf_of(g)) {
    Clause c;
    for (const Literal& l : lc) (l.positive ? c.head : c.body).push_back(l.atom);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

std::vector<Clause> to_clausal_form(const Formula& f) {
  SkolemSupply supply;
  return to_clausal_form(f, supply);
}

// ---------------------------------------------------------------------------
// Completion and CWA

namespace {

bool is_negation(const Term& t) {
  return t.is_compound() && t.arity() == 1 && (t.name() == "\\+" || t.name() == "not");
}

Formula literal_formula(const Term& t) {
  if (is_negation(t)) return Formula::negation(literal_formula(t.arg(0)));
  if (t.is_compound() && t.name() == "=" && t.arity() == 2) return Formula::equals(t.arg(0), t.arg(1));
  if (t.is_atom() && t.name() == "true") return Formula::truth();
  if (t.is_atom() && (t.name() == "fail" || t.name() == "false")) return Formula::falsity();
  return Formula::atom(t);
}

/// User predicates of p in first-appearance order, looking inside negation.
std::vector<PredKey> user_predicates(const Program& p) {
  std::vector<PredKey> out;
  auto note = [&](const PredKey& k) {
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  };
  std::function<void(const Term&)> body_lit = [&](const Term& t) {
    if (is_negation(t)) return body_lit(t.arg(0));
    if (t.is_callable() && !is_builtin(PredKey::of(t))) note(PredKey::of(t));
  };
  for (const Clause& c : p.clauses()) {
    for (const Term& h : c.head) note(PredKey::of(h));
    for (const Term& b : c.body) body_lit(b);
  }
  for (const PredKey& k : p.declared()) note(k);
  return out;
}

Term apply_pred(const PredKey& k, const std::vector<Term>& args) {
  return k.arity == 0 ? Term::atom(k.name) : Term::compound(k.name, args);
}

void constants_and_functors(const Term& t, std::set<PredKey>& out) {
  if (t.is_var() || t.is_int()) return;
  out.insert(PredKey::of(t));
  for (const Term& a : t.args()) constants_and_functors(a, out);
}

std::vector<Term> fresh_vars(const std::string& prefix, std::size_t n) {
  std::vector<Term> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(Term::var(prefix + std::to_string(i)));
  return out;
}

Formula forall_all(const std::vector<Term>& vars, Formula body) {
  for (std::size_t i = vars.size(); i-- > 0;) body = Formula::forall(vars[i], body);
  return body;
}

std::vector<Formula> equality_theory(const Program& p) {
  std::set<PredKey> syms;
  for (const Clause& c : p.clauses())
    for (const auto* side : {&c.head, &c.body})
      for (const Term& lit : *side) {
        Term inner = is_negation(lit) ? lit.arg(0) : lit;
        for (const Term& a : inner.args()) constants_and_functors(a, syms);
      }
  std::vector<PredKey> fs(syms.begin(), syms.end());
  std::vector<Formula> out;
  // Distinct symbols never denote equal terms.
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      std::vector<Term> xs = fresh_vars("X", fs[i].arity), ys = fresh_vars("Y", fs[j].arity);
      std::vector<Term> all = xs;
      all.insert(all.end(), ys.begin(), ys.end());
      out.push_back(forall_all(all, Formula::negation(Formula::equals(apply_pred(fs[i], xs), apply_pred(fs[j], ys)))));
    }
  for (const PredKey& f : fs) {
    if (f.arity == 0) continue;
    std::vector<Term> xs = fresh_vars("X", f.arity), ys = fresh_vars("Y", f.arity);
    std::vector<Formula> eqs;
    for (std::size_t k = 0; k < f.arity; ++k) eqs.push_back(Formula::equals(xs[k], ys[k]));
    std::vector<Term> all = xs;
    all.insert(all.end(), ys.begin(), ys.end());
    // Injectivity.
    out.push_back(forall_all(all, Formula::implies(Formula::equals(apply_pred(f, xs), apply_pred(f, ys)),
                                                   Formula::conj_all(eqs))));
    // No term equals a term containing it.
    for (std::size_t k = 0; k < f.arity; ++k)
      out.push_back(forall_all(xs, Formula::negation(Formula::equals(xs[k], apply_pred(f, xs)))));
  }
  return out;
}

}  // namespace

Completion predicate_completion(const Program& p) {
  for (const Clause& c : p.clauses())
    if (!c.is_definite()) throw ProgramError("completion needs a definite programme: " + to_string(c));
  Completion out;
  for (const PredKey& key : user_predicates(p)) {
    std::vector<Term> xs = fresh_vars("X", key.arity);
    Term head_atom = apply_pred(key, xs);
    std::vector<Formula> disjuncts;
    for (std::size_t idx : p.clauses_for(key)) {
      const Clause& c = p.clauses()[idx];
      // Keep source names but give the clause its own variables.
      Substitution ren;
      for (const Term& v : variables_of(c)) ren.bind(v, Term::var(v.name()));
      Clause cl = apply(ren, c);
      const Term& h = cl.head.front();

      Substitution simp;
      std::vector<Formula> conj;
      for (std::size_t k = 0; k < key.arity; ++k) {
        const Term& a = h.arg(k);
        bool distinct_var = a.is_var() && !simp.binds(a);
        for (std::size_t j = 0; j < key.arity && distinct_var; ++j)
          if (j != k && occurs_in(a, h.arg(j))) distinct_var = false;
        if (distinct_var)
          simp.bind(a, xs[k]);
        else
          conj.push_back(Formula::equals(xs[k], a));
      }
      std::vector<Formula> parts;
      for (const Formula& e : conj) parts.push_back(Formula::equals(simp.apply(e.term()), simp.apply(e.rhs())));
      for (const Term& b : cl.body) parts.push_back(literal_formula(simp.apply(b)));
      Formula body = parts.empty() ? Formula::truth() : Formula::conj_all(parts);
      std::vector<Term> local;
      for (const Term& v : variables_of(cl))
        if (!simp.binds(v)) local.push_back(v);
      for (std::size_t i = local.size(); i-- > 0;) body = Formula::exists(local[i], body);
      disjuncts.push_back(body);
    }
    Formula def = disjuncts.empty() ? Formula::negation(Formula::atom(head_atom))
                                    : Formula::iff(Formula::atom(head_atom), Formula::disj_all(disjuncts));
    out.definitions.push_back(forall_all(xs, def));
  }
  out.equality_theory = equality_theory(p);
  return out;
}

TermSet cwa_consequences(const Program& p, std::size_t depth) {
  HerbrandInterpretation m = least_herbrand_model(p, depth);
  TermSet u = herbrand_universe(p, depth);
  std::vector<Term> dom(u.begin(), u.end());
  TermSet out;
  for (const PredKey& key : user_predicates(p)) {
    std::vector<std::size_t> idx(key.arity, 0);
    for (;;) {
      std::vector<Term> args;
      for (std::size_t i : idx) args.push_back(dom[i]);
      Term atom = apply_pred(key, args);
      if (!m.holds(atom)) out.insert(atom);
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == dom.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  return out;
}

}  // namespace slog
