#include "simplylog/formula.hpp"

#include "simplylog/reader.hpp"

namespace slog {

Formula Formula::make(Kind k, Term t, Term r, std::vector<Formula> subs) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->term = std::move(t);
  n->rhs = std::move(r);
  n->subs = std::move(subs);
  return Formula(std::move(n));
}

Formula Formula::atom(Term a) { return make(Kind::Atom, std::move(a), Term(), {}); }
Formula Formula::equals(Term lhs, Term rhs) { return make(Kind::Equals, std::move(lhs), std::move(rhs), {}); }
Formula Formula::negation(Formula f) { return make(Kind::Not, Term(), Term(), {std::move(f)}); }
Formula Formula::conj(Formula a, Formula b) { return make(Kind::And, Term(), Term(), {std::move(a), std::move(b)}); }
Formula Formula::disj(Formula a, Formula b) { return make(Kind::Or, Term(), Term(), {std::move(a), std::move(b)}); }
Formula Formula::implies(Formula a, Formula b) {
  return make(Kind::Implies, Term(), Term(), {std::move(a), std::move(b)});
}
Formula Formula::iff(Formula a, Formula b) { return make(Kind::Iff, Term(), Term(), {std::move(a), std::move(b)}); }
Formula Formula::forall(Term var, Formula body) { return make(Kind::Forall, std::move(var), Term(), {std::move(body)}); }
Formula Formula::exists(Term var, Formula body) { return make(Kind::Exists, std::move(var), Term(), {std::move(body)}); }
Formula Formula::truth() { return atom(Term::atom("true")); }
Formula Formula::falsity() { return atom(Term::atom("false")); }

Formula Formula::conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return truth();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return falsity();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

Term Formula::to_term() const {
  switch (kind()) {
    case Kind::Atom: return term();
    case Kind::Equals: return Term::compound("=", {term(), rhs()});
    case Kind::Not: return Term::compound("not", {body().to_term()});
    case Kind::And: return Term::compound("and", {left().to_term(), right().to_term()});
    case Kind::Or: return Term::compound("or", {left().to_term(), right().to_term()});
    case Kind::Implies: return Term::compound("implies", {left().to_term(), right().to_term()});
    case Kind::Iff: return Term::compound("iff", {left().to_term(), right().to_term()});
    case Kind::Forall: return Term::compound("forall", {var(), body().to_term()});
    case Kind::Exists: return Term::compound("exists", {var(), body().to_term()});
  }
  return Term();
}

std::string Formula::str() const { return to_string(to_term()); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.node_->term != b.node_->term || a.node_->rhs != b.node_->rhs) return false;
  if (a.node_->subs.size() != b.node_->subs.size()) return false;
  for (std::size_t i = 0; i < a.node_->subs.size(); ++i)
    if (!(a.node_->subs[i] == b.node_->subs[i])) return false;
  return true;
}

namespace {

void free_vars(const Formula& f, std::vector<Term>& bound, std::vector<Term>& out) {
  auto add_term = [&](const Term& t) {
    for (const Term& v : variables_of(t)) {
      bool is_bound = false;
      for (const Term& b : bound) is_bound = is_bound || b == v;
      bool seen = false;
      for (const Term& o : out) seen = seen || o == v;
      if (!is_bound && !seen) out.push_back(v);
    }
  };
  switch (f.kind()) {
    case Formula::Kind::Atom:
      add_term(f.term());
      return;
    case Formula::Kind::Equals:
      add_term(f.term());
      add_term(f.rhs());
      return;
    case Formula::Kind::Not:
      free_vars(f.body(), bound, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      bound.push_back(f.var());
      free_vars(f.body(), bound, out);
      bound.pop_back();
      return;
    default:
      free_vars(f.left(), bound, out);
      free_vars(f.right(), bound, out);
      return;
  }
}

}  // namespace

std::vector<Term> free_variables(const Formula& f) {
  std::vector<Term> bound, out;
  free_vars(f, bound, out);
  return out;
}

Formula substitute(const Formula& f, const Substitution& s) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return Formula::atom(s.apply(f.term()));
    case Formula::Kind::Equals: return Formula::equals(s.apply(f.term()), s.apply(f.rhs()));
    case Formula::Kind::Not: return Formula::negation(substitute(f.body(), s));
    case Formula::Kind::And: return Formula::conj(substitute(f.left(), s), substitute(f.right(), s));
    case Formula::Kind::Or: return Formula::disj(substitute(f.left(), s), substitute(f.right(), s));
    case Formula::Kind::Implies: return Formula::implies(substitute(f.left(), s), substitute(f.right(), s));
    case Formula::Kind::Iff: return Formula::iff(substitute(f.left(), s), substitute(f.right(), s));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Substitution inner = s;
      inner.erase(f.var());
      Formula body = substitute(f.body(), inner);
      return f.kind() == Formula::Kind::Forall ? Formula::forall(f.var(), body) : Formula::exists(f.var(), body);
    }
  }
  return f;
}

}  // namespace slog
