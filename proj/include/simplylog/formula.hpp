#pragma once

#include <memory>
#include <string>
#include <vector>

#include "simplylog/term.hpp"

namespace slog {

/// First-order formula over Term atoms.
class Formula {
 public:
  enum class Kind { Atom, Not, And, Or, Implies, Iff, Forall, Exists, Equals };

  static Formula atom(Term a);
  static Formula equals(Term lhs, Term rhs);
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula forall(Term var, Formula body);
  static Formula exists(Term var, Formula body);
  static Formula truth();
  static Formula falsity();

  /// Left-nested conjunction/disjunction; empty input gives truth/falsity.
  static Formula conj_all(const std::vector<Formula>& fs);
  static Formula disj_all(const std::vector<Formula>& fs);

  Kind kind() const { return node_->kind; }
  /// Atom term, or the left side of an equality.
  const Term& term() const { return node_->term; }
  /// Right side of an equality.
  const Term& rhs() const { return node_->rhs; }
  /// Quantified variable.
  const Term& var() const { return node_->term; }
  const Formula& left() const { return node_->subs[0]; }
  const Formula& right() const { return node_->subs[1]; }
  const Formula& body() const { return node_->subs[0]; }

  bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }
  bool is_true() const { return kind() == Kind::Atom && term().is_atom() && term().name() == "true"; }
  bool is_false() const { return kind() == Kind::Atom && term().is_atom() && term().name() == "false"; }

  /// Functional-syntax term, e.g. forall(X, implies(p(X), q(X))).
  Term to_term() const;
  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    Term term;
    Term rhs;
    std::vector<Formula> subs;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Kind k, Term t, Term r, std::vector<Formula> subs);

  std::shared_ptr<const Node> node_;
};

/// Free variables in first-occurrence order.
std::vector<Term> free_variables(const Formula& f);

/// Substitutes free occurrences (bound occurrences are left alone).
Formula substitute(const Formula& f, const Substitution& s);

}  // namespace slog
