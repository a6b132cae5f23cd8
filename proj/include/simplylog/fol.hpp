#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "simplylog/clausal.hpp"
#include "simplylog/formula.hpp"
#include "simplylog/program.hpp"

namespace slog {

/// Issues Skolem symbols sk1, sk2, ... skipping names listed in `avoid`.
class SkolemSupply {
 public:
  SkolemSupply() = default;
  explicit SkolemSupply(std::set<std::string> avoid) : avoid_(std::move(avoid)) {}

  std::string next();
  void avoid(const std::string& name) { avoid_.insert(name); }
  std::size_t issued() const { return counter_; }

 private:
  std::size_t counter_ = 0;
  std::set<std::string> avoid_;
};

/// Atom, functor and constant names used by a formula.
std::set<std::string> symbols_of(const Formula& f);

// The transformation pipeline, one stage per function.
Formula eliminate_implications(const Formula& f);
Formula negation_normal_form(const Formula& f);
/// Closes free variables universally and gives each quantifier its own
/// variable.
Formula standardize_apart(const Formula& f);
/// Replaces existentials by Skolem terms over the enclosing universals.
Formula skolemize(const Formula& f, SkolemSupply& supply);
Formula drop_universals(const Formula& f);

/// True when negation only wraps atoms and no implication or
/// biconditional remains.
bool is_nnf(const Formula& f);

/// Runs every stage, then distributes disjunction over conjunction and
/// splits into clauses (positive literals in the head). Symbols of `f`
/// are added to the supply's avoid list.
std::vector<Clause> to_clausal_form(const Formula& f, SkolemSupply& supply);
std::vector<Clause> to_clausal_form(const Formula& f);

struct Completion {
  /// One `forall(X1, ..., iff(q(X1..Xn), ...))` per predicate.
  std::vector<Formula> definitions;
  std::vector<Formula> equality_theory;
};

/// Clark completion. Body literals `\+ A` become negations and `A = B`
/// equalities. Throws ProgramError on a non-definite clause.
Completion predicate_completion(const Program& p);

/// Every ground atom A of the depth-bounded base (declared predicates
/// included) whose negation the closed world assumption adds.
TermSet cwa_consequences(const Program& p, std::size_t depth = 3);

}  // namespace slog
