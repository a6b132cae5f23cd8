#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simplylog/program.hpp"
#include "simplylog/sld.hpp"

namespace slog {

/// θ with head(c)θ ⊆ head(d) and body(c)θ ⊆ body(d), found by backtracking
/// literal matching. Variables of `d` are treated as constants. The
/// substitution is over the variables of `c`.
std::optional<Substitution> theta_subsumes(const Clause& c, const Clause& d);

/// Same predicate and sign (`\+ p(..)` pairs only with `\+ p(..)`).
bool compatible_literals(const Term& a, const Term& b);

/// Removes body literals L while the clause θ-subsumes itself without L.
Clause reduce_clause(const Clause& c);

/// Plotkin lgg of two definite clauses with one disagreement map for the
/// whole clause; every compatible body pair contributes. The result is
/// reduced. Throws ProgramError when the heads differ in predicate.
Clause lgg_clauses(const Clause& c1, const Clause& c2);

enum class Generality { MoreGeneral, MoreSpecific, Equivalent, Incomparable };

Generality generality_check(const Clause& c, const Clause& d);
std::string to_string(Generality g);

struct ILPTask {
  std::vector<Term> positives;
  std::vector<Term> negatives;
  Program background;
  PredKey target;
  std::size_t max_body = 4;
  std::size_t max_clauses = 4;

  /// Throws ProgramError on overlapping or non-ground examples, examples
  /// outside the target, or a target defined by the background.
  void validate() const;
};

/// `:- pos(A).` and `:- neg(A).` give the examples, other clauses the
/// background; the target is the predicate of the first example.
ILPTask load_ilp_task(std::string_view text, const std::string& file = "");

/// The bottom clause of a positive: the example as head, and as body the
/// ground background facts sharing a constant with it, in program order,
/// at most max_body of them.
Clause saturate(const ILPTask& task, const Term& example);

/// True when `hypothesis` plus the background derives `atom`.
bool covers(const ILPTask& task, const std::vector<Clause>& hypothesis, const Term& atom, EngineLimits lim = {});

/// Bottom-up learner: saturate positives in order, fold each into the
/// previous clause by lgg unless that covers a negative, and accept only a
/// hypothesis that covers every positive and no negative.
std::optional<std::vector<Clause>> induce(const ILPTask& task, EngineLimits lim = {});

/// Programme text with variables written A, B, ...
std::string clause_text(const Clause& c);

}  // namespace slog
