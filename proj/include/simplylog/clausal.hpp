#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simplylog/program.hpp"
#include "simplylog/term.hpp"

namespace slog {

using TermSet = std::set<Term, TermLess>;

/// Reads general clauses; `:- B` is a denial here, not a directive.
std::vector<Clause> parse_clauses(std::string_view text, const std::string& file = "");

/// Constant injected when a programme has none.
inline constexpr const char* kInjectedConstant = "c0";

struct Signature {
  TermSet constants;           // atoms and integers in argument positions
  std::set<PredKey> functors;  // compound argument terms
  std::set<PredKey> predicates;
};

Signature signature_of(const std::vector<Clause>& cs);

/// Ground terms of nesting depth <= depth.
TermSet herbrand_universe(const std::vector<Clause>& cs, std::size_t depth);
TermSet herbrand_universe(const Program& p, std::size_t depth);

/// Every predicate applied to every tuple of universe terms.
TermSet herbrand_base(const std::vector<Clause>& cs, std::size_t depth);
TermSet herbrand_base(const Program& p, std::size_t depth);

struct HerbrandInterpretation {
  TermSet true_atoms;
  /// Fuel ran out before the fixpoint.
  bool partial = false;
  /// Some consequence was dropped because it fell outside the depth bound.
  bool truncated = false;

  bool holds(const Term& atom) const { return true_atoms.count(atom) != 0; }
};

/// Checks every ground instance over the depth-bounded universe.
bool is_model(const TermSet& true_atoms, const std::vector<Clause>& cs, std::size_t depth);
bool is_model(const TermSet& true_atoms, const Program& p, std::size_t depth);

/// Forward chaining to the least fixpoint. Throws ProgramError on a
/// non-definite clause.
HerbrandInterpretation least_herbrand_model(const Program& p, std::size_t depth = 3,
                                            std::size_t fuel = 1000);

/// All resolvents of two ground clauses on one complementary atom.
std::vector<Clause> propositional_resolve(const Clause& c1, const Clause& c2);

/// Parent of a resolution step: an input clause or an earlier step.
struct ClauseRef {
  bool input = true;
  std::size_t index = 0;

  friend bool operator==(const ClauseRef&, const ClauseRef&) = default;
};

struct RefutationStep {
  ClauseRef left;   // contributes `atom` from its head
  ClauseRef right;  // contributes `atom` from its body
  Clause left_copy;   // parents as renamed for this step
  Clause right_copy;
  Term atom;  // resolved-upon atom after unification
  Substitution unifier;
  Clause resolvent;
};

struct Refutation {
  std::vector<Clause> inputs;
  std::vector<RefutationStep> steps;
};

/// Re-checks every step: the unifier maps the named head and body literals
/// onto `atom` and the resolvent is the resulting clause. The last
/// resolvent must be empty.
bool replay(const Refutation& r);

/// `step k: c1 + r2 on p gives q.` lines.
std::string refutation_to_text(const Refutation& r);
std::string refutation_to_json(const Refutation& r);

enum class RefuteStatus { Refuted, Saturated, Budget };

struct RefuteResult {
  RefuteStatus status = RefuteStatus::Saturated;
  std::optional<Refutation> refutation;
  std::size_t generated = 0;  // new clauses kept during saturation
};

/// Breadth-first saturation with factoring, duplicate and tautology
/// elimination. `max_steps` bounds the number of new clauses kept.
RefuteResult resolution_refute(const std::vector<Clause>& cs, std::size_t max_steps = 100000);

struct ClausalAnswer {
  Substitution bindings;  // over the goal's variables
  Refutation refutation;  // of cs plus the denial of the goal
};

struct ClausalQueryResult {
  RefuteStatus status = RefuteStatus::Saturated;
  std::optional<ClausalAnswer> answer;
};

/// Naive interpreter for full clausal logic: saturates cs with the goal's
/// denial, discarding clauses with terms deeper than `depth`, until a
/// single definite answer appears.
ClausalQueryResult full_clausal_query(const std::vector<Clause>& cs, const std::vector<Term>& goal,
                                      std::size_t depth = 4, std::size_t max_steps = 100000);

struct SoundnessReport {
  std::vector<std::string> violations;
  bool model_partial = false;
  bool ok() const { return violations.empty(); }
};

/// Checks each answered goal, instantiated by its substitution, against the
/// least Herbrand model. Non-ground instances are checked over the universe.
SoundnessReport soundness_audit(const Program& p,
                                const std::vector<std::pair<std::vector<Term>, Substitution>>& answers,
                                std::size_t depth = 3);

}  // namespace slog
