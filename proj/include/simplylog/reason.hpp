#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "simplylog/program.hpp"
#include "simplylog/sld.hpp"

namespace slog {

/// Predicate strata for a program whose negations are stratified, nullopt
/// otherwise. `\+ G` and `not(G)` are the negative edges.
std::optional<std::map<PredKey, std::size_t>> stratify(const Program& p);

// ---------------------------------------------------------------------------
// Abduction

struct AbductionSpec {
  Program program;
  std::set<PredKey> abducibles;
  /// Denial bodies.
  std::vector<std::vector<Term>> constraints;

  /// Throws ProgramError when an abducible has defining clauses.
  void validate() const;
};

/// Sorted, duplicate-free ground abducible atoms.
using Explanation = std::vector<Term>;

/// Reads `:- abducible(p/1).` and `:- constraint(Body).` directives; the
/// other clauses form the program.
AbductionSpec load_abduction_spec(std::string_view text, const std::string& file = "");

/// True when some constraint body is derivable from program plus `delta`.
bool violates_constraints(const AbductionSpec& spec, const Explanation& delta, EngineLimits lim = {});

/// Program plus `delta` derives `goal` under plain SLD resolution.
bool replays(const AbductionSpec& spec, const std::vector<Term>& goal, const Explanation& delta,
             EngineLimits lim = {});

/// Explanations in derivation order. A candidate is dropped when it violates
/// a constraint, or when an explanation already returned is a subset of it.
class Abducer {
 public:
  Abducer(AbductionSpec spec, std::vector<Term> goal, EngineLimits lim = {}, Strategy strategy = {});

  std::optional<Explanation> next();
  StreamEnd end() const { return solver_.end(); }

 private:
  std::shared_ptr<const AbductionSpec> spec_;
  EngineLimits lim_;
  Solver solver_;
  std::vector<Explanation> returned_;
};

/// Drains an Abducer, then also drops explanations that strictly contain a
/// later one.
std::vector<Explanation> abduce(const AbductionSpec& spec, const std::vector<Term>& goal, EngineLimits lim = {},
                                std::optional<std::size_t> max = std::nullopt);

std::string to_string(const Explanation& delta);

// ---------------------------------------------------------------------------
// Defaults

struct DefaultRule {
  std::string name;
  std::vector<Term> prerequisite;
  Term conclusion;
};

/// `condition` shares variables with the rule it names.
struct DefaultException {
  std::string name;
  std::vector<Term> condition;
};

struct DefaultTheory {
  Program facts;
  std::vector<DefaultRule> rules;
  std::vector<DefaultException> exceptions;
};

/// Checks names and conclusions and that the compiled program is
/// stratified. Throws ProgramError otherwise.
void validate(const DefaultTheory& t);

/// Reads `:- default(Name, Prereq => Conclusion).` and
/// `:- exception(Name, Cond).`; other clauses are facts. Exception variables
/// are the rule's variables of the same name. Validates the result.
DefaultTheory load_default_theory(std::string_view text, const std::string& file = "");

/// Facts plus `Conclusion :- Prereq, \+ '$exc_Name'(Vars)` for every rule
/// and `'$exc_Name'(Vars) :- Cond` for every exception.
Program compile_defaults(const DefaultTheory& t);

enum class DefaultStatus { Holds, Blocked, Underivable };

struct DefaultVerdict {
  DefaultStatus status = DefaultStatus::Underivable;
  std::string rule;       // applying default, empty when none
  std::string exception;  // firing exception instance, empty when none
  std::string justification;
};

/// Holds when the compiled theory derives `query`. Blocked when it does not
/// but a default concludes it with a derivable prerequisite and a firing
/// exception. Underivable otherwise.
DefaultVerdict default_conclusions(const DefaultTheory& t, const Term& query, EngineLimits lim = {});

std::string to_string(DefaultStatus s);

}  // namespace slog
