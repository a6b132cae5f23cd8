#pragma once

// Engine internals shared by the answer stream and the SLD-tree builder.

#include <deque>
#include <memory>
#include <optional>
#include <vector>

#include "simplylog/sld.hpp"

namespace slog::detail {

struct LogCell {
  Term atom;
  ProofTree::Source source;
  std::size_t clause;
  std::size_t n_children;
  Substitution theta;
  std::shared_ptr<const LogCell> prev;
};
using LogPtr = std::shared_ptr<const LogCell>;

struct GoalCell;
using GoalList = std::shared_ptr<const GoalCell>;

struct GoalCell {
  enum class Kind { Goal, Exit, CutTo };
  Kind kind;
  Term goal;
  std::size_t barrier;
  std::size_t call_depth;
  GoalList next;
};

struct State {
  GoalList goals;
  Term answer;
  LogPtr log;
  std::vector<Term> residue;
  std::size_t depth = 0;
};

struct Context {
  std::shared_ptr<const Program> program;
  Strategy strategy;
  EngineLimits limits;
  EngineOptions options;
  std::shared_ptr<VarSupply> supply;
  std::shared_ptr<std::size_t> nodes;
  bool under_negation = false;
};

struct Expansion {
  std::vector<State> children;
  bool user_call = false;
  std::optional<std::size_t> cut_to;
};

GoalList push_goals(const std::vector<Term>& goals, std::size_t barrier, std::size_t call_depth, GoalList rest);
std::vector<Term> goal_terms(const GoalList& g);

/// One resolution step on the leftmost goal cell of `s`, which must be a
/// Goal cell. `barrier` is the cut barrier given to goals whose cut is
/// local to this step.
Expansion expand(const Context& ctx, const State& s, std::size_t barrier);

void count_node(const Context& ctx);

/// Throws ProgramError if a clause body or goal uses `!` or `->`.
void reject_cut(const Program& p, const std::vector<Term>& goals);

}  // namespace slog::detail
