#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "simplylog/error.hpp"
#include "simplylog/program.hpp"
#include "simplylog/reader.hpp"
#include "simplylog/term.hpp"

namespace slog {

struct Strategy {
  enum class Kind { DepthFirst, BreadthFirst, IterativeDeepening };
  Kind kind = Kind::DepthFirst;
  std::size_t step = 1;

  static Strategy depth_first() { return {Kind::DepthFirst, 1}; }
  static Strategy breadth_first() { return {Kind::BreadthFirst, 1}; }
  static Strategy iterative_deepening(std::size_t step = 1);

  std::string name() const;
};

/// Resource bounds. Depth counts resolution steps from the root; nodes
/// counts goal selections. Without bounds a search may diverge.
///
/// Depth-first search stops the whole stream when it would go deeper than
/// max_depth. Breadth-first drops nodes at the bound and reports
/// resources-exhausted after the remaining nodes are explored. Iterative
/// deepening stops growing its limit at max_depth.
struct EngineLimits {
  std::optional<std::size_t> max_depth;
  std::optional<std::size_t> max_nodes;
};

struct EngineOptions {
  bool occurs_check = true;
  bool undefined_is_error = true;
  /// Four-port trace (Call/Exit/Fail/Redo) written to trace_out.
  bool trace = false;
  std::ostream* trace_out = nullptr;
  /// Predicates collected into the answer residue instead of being resolved.
  std::set<PredKey> abducibles;
};

/// Derivation of one atom. Builtin and abduced atoms are leaves.
struct ProofTree {
  enum class Source { Clause, Builtin, Abduced };
  Term atom;
  Source source = Source::Builtin;
  std::size_t clause = 0;  // program position when source == Clause
  std::vector<ProofTree> children;
};

/// Indented text, one node per line: `p  [clause 2]`.
std::string proof_to_text(const ProofTree& t, const Program& p);
std::string proof_to_json(const ProofTree& t, const Program& p);

/// Independently re-checks every clause node against the program and
/// re-evaluates arithmetic and unification leaves.
bool verify_proof(const ProofTree& t, const Program& p, bool occurs_check = true);

namespace detail {
struct LogCell;
}

struct Answer {
  /// Query variable -> value, query-variable order. Unbound variables are
  /// omitted.
  Substitution bindings;
  std::vector<Term> query_vars;
  /// Abduced atoms in order of collection.
  std::vector<Term> residue;
  std::size_t depth = 0;

  ProofTree proof() const;
  /// Proof trees of each top-level query goal.
  std::vector<ProofTree> proofs() const;

  std::shared_ptr<const detail::LogCell> log;
  std::size_t goal_count = 0;
};

/// `X = f(a), Y = b`, or `true` when nothing is bound.
std::string format_bindings(const Answer& a);

enum class StreamEnd { None, Exhausted, ResourcesExhausted };

/// Resumable answer stream for one query. The program is shared and
/// immutable; the stream itself is single-consumer.
class Solver {
 public:
  Solver(std::shared_ptr<const Program> program, std::vector<Term> goals, Strategy strategy = {},
         EngineLimits limits = {}, EngineOptions options = {});
  Solver(const Program& program, std::vector<Term> goals, Strategy strategy = {}, EngineLimits limits = {},
         EngineOptions options = {});
  ~Solver();
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;

  /// Next answer, continuing exactly where the previous call stopped.
  /// Returns nullopt at the end of the stream; end() tells why.
  std::optional<Answer> next();

  StreamEnd end() const;
  /// Goal selections performed so far.
  std::size_t nodes() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct SolveResult {
  std::vector<Answer> answers;
  StreamEnd end = StreamEnd::Exhausted;
};

/// Drains the stream, stopping early after max_answers when given.
SolveResult solve_all(const Program& p, const std::vector<Term>& goals, Strategy s = {}, EngineLimits lim = {},
                      EngineOptions opts = {}, std::optional<std::size_t> max_answers = std::nullopt);

/// Proof tree of the first answer, or nullopt when there is none.
std::optional<ProofTree> proof_tree(const Program& p, const std::vector<Term>& goals, Strategy s = {},
                                    EngineLimits lim = {}, EngineOptions opts = {});

enum class NafResult { Success, Failure };

/// Negation as failure on a ground goal. Throws InstantiationError for a
/// non-ground goal and ResourceError when the inner search hits a limit.
NafResult naf(const Program& p, const std::vector<Term>& goals, Strategy s = {}, EngineLimits lim = {},
              EngineOptions opts = {});

/// Integer evaluation of +, -, *, //, mod, unary -, abs, min, max.
/// `//` floors, and `mod` takes the sign of the divisor.
std::int64_t eval_arith(const Term& e);

enum class CollectKind { Findall, Bagof, Setof };

/// findall/bagof/setof outside a query. For bagof/setof with free
/// variables this returns the first group. nullopt means failure.
std::optional<Term> collect(const Program& p, CollectKind kind, const Term& templ, const std::vector<Term>& goals,
                            EngineLimits lim = {}, EngineOptions opts = {});

/// Appends clauses to a copy of `p`. DCG rules are translated; the
/// `dynamic(P/N)` directive declares a predicate; other directives and
/// queries are skipped. Non-definite clauses are rejected.
Program consult(const Program& p, const std::vector<SourceClause>& clauses);

bool is_builtin(const PredKey& key);

// ---------------------------------------------------------------------------
// SLD trees

struct SldNode {
  enum class Status { Internal, Success, Failure, Pruned, DepthBounded };
  std::vector<Term> goals;
  Status status = Status::Internal;
  std::size_t depth = 0;
  /// Clause used to reach this node from its parent; nullopt for the root
  /// and for builtin steps.
  std::optional<std::size_t> clause;
  /// Answer bindings on success leaves.
  Substitution answer;
  std::vector<SldNode> children;
};

struct SldTree {
  SldNode root;
  std::vector<Term> query_vars;
};

/// Complete SLD-tree to max_depth under the leftmost selection rule.
/// Subtrees cut away by `!` are kept as stubs marked pruned.
SldTree sld_tree(const Program& p, const std::vector<Term>& goals, std::size_t max_depth,
                 EngineOptions opts = {});

/// One node per line, two spaces of indentation per level, leaf status
/// as a bracketed suffix.
std::string sld_tree_to_text(const SldTree& t);
std::string sld_tree_to_json(const SldTree& t);

const char* status_name(SldNode::Status s);

}  // namespace slog
