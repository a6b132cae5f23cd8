#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "simplylog/program.hpp"
#include "simplylog/term.hpp"

namespace slog {

template <class S>
struct SearchProblem {
  S start;
  std::function<bool(const S&)> is_goal;
  /// Successors in order, with non-negative step costs.
  std::function<std::vector<std::pair<S, double>>(const S&)> successors;
  /// Optional; absent means h = 0.
  std::function<double(const S&)> heuristic;
  std::function<std::string(const S&)> key;

  double h(const S& s) const { return heuristic ? heuristic(s) : 0.0; }
};

enum class CyclePolicy { Default, None, PathCheck, ClosedSet };

struct SearchOptions {
  CyclePolicy cycle_policy = CyclePolicy::Default;
  std::optional<std::size_t> max_expanded;
  std::size_t beam_width = 1;
  std::size_t id_step = 1;
};

struct SearchStats {
  std::size_t expanded = 0;
  std::size_t generated = 0;  // includes the start node
  std::size_t max_frontier = 0;
};

enum class SearchOutcome { Found, Exhausted, BudgetExceeded };

template <class S>
struct SearchResult {
  SearchOutcome outcome = SearchOutcome::Exhausted;
  std::vector<S> path;
  double cost = 0;
  SearchStats stats;

  bool found() const { return outcome == SearchOutcome::Found; }
};

enum class UninformedKind { DepthFirst, BreadthFirst, IterativeDeepening };
enum class BestFirstKind { Greedy, AStar };
enum class LocalKind { Beam, HillClimb };

namespace detail {

template <class S>
struct SearchNode {
  S state;
  std::string key;
  double g = 0;
  std::size_t depth = 0;
  std::shared_ptr<const SearchNode> parent;
};

template <class S>
using NodePtr = std::shared_ptr<const SearchNode<S>>;

template <class S>
NodePtr<S> make_node(const SearchProblem<S>& p, std::type_identity_t<S> s, double g,
                     const std::type_identity_t<NodePtr<S>>& parent) {
  auto n = std::make_shared<SearchNode<S>>();
  n->key = p.key(s);
  n->state = std::move(s);
  n->g = g;
  n->depth = parent ? parent->depth + 1 : 0;
  n->parent = parent;
  return n;
}

template <class S>
bool on_path(const NodePtr<S>& n, const std::string& key) {
  for (const SearchNode<S>* x = n.get(); x; x = x->parent.get())
    if (x->key == key) return true;
  return false;
}

template <class S>
void finish(SearchResult<S>& r, const NodePtr<S>& goal) {
  r.outcome = SearchOutcome::Found;
  r.cost = goal->g;
  for (const SearchNode<S>* x = goal.get(); x; x = x->parent.get()) r.path.push_back(x->state);
  std::reverse(r.path.begin(), r.path.end());
}

inline bool over_budget(const SearchOptions& o, const SearchStats& s) {
  return o.max_expanded && s.expanded >= *o.max_expanded;
}

/// One depth-limited (or unlimited) depth-first pass. Returns the goal node
/// if found; sets `cut` when the limit pruned something.
template <class S>
NodePtr<S> depth_first_pass(const SearchProblem<S>& p, const SearchOptions& o, CyclePolicy policy,
                            std::optional<std::size_t> limit, SearchStats& stats, bool& cut, bool& budget) {
  std::vector<NodePtr<S>> stack{make_node(p, p.start, 0, nullptr)};
  ++stats.generated;
  stats.max_frontier = std::max(stats.max_frontier, stack.size());
  std::unordered_map<std::string, std::size_t> closed;  // key -> shallowest depth expanded
  while (!stack.empty()) {
    NodePtr<S> n = stack.back();
    stack.pop_back();
    if (policy == CyclePolicy::ClosedSet) {
      auto it = closed.find(n->key);
      if (it != closed.end() && it->second <= n->depth) continue;
      closed[n->key] = n->depth;
    }
    if (over_budget(o, stats)) {
      budget = true;
      return nullptr;
    }
    ++stats.expanded;
    if (p.is_goal(n->state)) return n;
    if (limit && n->depth >= *limit) {
      cut = true;
      continue;
    }
    auto succ = p.successors(n->state);
    for (auto it = succ.rbegin(); it != succ.rend(); ++it) {
      if (policy == CyclePolicy::PathCheck && on_path(n, p.key(it->first))) continue;
      stack.push_back(make_node(p, it->first, n->g + it->second, n));
      ++stats.generated;
    }
    stats.max_frontier = std::max(stats.max_frontier, stack.size());
  }
  return nullptr;
}

}  // namespace detail

template <class S>
SearchResult<S> uninformed_search(const SearchProblem<S>& p, UninformedKind kind, const SearchOptions& o = {}) {
  using namespace detail;
  SearchResult<S> r;
  CyclePolicy policy = o.cycle_policy;
  if (policy == CyclePolicy::Default)
    policy = kind == UninformedKind::BreadthFirst ? CyclePolicy::ClosedSet : CyclePolicy::PathCheck;

  if (kind == UninformedKind::BreadthFirst) {
    std::queue<NodePtr<S>> frontier;
    std::unordered_set<std::string> seen;
    frontier.push(make_node(p, p.start, 0, nullptr));
    seen.insert(frontier.front()->key);
    r.stats.generated = 1;
    r.stats.max_frontier = 1;
    while (!frontier.empty()) {
      NodePtr<S> n = frontier.front();
      frontier.pop();
      if (over_budget(o, r.stats)) {
        r.outcome = SearchOutcome::BudgetExceeded;
        return r;
      }
      ++r.stats.expanded;
      if (p.is_goal(n->state)) {
        finish(r, n);
        return r;
      }
      for (auto& [s, c] : p.successors(n->state)) {
        std::string k = p.key(s);
        if (policy == CyclePolicy::ClosedSet && !seen.insert(k).second) continue;
        if (policy == CyclePolicy::PathCheck && on_path(n, k)) continue;
        frontier.push(make_node(p, s, n->g + c, n));
        ++r.stats.generated;
      }
      r.stats.max_frontier = std::max(r.stats.max_frontier, frontier.size());
    }
    r.outcome = SearchOutcome::Exhausted;
    return r;
  }

  std::size_t step = std::max<std::size_t>(1, o.id_step);
  for (std::size_t round = 1;; ++round) {
    bool cut = false, budget = false;
    std::optional<std::size_t> limit;
    if (kind == UninformedKind::IterativeDeepening) limit = round * step;
    NodePtr<S> goal = depth_first_pass(p, o, policy, limit, r.stats, cut, budget);
    if (goal) {
      finish(r, goal);
      return r;
    }
    if (budget) {
      r.outcome = SearchOutcome::BudgetExceeded;
      return r;
    }
    if (!cut) {
      r.outcome = SearchOutcome::Exhausted;
      return r;
    }
  }
}

template <class S>
SearchResult<S> best_first(const SearchProblem<S>& p, BestFirstKind kind, const SearchOptions& o = {}) {
  using namespace detail;
  SearchResult<S> r;
  CyclePolicy policy = o.cycle_policy == CyclePolicy::Default ? CyclePolicy::ClosedSet : o.cycle_policy;
  struct Entry {
    double f;
    std::size_t seq;
    NodePtr<S> node;
    bool operator>(const Entry& e) const { return f != e.f ? f > e.f : seq > e.seq; }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> frontier;
  std::unordered_map<std::string, double> best_g;
  std::size_t seq = 0;
  auto push = [&](NodePtr<S> n) {
    double h = p.h(n->state);
    double f = kind == BestFirstKind::AStar ? n->g + h : h;
    frontier.push(Entry{f, seq++, std::move(n)});
    ++r.stats.generated;
    r.stats.max_frontier = std::max(r.stats.max_frontier, frontier.size());
  };
  NodePtr<S> start = make_node(p, p.start, 0, nullptr);
  best_g[start->key] = 0;
  push(start);
  while (!frontier.empty()) {
    NodePtr<S> n = frontier.top().node;
    frontier.pop();
    if (policy == CyclePolicy::ClosedSet && n->g > best_g[n->key]) continue;  // superseded
    if (over_budget(o, r.stats)) {
      r.outcome = SearchOutcome::BudgetExceeded;
      return r;
    }
    ++r.stats.expanded;
    if (p.is_goal(n->state)) {
      finish(r, n);
      return r;
    }
    for (auto& [s, c] : p.successors(n->state)) {
      double g = n->g + c;
      std::string k = p.key(s);
      if (policy == CyclePolicy::ClosedSet) {
        auto it = best_g.find(k);
        if (it != best_g.end() && g >= it->second) continue;
        best_g[k] = g;
      } else if (policy == CyclePolicy::PathCheck && on_path(n, k)) {
        continue;
      }
      push(make_node(p, s, g, n));
    }
  }
  r.outcome = SearchOutcome::Exhausted;
  return r;
}

/// Level-wise search keeping the best `beam_width` successors by h (ties in
/// generation order). Stops when a level's best h does not improve on the
/// previous level's, so width 1 is hill-climbing.
template <class S>
SearchResult<S> local_search(const SearchProblem<S>& p, LocalKind kind, const SearchOptions& o = {}) {
  using namespace detail;
  SearchResult<S> r;
  std::size_t width = kind == LocalKind::HillClimb ? 1 : std::max<std::size_t>(1, o.beam_width);
  CyclePolicy policy = o.cycle_policy == CyclePolicy::Default ? CyclePolicy::ClosedSet : o.cycle_policy;
  std::unordered_set<std::string> seen;
  std::vector<NodePtr<S>> level{make_node(p, p.start, 0, nullptr)};
  seen.insert(level.front()->key);
  r.stats.generated = 1;
  r.stats.max_frontier = 1;
  double best = p.h(p.start);
  for (;;) {
    std::vector<std::pair<double, NodePtr<S>>> next;
    for (const NodePtr<S>& n : level) {
      if (over_budget(o, r.stats)) {
        r.outcome = SearchOutcome::BudgetExceeded;
        return r;
      }
      ++r.stats.expanded;
      if (p.is_goal(n->state)) {
        finish(r, n);
        return r;
      }
      for (auto& [s, c] : p.successors(n->state)) {
        std::string k = p.key(s);
        if (policy == CyclePolicy::ClosedSet && !seen.insert(k).second) continue;
        if (policy == CyclePolicy::PathCheck && on_path(n, k)) continue;
        next.push_back({p.h(s), make_node(p, s, n->g + c, n)});
        ++r.stats.generated;
      }
    }
    std::stable_sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (next.size() > width) next.resize(width);
    bool has_goal = std::any_of(next.begin(), next.end(), [&](const auto& e) { return p.is_goal(e.second->state); });
    if (next.empty() || (!has_goal && next.front().first >= best)) {
      r.outcome = SearchOutcome::Exhausted;
      return r;
    }
    best = next.front().first;
    level.clear();
    for (auto& e : next) level.push_back(std::move(e.second));
    r.stats.max_frontier = std::max(r.stats.max_frontier, level.size());
  }
}

// ---------------------------------------------------------------------------
// Weighted graphs from text.

/// Lines: `start a`, `goal d`, `edge a b 3` (cost defaults to 1),
/// `node x`, `h a 2`. `%` starts a comment.
struct GraphSpec {
  std::vector<std::string> nodes;  // first-mention order
  std::map<std::string, std::vector<std::pair<std::string, double>>> edges;
  std::string start;
  std::set<std::string> goals;
  std::map<std::string, double> h;
};

GraphSpec parse_graph(std::string_view text);
SearchProblem<std::string> graph_problem(const GraphSpec& g);
std::string format_number(double x);

/// `path: a -> c -> d` / `cost: 5` / `expanded=.. generated=.. frontier=..`
/// or `no path (exhausted)` in place of the first two lines.
std::string format_search_result(const SearchResult<std::string>& r);

// ---------------------------------------------------------------------------
// SLD trees as search spaces.

struct SldState {
  std::vector<Term> goals;
  Term answer;  // '$answer'(QueryVars) under the accumulated substitution
  std::vector<Term> query_vars;
  std::size_t depth = 0;
  std::size_t id = 0;

  Substitution bindings() const;
};

/// Unit-cost resolution steps in clause order; every node has its own key,
/// so the space is the SLD tree itself. max_depth 0 means unbounded.
/// Throws ProgramError if the programme or goal uses cut.
SearchProblem<SldState> sld_problem(const Program& p, const std::vector<Term>& goals, std::size_t max_depth = 0);

}  // namespace slog
