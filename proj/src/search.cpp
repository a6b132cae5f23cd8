#include "simplylog/search.hpp"

#include <sstream>

#include "simplylog/error.hpp"
#include "simplylog/reader.hpp"
#include "sld_internal.hpp"

namespace slog {

GraphSpec parse_graph(std::string_view text) {
  GraphSpec g;
  auto note = [&](const std::string& n) {
    if (std::find(g.nodes.begin(), g.nodes.end(), n) == g.nodes.end()) g.nodes.push_back(n);
  };
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pct = line.find('%'); pct != std::string::npos) line.erase(pct);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto fail = [&](const std::string& why) {
      throw SyntaxError("graph line " + std::to_string(lineno) + ": " + why, lineno, 1);
    };
    std::string a, b;
    if (word == "start") {
      if (!(ls >> a)) fail("start needs a node");
      g.start = a;
      note(a);
    } else if (word == "goal") {
      while (ls >> a) {
        g.goals.insert(a);
        note(a);
      }
    } else if (word == "node") {
      while (ls >> a) note(a);
    } else if (word == "edge") {
      double c = 1;
      if (!(ls >> a >> b)) fail("edge needs two nodes");
      if (!(ls >> c)) c = 1;
      if (c < 0) fail("negative edge cost");
      g.edges[a].push_back({b, c});
      note(a);
      note(b);
    } else if (word == "h") {
      double v = 0;
      if (!(ls >> a >> v)) fail("h needs a node and a value");
      g.h[a] = v;
      note(a);
    } else {
      fail("unknown keyword '" + word + "'");
    }
  }
  if (g.start.empty()) throw SyntaxError("graph has no start node", lineno, 1);
  return g;
}

SearchProblem<std::string> graph_problem(const GraphSpec& g) {
  auto spec = std::make_shared<GraphSpec>(g);
  SearchProblem<std::string> p;
  p.start = g.start;
  p.is_goal = [spec](const std::string& s) { return spec->goals.count(s) != 0; };
  p.successors = [spec](const std::string& s) {
    auto it = spec->edges.find(s);
    return it == spec->edges.end() ? std::vector<std::pair<std::string, double>>{} : it->second;
  };
  if (!g.h.empty())
    p.heuristic = [spec](const std::string& s) {
      auto it = spec->h.find(s);
      return it == spec->h.end() ? 0.0 : it->second;
    };
  p.key = [](const std::string& s) { return s; };
  return p;
}

std::string format_number(double x) {
  std::ostringstream os;
  if (x == static_cast<double>(static_cast<long long>(x)))
    os << static_cast<long long>(x);
  else
    os << x;
  return os.str();
}

std::string format_search_result(const SearchResult<std::string>& r) {
  std::ostringstream os;
  switch (r.outcome) {
    case SearchOutcome::Found: {
      os << "path: ";
      for (std::size_t i = 0; i < r.path.size(); ++i) os << (i ? " -> " : "") << r.path[i];
      os << "\ncost: " << format_number(r.cost) << "\n";
      break;
    }
    case SearchOutcome::Exhausted: os << "no path (exhausted)\n"; break;
    case SearchOutcome::BudgetExceeded: os << "no path (budget exceeded)\n"; break;
  }
  os << "expanded=" << r.stats.expanded << " generated=" << r.stats.generated << " frontier=" << r.stats.max_frontier
     << "\n";
  return os.str();
}

Substitution SldState::bindings() const {
  Substitution s;
  for (std::size_t i = 0; i < query_vars.size(); ++i) s.bind(query_vars[i], answer.arg(i));
  return s;
}

SearchProblem<SldState> sld_problem(const Program& p, const std::vector<Term>& goals, std::size_t max_depth) {
  detail::reject_cut(p, goals);
  auto ctx = std::make_shared<detail::Context>();
  ctx->program = std::make_shared<const Program>(p);
  ctx->strategy = Strategy::breadth_first();
  ctx->supply = std::make_shared<VarSupply>();
  ctx->nodes = std::make_shared<std::size_t>(0);
  auto ids = std::make_shared<std::size_t>(0);

  SldState start;
  start.goals = goals;
  for (const Term& g : goals) collect_variables(g, start.query_vars);
  start.answer = Term::compound("$answer", start.query_vars);

  SearchProblem<SldState> prob;
  prob.start = start;
  prob.is_goal = [](const SldState& s) { return s.goals.empty(); };
  prob.successors = [ctx, ids, max_depth](const SldState& s) {
    std::vector<std::pair<SldState, double>> out;
    if (s.goals.empty()) return out;
    detail::State st;
    st.goals = detail::push_goals(s.goals, 0, 0, nullptr);
    st.answer = s.answer;
    st.depth = s.depth;
    for (detail::State& c : detail::expand(*ctx, st, 0).children) {
      if (max_depth && c.depth > max_depth) continue;
      SldState n;
      n.goals = detail::goal_terms(c.goals);
      n.answer = c.answer;
      n.depth = c.depth;
      n.query_vars = s.query_vars;
      n.id = ++*ids;
      out.push_back({std::move(n), 1.0});
    }
    return out;
  };
  prob.key = [](const SldState& s) { return std::to_string(s.id); };
  return prob;
}

}  // namespace slog
