#include <unistd.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "simplylog/clausal.hpp"
#include "simplylog/error.hpp"
#include "simplylog/fol.hpp"
#include "simplylog/induce.hpp"
#include "simplylog/lang.hpp"
#include "simplylog/reader.hpp"
#include "simplylog/reason.hpp"
#include "simplylog/search.hpp"
#include "simplylog/session.hpp"
#include "simplylog/sld.hpp"

using namespace slog;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Program read_program(const std::string& path) {
  ParsedProgram pp = parse_program(read_file(path), path);
  if (!pp.ok()) throw pp.errors.front();
  return consult({}, pp.clauses);
}

struct Globals {
  std::vector<std::string> consult;
  std::vector<std::string> goals;
  std::string strategy = "dfs";
  std::optional<std::size_t> max_depth;
  std::optional<std::size_t> max_nodes;
  bool no_occurs_check = false;
  bool trace = false;
  bool quiet = false;

  EngineLimits limits() const { return {max_depth, max_nodes}; }
  Strategy strat() const {
    if (strategy == "bfs") return Strategy::breadth_first();
    if (strategy == "id") return Strategy::iterative_deepening();
    return Strategy::depth_first();
  }
  EngineOptions options() const {
    EngineOptions o;
    o.occurs_check = !no_occurs_check;
    o.trace = trace;
    o.trace_out = &std::cout;
    return o;
  }
};

// Runs `body`, mapping errors to exit status 2. SyntaxErrors get `file`.
int guarded(const std::string& file, const std::function<int()>& body) {
  try {
    return body();
  } catch (const SyntaxError& e) {
    std::cout.flush();
    std::cerr << "! " << (file.empty() ? "" : file + ":") << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cout.flush();
    std::cerr << "! " << e.what() << "\n";
  }
  return kExitError;
}

std::vector<Term> goal_of(const std::string& text) { return conjuncts(parse_term(text)); }

int run_clausify(const std::string& file) {
  std::istringstream in(read_file(file));
  SkolemSupply supply;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '%') continue;
    Formula f = [&] {
      try {
        return parse_formula(line);
      } catch (const SyntaxError& e) {
        throw SyntaxError(e.message(), lineno, e.column());
      }
    }();
    for (const Clause& c : to_clausal_form(f, supply)) std::cout << to_string(c) << "\n";
  }
  return kExitOk;
}

int run_complete(const std::string& file, bool equality) {
  Completion c = predicate_completion(read_program(file));
  for (const Formula& f : c.definitions) std::cout << f.str() << "\n";
  if (equality) {
    std::cout << "% equality theory\n";
    for (const Formula& f : c.equality_theory) std::cout << f.str() << "\n";
  }
  return kExitOk;
}

int run_model(const std::string& file, std::size_t depth) {
  HerbrandInterpretation m = least_herbrand_model(read_program(file), depth);
  std::string line;
  for (const Term& a : m.true_atoms) line += (line.empty() ? "" : " ") + to_string(a) + ".";
  std::cout << (line.empty() ? "% empty model" : line) << "\n";
  if (m.partial) std::cout << "% partial: fuel exhausted\n";
  if (m.truncated) std::cout << "% truncated at depth " << depth << "\n";
  return kExitOk;
}

int run_refute(const std::string& file, bool json, std::size_t max_steps) {
  RefuteResult r = resolution_refute(parse_clauses(read_file(file), file), max_steps);
  switch (r.status) {
    case RefuteStatus::Refuted:
      if (json)
        std::cout << refutation_to_json(*r.refutation) << "\n";
      else
        std::cout << "refuted\n" << refutation_to_text(*r.refutation);
      return kExitOk;
    case RefuteStatus::Saturated:
      std::cout << "saturated: no refutation after " << r.generated << " new clause(s)\n";
      return kExitFailure;
    case RefuteStatus::Budget:
      std::cout << "% resources exhausted after " << r.generated << " new clause(s)\n";
      return kExitFailure;
  }
  return kExitError;
}

int run_search(const std::string& file, const std::string& kind, std::size_t beam, std::optional<std::size_t> budget) {
  auto problem = graph_problem(parse_graph(read_file(file)));
  SearchOptions o;
  o.beam_width = beam;
  o.max_expanded = budget;
  SearchResult<std::string> r;
  if (kind == "dfs")
    r = uninformed_search(problem, UninformedKind::DepthFirst, o);
  else if (kind == "bfs")
    r = uninformed_search(problem, UninformedKind::BreadthFirst, o);
  else if (kind == "id")
    r = uninformed_search(problem, UninformedKind::IterativeDeepening, o);
  else if (kind == "greedy")
    r = best_first(problem, BestFirstKind::Greedy, o);
  else if (kind == "a-star")
    r = best_first(problem, BestFirstKind::AStar, o);
  else if (kind == "beam")
    r = local_search(problem, LocalKind::Beam, o);
  else
    r = local_search(problem, LocalKind::HillClimb, o);
  std::cout << format_search_result(r);
  return r.found() ? kExitOk : kExitFailure;
}

int run_sldtree(const std::string& file, const std::string& goal, std::size_t depth, bool json,
                const Globals& g) {
  SldTree t = sld_tree(read_program(file), goal_of(goal), depth, g.options());
  std::cout << (json ? sld_tree_to_json(t) : sld_tree_to_text(t));
  return kExitOk;
}

int run_proof(const std::string& file, const std::string& goal, bool json, const Globals& g) {
  Program p = read_program(file);
  auto t = proof_tree(p, goal_of(goal), g.strat(), g.limits(), g.options());
  if (!t) {
    std::cout << "false.\n";
    return kExitFailure;
  }
  std::cout << (json ? proof_to_json(*t, p) : proof_to_text(*t, p));
  return kExitOk;
}

int run_induce(const std::string& file, std::optional<std::size_t> max_body, std::optional<std::size_t> max_clauses,
               const Globals& g) {
  ILPTask task = load_ilp_task(read_file(file), file);
  if (max_body) task.max_body = *max_body;
  if (max_clauses) task.max_clauses = *max_clauses;
  auto h = induce(task, g.limits());
  if (!h) {
    std::cout << "no hypothesis within bounds\n";
    return kExitFailure;
  }
  for (const Clause& c : *h) std::cout << clause_text(c) << "\n";
  return kExitOk;
}

int run_abduce(const std::string& file, const std::string& goal, std::optional<std::size_t> max, const Globals& g) {
  AbductionSpec spec = load_abduction_spec(read_file(file), file);
  auto es = abduce(spec, goal_of(goal), g.limits(), max);
  if (es.empty()) {
    std::cout << "no explanation\n";
    return kExitFailure;
  }
  for (const Explanation& e : es) std::cout << to_string(e) << "\n";
  return kExitOk;
}

int run_default(const std::string& file, const std::string& query, const Globals& g) {
  DefaultTheory t = load_default_theory(read_file(file), file);
  DefaultVerdict v = default_conclusions(t, parse_term(query), g.limits());
  std::cout << to_string(v.status) << ": " << v.justification << "\n";
  return v.status == DefaultStatus::Holds ? kExitOk : kExitFailure;
}

// `{X -> a, Y -> b}` in the order the variables occur in `c`.
std::string binding_text(const Substitution& th, const Clause& c) {
  std::string out;
  for (const Term& v : variables_of(c)) {
    if (!th.binds(v)) continue;
    out += (out.empty() ? "" : ", ") + to_string(v) + " -> " + to_string(th.apply(v));
  }
  return "{" + out + "}";
}

int run_compare(const std::string& file) {
  std::vector<Clause> cs = parse_clauses(read_file(file), file);
  if (cs.size() != 2) throw ProgramError("compare expects exactly two clauses, found " + std::to_string(cs.size()));
  std::cout << "first is " << to_string(generality_check(cs[0], cs[1])) << "\n";
  if (auto th = theta_subsumes(cs[0], cs[1])) std::cout << "first subsumes second with " << binding_text(*th, cs[0]) << "\n";
  if (auto th = theta_subsumes(cs[1], cs[0])) std::cout << "second subsumes first with " << binding_text(*th, cs[1]) << "\n";
  std::cout << "lgg: " << clause_text(lgg_clauses(cs[0], cs[1])) << "\n";
  return kExitOk;
}

int run_parse(const std::string& file, const std::string& nt, const std::string& sentence, const Globals& g) {
  Grammar gr = load_grammar(read_file(file));
  ParseOutcome r = parse(gr, parse_term(nt), split_words(sentence), g.limits(), g.strat());
  for (const ParseResult& p : r.results) std::cout << to_string(p.tree) << "\n";
  if (r.end == StreamEnd::ResourcesExhausted) std::cout << "% resources exhausted\n";
  std::cout << r.results.size() << (r.results.size() == 1 ? " parse\n" : " parses\n");
  return r.results.empty() ? kExitFailure : kExitOk;
}

int run_generate(const std::string& file, const std::string& nt, std::size_t max_len, const Globals& g) {
  Grammar gr = load_grammar(read_file(file));
  for (const Sentence& s : generate(gr, parse_term(nt), max_len, g.limits()))
    std::cout << (s.empty() ? "[]" : join_words(s)) << "\n";
  return kExitOk;
}

int run_session(const Globals& g) {
  SessionState st;
  st.strategy = g.strat();
  st.limits = g.limits();
  st.occurs_check = !g.no_occurs_check;
  st.trace = g.trace;
  st.quiet = g.quiet;
  Session s(st, std::cout, std::cerr);
  for (const std::string& f : g.consult) {
    int rc = guarded("", [&] {
      s.consult_file(f);
      return kExitOk;
    });
    if (rc != kExitOk) return rc;
  }
  if (g.goals.empty()) {
    bool interactive = isatty(0);
    if (interactive && !g.quiet) std::cout << "simplylog (type halt. to leave)\n";
    s.repl(std::cin, !interactive);
    return kExitOk;
  }
  int worst = kExitOk;
  for (const std::string& goal : g.goals) worst = std::max(worst, s.run_goal(goal));
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logic programming engine and reasoning toolkit."};
  app.require_subcommand(0, 1);
  Globals g;
  app.add_option("--consult", g.consult, "Programme file to load (repeatable)");
  app.add_option("--goal", g.goals, "Query to run instead of starting the REPL (repeatable)");
  app.add_option("--strategy", g.strategy, "Search strategy")->check(CLI::IsMember({"dfs", "bfs", "id"}));
  app.add_option("--max-depth", g.max_depth, "Resolution depth limit");
  app.add_option("--max-nodes", g.max_nodes, "Goal selection limit");
  app.add_flag("--no-occurs-check", g.no_occurs_check, "Unify without the occurs check");
  app.add_flag("--trace", g.trace, "Print Call/Exit/Fail/Redo events");
  app.add_flag("--quiet", g.quiet, "Suppress banners and acknowledgements");

  std::string file, goal, kind = "a-star", nt = "s", sentence, query;
  std::size_t depth = 3, beam = 2, max_len = 4, max_steps = 100000;
  std::optional<std::size_t> budget, max_body, max_clauses, max_answers;
  bool json = false, equality = false;

  auto* clausify = app.add_subcommand("clausify", "Clausal form of each formula in a file");
  clausify->add_option("file", file)->required();
  auto* complete = app.add_subcommand("complete", "Clark completion of a programme");
  complete->add_option("file", file)->required();
  complete->add_flag("--equality", equality, "Also print the equality theory");
  auto* model = app.add_subcommand("model", "Least Herbrand model of a definite programme");
  model->add_option("file", file)->required();
  model->add_option("--depth", depth, "Herbrand term depth bound");
  auto* refute = app.add_subcommand("refute", "Resolution refutation of a clause set");
  refute->add_option("file", file)->required();
  refute->add_flag("--json", json, "Structured refutation export");
  refute->add_option("--max-steps", max_steps, "Clause budget");
  auto* search = app.add_subcommand("search", "Search a graph problem file");
  search->add_option("file", file)->required();
  search->add_option("--kind", kind, "Search kind")
      ->check(CLI::IsMember({"dfs", "bfs", "id", "greedy", "a-star", "beam", "hill-climb"}));
  search->add_option("--beam-width", beam, "Beam width");
  search->add_option("--max-expanded", budget, "Expansion budget");
  auto* sldtree = app.add_subcommand("sldtree", "Export the SLD tree of a query");
  sldtree->add_option("file", file)->required();
  sldtree->add_option("--goal", goal)->required();
  sldtree->add_option("--depth", depth, "Tree depth bound");
  sldtree->add_flag("--json", json, "Structured export");
  auto* proof = app.add_subcommand("proof", "Export the proof tree of the first answer");
  proof->add_option("file", file)->required();
  proof->add_option("--goal", goal)->required();
  proof->add_flag("--json", json, "Structured export");
  auto* induce_cmd = app.add_subcommand("induce", "Learn clauses from examples");
  induce_cmd->add_option("file", file)->required();
  induce_cmd->add_option("--max-body", max_body, "Body literal bound");
  induce_cmd->add_option("--max-clauses", max_clauses, "Hypothesis size bound");
  auto* abduce_cmd = app.add_subcommand("abduce", "Abductive explanations of a goal");
  abduce_cmd->add_option("file", file)->required();
  abduce_cmd->add_option("--goal", goal)->required();
  abduce_cmd->add_option("--max", max_answers, "Stop after this many explanations");
  auto* deflt = app.add_subcommand("default", "Evaluate a query against a default theory");
  deflt->add_option("file", file)->required();
  deflt->add_option("--query", query)->required();
  auto* compare = app.add_subcommand("compare", "Generality order and lgg of two clauses");
  compare->add_option("file", file)->required();
  auto* parse_cmd = app.add_subcommand("parse", "Parse a sentence with a grammar file");
  parse_cmd->add_option("file", file)->required();
  parse_cmd->add_option("--nt", nt, "Start nonterminal");
  parse_cmd->add_option("--sentence", sentence)->required();
  auto* gen_cmd = app.add_subcommand("generate", "Sentences of a grammar up to a length");
  gen_cmd->add_option("file", file)->required();
  gen_cmd->add_option("--nt", nt, "Start nonterminal");
  gen_cmd->add_option("--max-len", max_len, "Longest sentence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  if (*clausify) return guarded(file, [&] { return run_clausify(file); });
  if (*complete) return guarded(file, [&] { return run_complete(file, equality); });
  if (*model) return guarded(file, [&] { return run_model(file, depth); });
  if (*refute) return guarded(file, [&] { return run_refute(file, json, max_steps); });
  if (*search) return guarded(file, [&] { return run_search(file, kind, beam, budget); });
  if (*sldtree) return guarded(file, [&] { return run_sldtree(file, goal, depth, json, g); });
  if (*proof) return guarded(file, [&] { return run_proof(file, goal, json, g); });
  if (*induce_cmd) return guarded(file, [&] { return run_induce(file, max_body, max_clauses, g); });
  if (*abduce_cmd) return guarded(file, [&] { return run_abduce(file, goal, max_answers, g); });
  if (*deflt) return guarded(file, [&] { return run_default(file, query, g); });
  if (*compare) return guarded(file, [&] { return run_compare(file); });
  if (*parse_cmd) return guarded(file, [&] { return run_parse(file, nt, sentence, g); });
  if (*gen_cmd) return guarded(file, [&] { return run_generate(file, nt, max_len, g); });
  return run_session(g);
}
