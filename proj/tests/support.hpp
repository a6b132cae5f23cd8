#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "simplylog/program.hpp"
#include "simplylog/reader.hpp"
#include "simplylog/sld.hpp"
#include "simplylog/term.hpp"

namespace slog::testing {

inline Program program_of(std::string_view text) {
  ParsedProgram parsed = parse_program(text);
  if (!parsed.ok()) throw parsed.errors.front();
  return consult(Program{}, parsed.clauses);
}

inline std::vector<Term> goals_of(std::string_view text) { return conjuncts(parse_term(text)); }

inline Term t(std::string_view text) { return parse_term(text); }

inline std::vector<std::string> answers(const Program& p, std::string_view query, Strategy s = {},
                                        EngineLimits lim = {}) {
  std::vector<std::string> out;
  for (const Answer& a : solve_all(p, goals_of(query), s, lim).answers) out.push_back(format_bindings(a));
  return out;
}

/// Random terms over {a, b, f/1, g/2} and a small variable pool.
class TermGen {
 public:
  explicit TermGen(unsigned seed, std::vector<Term> vars) : rng_(seed), vars_(std::move(vars)) {}

  Term term(int depth) {
    int pick = uniform(0, depth > 0 ? 4 : 2);
    switch (pick) {
      case 0: return Term::atom("a");
      case 1: return Term::atom("b");
      case 2:
        if (!vars_.empty()) return vars_[uniform(0, static_cast<int>(vars_.size()) - 1)];
        return Term::atom("a");
      case 3: return Term::compound("f", {term(depth - 1)});
      default: return Term::compound("g", {term(depth - 1), term(depth - 1)});
    }
  }

  Term ground(int depth) {
    int pick = uniform(0, depth > 0 ? 3 : 1);
    switch (pick) {
      case 0: return Term::atom("a");
      case 1: return Term::atom("b");
      case 2: return Term::compound("f", {ground(depth - 1)});
      default: return Term::compound("g", {ground(depth - 1), ground(depth - 1)});
    }
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  std::vector<Term> vars_;
};

/// Every ground term over {a, b, f/1, g/2} up to the given nesting depth.
inline std::vector<Term> ground_terms(int depth) {
  std::vector<Term> level = {Term::atom("a"), Term::atom("b")};
  std::vector<Term> all = level;
  for (int d = 1; d <= depth; ++d) {
    std::vector<Term> next;
    for (const Term& x : all) next.push_back(Term::compound("f", {x}));
    for (const Term& x : all)
      for (const Term& y : all) next.push_back(Term::compound("g", {x, y}));
    for (const Term& n : next)
      if (std::find(all.begin(), all.end(), n) == all.end()) all.push_back(n);
  }
  return all;
}

}  // namespace slog::testing
