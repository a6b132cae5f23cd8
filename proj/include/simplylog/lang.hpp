#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simplylog/program.hpp"
#include "simplylog/sld.hpp"
#include "simplylog/term.hpp"

namespace slog {

struct GrammarItem {
  enum class Kind { NonTerminal, Terminals, Goal };
  Kind kind;
  Term term;  // nonterminal, proper list of atoms, or the goal inside {}
};

/// `lhs --> rhs`. Alternatives are separate rules.
struct GrammarRule {
  Term lhs;
  std::vector<GrammarItem> rhs;

  /// Reads a `-->`/2 term. Throws ProgramError on a malformed body element
  /// (variable, number, improper list, disjunction).
  static GrammarRule from_term(const Term& t);
};

/// Difference-list translation: `s --> np, vp` gives
/// `s(S0,S2) :- np(S0,S1), vp(S1,S2)`; leading terminals fold into the head.
Clause dcg_translate(const GrammarRule& r);

using Sentence = std::vector<std::string>;

/// Grammar rules plus the ordinary clauses their brace goals call.
struct Grammar {
  std::vector<GrammarRule> rules;
  std::shared_ptr<const Program> program;

  /// Nonterminals defined by the rules, with their source arity.
  std::set<PredKey> nonterminals() const;
};

/// Builds a grammar from programme text: `-->` rules are translated, other
/// clauses kept as helpers.
Grammar load_grammar(std::string_view text);
Grammar make_grammar(std::vector<GrammarRule> rules, const Program& helpers = {});

struct ParseTree {
  /// Nonterminal with threading arguments hidden, or a word leaf.
  Term label;
  bool word = false;
  std::vector<ParseTree> children;
};

/// `s(np(the,n(dog)),vp(barks))` with words as atoms.
std::string to_string(const ParseTree& t);

struct ParseResult {
  Substitution bindings;  // over the variables of the nonterminal
  ParseTree tree;
};

struct ParseOutcome {
  std::vector<ParseResult> results;
  StreamEnd end = StreamEnd::Exhausted;
};

/// One result per derivation of `s` from `nt`.
ParseOutcome parse(const Grammar& g, const Term& nt, const Sentence& s, EngineLimits lim = {},
                   Strategy strategy = {});

/// Number of derivations, without building trees.
std::size_t count_parses(const Grammar& g, const Term& nt, const Sentence& s, EngineLimits lim = {});

/// Distinct sentences of length <= max_len derivable from `nt`, shorter
/// first, then in derivation order.
std::vector<Sentence> generate(const Grammar& g, const Term& nt, std::size_t max_len, EngineLimits lim = {});

Sentence split_words(std::string_view text);
std::string join_words(const Sentence& s);

// ---------------------------------------------------------------------------
// Question answering over a fixed fragment: "socrates is human",
// "every human is mortal", "is socrates mortal", "who is mortal".

class KnowledgeStore {
 public:
  const Program& program() const { return program_; }
  KnowledgeStore with(Clause c) const;

 private:
  Program program_;
};

/// The agent's grammar (semantics in the extra arguments).
const Grammar& agent_grammar();

struct TellResult {
  bool accepted = false;
  KnowledgeStore store;
  std::optional<Clause> added;
  std::string message;  // rejection reason
};

TellResult qa_tell(const KnowledgeStore& k, const Sentence& s);

struct AskResult {
  enum class Kind { Yes, NoAnswerFound, Answers, Rejected };
  Kind kind = Kind::NoAnswerFound;
  std::vector<std::string> sentences;
  std::string message;
};

AskResult qa_ask(const KnowledgeStore& k, const Sentence& s, EngineLimits lim = {});

/// Longest prefix of `s` that some sentence derivable from `nt` starts with.
Sentence longest_viable_prefix(const Grammar& g, const Term& nt, const Sentence& s);

}  // namespace slog
