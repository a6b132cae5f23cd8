#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simplylog/error.hpp"
#include "simplylog/formula.hpp"
#include "simplylog/term.hpp"

namespace slog {

enum class TokenKind { Atom, Variable, Integer, Punct, QuotedAtom, End };

struct Token {
  TokenKind kind;
  std::string text;
  int line = 1;
  int column = 1;
  /// Whitespace or a comment precedes this token. Distinguishes `f(` from
  /// `f (` and `-1` from `- 1`.
  bool layout_before = false;

  bool is_punct(std::string_view p) const { return kind == TokenKind::Punct && text == p; }
};

/// Splits text into tokens; comments are discarded. Throws SyntaxError on an
/// unterminated quoted atom or block comment.
std::vector<Token> tokenize(std::string_view text);

enum class OpType { xfx, xfy, yfx, fy, fx, xf, yf };

struct OpDef {
  int priority;
  OpType type;
};

/// Fixed operator table; at most one prefix, infix and postfix definition
/// per name.
class OperatorTable {
 public:
  static const OperatorTable& standard();

  /// Throws std::invalid_argument on a bad priority or duplicate class.
  void add(const std::string& name, int priority, OpType type);

  std::optional<OpDef> prefix(const std::string& name) const;
  std::optional<OpDef> infix(const std::string& name) const;
  std::optional<OpDef> postfix(const std::string& name) const;
  bool is_op(const std::string& name) const;

 private:
  std::map<std::string, OpDef> prefix_, infix_, postfix_;
};

/// Parses one term followed by an end token. Variables with the same name
/// denote the same variable; `_` is fresh on every occurrence.
Term parse_term(const std::vector<Token>& tokens, const OperatorTable& table = OperatorTable::standard());

/// Convenience: tokenizes `text`, appending the end token if it is missing.
Term parse_term(std::string_view text, const OperatorTable& table = OperatorTable::standard());

enum class ClauseKind { Clause, Directive, DcgRule, Query };

struct SourceClause {
  Term term;
  std::string file;  // empty for interactive input
  int line = 1;
  ClauseKind kind = ClauseKind::Clause;
};

struct ParsedProgram {
  std::vector<SourceClause> clauses;
  std::vector<SyntaxError> errors;
  bool ok() const { return errors.empty(); }
};

/// Reads a whole programme. A clause with a syntax error is skipped up to
/// the next end token and parsing continues; errors accumulate.
ParsedProgram parse_program(std::string_view text, const std::string& file = "");

ClauseKind classify(const Term& t);

struct WriteOptions {
  bool quoted = true;
  /// Print '$VAR'(N) as A, B, ..., Z, A1, ...
  bool number_vars = true;
};

/// Writes `t` so that it reads back as the same term. `max_prec` is the
/// priority context: 999 for an argument position, 1200 at top level.
std::string write_term(const Term& t, const OperatorTable& table = OperatorTable::standard(),
                       WriteOptions opts = {}, int max_prec = 1200);

/// write_term with the standard table and default options.
std::string to_string(const Term& t);

/// Reads a first-order formula in functional syntax: not/1, and/2, or/2,
/// implies/2, iff/2, forall/2, exists/2, =/2; anything else is an atom.
Formula parse_formula(std::string_view text);

/// Converts an already-read term into a formula.
Formula term_to_formula(const Term& t);

}  // namespace slog
