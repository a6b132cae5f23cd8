#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "simplylog/lang.hpp"
#include "simplylog/program.hpp"
#include "simplylog/sld.hpp"

namespace slog {

struct SessionState {
  Program program;
  Strategy strategy;
  EngineLimits limits;
  bool occurs_check = true;
  bool trace = false;
  bool undefined_is_error = true;
  bool quiet = false;
  KnowledgeStore knowledge;
};

/// Exit statuses of the command line tool.
enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitError = 2 };

/// Consults files and runs queries and REPL commands against a mutable
/// session state, writing answers to `out` and messages to `err`.
class Session {
 public:
  Session(SessionState state, std::ostream& out, std::ostream& err);

  const SessionState& state() const { return state_; }

  /// Adds the clauses of a programme file. Throws Error (a SyntaxError
  /// carries the path in its message) or std::runtime_error for an
  /// unreadable file.
  void consult_file(const std::string& path);
  void consult_text(std::string_view text, const std::string& file = "");

  /// Prints every answer of `goal`: `X = a ;` lines, the last one ending
  /// in `.`, or `true.`, `false.`, `% resources exhausted`. Returns 0 when
  /// there was an answer, 1 when there was none, 2 on an error.
  int run_goal(std::string_view goal);

  /// Reads statements until end of input or `halt.`. After each answer a
  /// query reads one line: `;` asks for more, anything else stops, and a
  /// non-blank line is then read again as the next statement. With `echo`,
  /// each statement is written back prefixed by `?- `.
  void repl(std::istream& in, bool echo);

 private:
  EngineOptions options() const;
  bool next_line(std::istream& in, std::string& line);
  /// Handles one complete statement; false on halt.
  bool statement(const std::string& text, std::istream& in, bool echo);
  bool command(const Term& t);
  void query(const std::vector<Term>& goals, std::istream& in, bool echo);
  void agent(const std::string& line);

  SessionState state_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<std::string> pending_;
};

}  // namespace slog
