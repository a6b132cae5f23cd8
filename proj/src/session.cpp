#include "simplylog/session.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "simplylog/error.hpp"
#include "simplylog/reader.hpp"

namespace slog {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_cmd(const Term& t, const char* name, std::size_t arity) {
  return arity == 0 ? t.is_atom() && t.name() == name
                    : t.is_compound() && t.arity() == arity && t.name() == name;
}

std::optional<bool> on_off(const Term& t) {
  if (t.is_atom() && (t.name() == "on" || t.name() == "true")) return true;
  if (t.is_atom() && (t.name() == "off" || t.name() == "false")) return false;
  return std::nullopt;
}

}  // namespace

Session::Session(SessionState state, std::ostream& out, std::ostream& err)
    : state_(std::move(state)), out_(out), err_(err) {}

EngineOptions Session::options() const {
  EngineOptions o;
  o.occurs_check = state_.occurs_check;
  o.undefined_is_error = state_.undefined_is_error;
  o.trace = state_.trace;
  o.trace_out = &out_;
  return o;
}

void Session::consult_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  consult_text(buf.str(), path);
}

void Session::consult_text(std::string_view text, const std::string& file) {
  ParsedProgram pp = parse_program(text, file);
  if (!pp.ok()) {
    const SyntaxError& e = pp.errors.front();
    throw Error((file.empty() ? "" : file + ":") + e.what());
  }
  state_.program = consult(state_.program, pp.clauses);
}

int Session::run_goal(std::string_view goal) {
  std::vector<Term> goals;
  try {
    goals = conjuncts(parse_term(goal));
  } catch (const SyntaxError& e) {
    err_ << "! syntax error in goal: " << e.what() << "\n";
    return kExitError;
  }
  std::size_t count = 0;
  bool open = false;  // an answer is printed but not yet terminated
  // Trace lines are held back so they never split an answer line.
  std::ostringstream held;
  EngineOptions opts = options();
  opts.trace_out = &held;
  auto release = [&] {
    out_ << held.str();
    held.str("");
  };
  try {
    Solver solver(state_.program, goals, state_.strategy, state_.limits, opts);
    while (auto a = solver.next()) {
      if (open) out_ << " ;\n";
      release();
      ++count;
      out_ << format_bindings(*a);
      open = true;
    }
    bool exhausted = solver.end() == StreamEnd::ResourcesExhausted;
    if (open) out_ << (exhausted ? " ;\n" : ".\n");
    release();
    if (exhausted)
      out_ << "% resources exhausted\n";
    else if (!open)
      out_ << "false.\n";
  } catch (const ResourceError&) {
    if (open) out_ << " ;\n";
    release();
    out_ << "% resources exhausted\n";
  } catch (const Error& e) {
    if (open) out_ << " ;\n";
    release();
    out_.flush();
    err_ << "! " << e.what() << "\n";
    return kExitError;
  }
  return count ? kExitOk : kExitFailure;
}

void Session::repl(std::istream& in, bool echo) {
  std::string line, buffer;
  while (next_line(in, line)) {
    std::string t = trim(line);
    if (buffer.empty()) {
      if (t.empty() || t[0] == '%') continue;
      if (t.rfind("tell ", 0) == 0 || t.rfind("ask ", 0) == 0) {
        if (echo) out_ << "?- " << t << "\n";
        agent(t);
        continue;
      }
    }
    buffer += (buffer.empty() ? "" : "\n") + line;
    if (!t.empty() && t.back() == '.') {
      std::string stmt = trim(buffer);
      buffer.clear();
      if (!statement(stmt, in, echo)) return;
    }
  }
  if (!trim(buffer).empty()) out_ << "! syntax error: incomplete statement at end of input\n";
}

bool Session::next_line(std::istream& in, std::string& line) {
  if (pending_) {
    line = std::move(*pending_);
    pending_.reset();
    return true;
  }
  return static_cast<bool>(std::getline(in, line));
}

bool Session::statement(const std::string& text, std::istream& in, bool echo) {
  std::string body = text.rfind("?-", 0) == 0 ? trim(text.substr(2)) : text;
  if (echo) out_ << "?- " << body << "\n";
  Term t;
  try {
    t = parse_term(body);
  } catch (const SyntaxError& e) {
    out_ << "! syntax error: " << e.what() << "\n";
    return true;
  }
  if (is_cmd(t, "halt", 0)) return false;
  if (command(t)) return true;
  query(conjuncts(t), in, echo);
  return true;
}

bool Session::command(const Term& t) {
  auto ack = [&](const std::string& msg) {
    if (!state_.quiet) out_ << "% " << msg << "\n";
  };
  if (is_cmd(t, "consult", 1) && t.arg(0).is_atom()) {
    try {
      consult_file(t.arg(0).name());
      ack("consulted " + t.arg(0).name());
    } catch (const std::exception& e) {
      out_ << "! " << e.what() << "\n";
    }
    return true;
  }
  if (is_cmd(t, "strategy", 1) && t.arg(0).is_atom()) {
    const std::string& s = t.arg(0).name();
    if (s == "dfs")
      state_.strategy = Strategy::depth_first();
    else if (s == "bfs")
      state_.strategy = Strategy::breadth_first();
    else if (s == "id")
      state_.strategy = Strategy::iterative_deepening();
    else {
      out_ << "! unknown strategy " << s << " (use dfs, bfs or id)\n";
      return true;
    }
    ack("strategy " + s);
    return true;
  }
  if ((is_cmd(t, "max_depth", 1) || is_cmd(t, "max_nodes", 1))) {
    const Term& v = t.arg(0);
    std::optional<std::size_t> value;
    if (v.is_int() && v.value() >= 0)
      value = static_cast<std::size_t>(v.value());
    else if (!(v.is_atom() && v.name() == "none")) {
      out_ << "! " << t.name() << " expects a non-negative integer or none\n";
      return true;
    }
    (t.name() == "max_depth" ? state_.limits.max_depth : state_.limits.max_nodes) = value;
    ack(t.name() + " " + (value ? std::to_string(*value) : "none"));
    return true;
  }
  for (const char* flag : {"occurs_check", "trace", "undefined_is_error"}) {
    if (!is_cmd(t, flag, 1)) continue;
    auto v = on_off(t.arg(0));
    if (!v) {
      out_ << "! " << flag << " expects on or off\n";
      return true;
    }
    bool& field = std::string(flag) == "occurs_check" ? state_.occurs_check
                  : std::string(flag) == "trace"      ? state_.trace
                                                      : state_.undefined_is_error;
    field = *v;
    ack(std::string(flag) + (*v ? " on" : " off"));
    return true;
  }
  if (is_cmd(t, "listing", 0)) {
    for (const Clause& c : state_.program.clauses()) out_ << to_string(c) << "\n";
    return true;
  }
  return false;
}

void Session::query(const std::vector<Term>& goals, std::istream& in, bool echo) {
  try {
    Solver solver(state_.program, goals, state_.strategy, state_.limits, options());
    while (auto a = solver.next()) {
      out_ << format_bindings(*a);
      std::string reply;
      bool more = next_line(in, reply) && trim(reply) == ";";
      if (!more) {
        if (!trim(reply).empty()) pending_ = reply;
        out_ << ".\n";
        return;
      }
      out_ << (echo ? " ;\n" : "\n");
    }
    out_ << (solver.end() == StreamEnd::ResourcesExhausted ? "% resources exhausted\n" : "false.\n");
  } catch (const ResourceError&) {
    out_ << "% resources exhausted\n";
  } catch (const Error& e) {
    out_ << "! " << e.what() << "\n";
  }
}

void Session::agent(const std::string& line) {
  bool tell = line.rfind("tell ", 0) == 0;
  Sentence s = split_words(line.substr(tell ? 5 : 4));
  try {
    if (tell) {
      TellResult r = qa_tell(state_.knowledge, s);
      if (!r.accepted) {
        out_ << "! " << r.message << "\n";
        return;
      }
      state_.knowledge = r.store;
      out_ << "% added " << to_string(*r.added) << "\n";
      return;
    }
    AskResult r = qa_ask(state_.knowledge, s, state_.limits);
    switch (r.kind) {
      case AskResult::Kind::Yes: out_ << "yes.\n"; break;
      case AskResult::Kind::NoAnswerFound: out_ << "no answer found.\n"; break;
      case AskResult::Kind::Answers:
        for (const std::string& a : r.sentences) out_ << a << "\n";
        break;
      case AskResult::Kind::Rejected: out_ << "! " << r.message << "\n"; break;
    }
  } catch (const Error& e) {
    out_ << "! " << e.what() << "\n";
  }
}

}  // namespace slog
