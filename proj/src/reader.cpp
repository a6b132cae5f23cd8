#include "simplylog/reader.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace slog {

namespace {

bool is_symbol_char(char c) {
  switch (c) {
    case '+': case '-': case '*': case '/': case '\\': case '^': case '<': case '>':
    case '=': case '~': case ':': case '.': case '?': case '@': case '#': case '&': case '$':
      return true;
    default:
      return false;
  }
}

bool is_alnum_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || u >= 0x80;
}

bool is_lower_start(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::islower(u) || u >= 0x80;
}

bool is_var_start(char c) { return std::isupper(static_cast<unsigned char>(c)) || c == '_'; }

bool is_layout(char c) { return std::isspace(static_cast<unsigned char>(c)); }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      bool layout = skip_layout();
      if (pos_ >= text_.size()) break;
      Token tok = next();
      tok.layout_before = layout;
      out.push_back(std::move(tok));
    }
    return out;
  }

 private:
  char peek(std::size_t off = 0) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }
  bool at_end(std::size_t off = 0) const { return pos_ + off >= text_.size(); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool skip_layout() {
    bool skipped = pos_ == 0;
    while (!at_end()) {
      char c = peek();
      if (is_layout(c)) {
        advance();
        skipped = true;
      } else if (c == '%') {
        while (!at_end() && peek() != '\n') advance();
        skipped = true;
      } else if (c == '/' && peek(1) == '*') {
        int l = line_, col = col_;
        advance();
        advance();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (at_end()) throw SyntaxError("unterminated block comment", l, col);
          advance();
        }
        advance();
        advance();
        skipped = true;
      } else {
        break;
      }
    }
    return skipped;
  }

  Token make(TokenKind kind, std::string text, int line, int col) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.line = line;
    t.column = col;
    return t;
  }

  Token next() {
    int line = line_, col = col_;
    char c = peek();
    std::size_t start = pos_;

    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
      std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 18 && digits > std::to_string(std::numeric_limits<std::int64_t>::max()))
        throw SyntaxError("integer too large", line, col);
      return make(TokenKind::Integer, digits, line, col);
    }
    if (is_var_start(c)) {
      while (!at_end() && is_alnum_char(peek())) advance();
      return make(TokenKind::Variable, std::string(text_.substr(start, pos_ - start)), line, col);
    }
    if (is_lower_start(c)) {
      while (!at_end() && is_alnum_char(peek())) advance();
      return make(TokenKind::Atom, std::string(text_.substr(start, pos_ - start)), line, col);
    }
    if (c == '\'') return quoted(line, col);
    if (c == '"') throw SyntaxError("double-quoted strings are not supported", line, col);
    if (c == '.' && (at_end(1) || is_layout(peek(1)) || peek(1) == '%')) {
      advance();
      return make(TokenKind::End, ".", line, col);
    }
    if (is_symbol_char(c)) {
      while (!at_end() && is_symbol_char(peek())) {
        if (peek() == '/' && peek(1) == '*' && pos_ > start) break;
        advance();
      }
      return make(TokenKind::Atom, std::string(text_.substr(start, pos_ - start)), line, col);
    }
    switch (c) {
      case '!':
      case ';':
        advance();
        return make(TokenKind::Atom, std::string(1, c), line, col);
      case '(': case ')': case '[': case ']': case '{': case '}': case ',': case '|':
        advance();
        return make(TokenKind::Punct, std::string(1, c), line, col);
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
    }
  }

  Token quoted(int line, int col) {
    advance();  // opening quote
    std::string value;
    while (true) {
      if (at_end()) throw SyntaxError("unterminated quoted atom", line, col);
      char c = peek();
      if (c == '\'') {
        if (peek(1) == '\'') {
          value += '\'';
          advance();
          advance();
          continue;
        }
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (at_end()) throw SyntaxError("unterminated quoted atom", line, col);
        char e = peek();
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case '\\': value += '\\'; break;
          case '\'': value += '\''; break;
          case '\n': break;  // line continuation
          default:
            throw SyntaxError(std::string("unknown escape \\") + e, line_, col_);
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    return make(TokenKind::QuotedAtom, std::move(value), line, col);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, std::size_t begin, std::size_t end, const OperatorTable& table)
      : toks_(tokens), pos_(begin), end_(end), table_(table) {}

  Term parse_clause() {
    Term t = parse(1200).first;
    if (pos_ >= end_) {
      const Token& last = toks_[end_ - 1];
      throw SyntaxError("missing end of clause '.'", last.line, last.column);
    }
    if (toks_[pos_].kind != TokenKind::End) error("operator expected", toks_[pos_]);
    ++pos_;
    if (pos_ != end_) error("unexpected token after end of clause", toks_[pos_]);
    return t;
  }

 private:
  [[noreturn]] void error(const std::string& msg, const Token& at) const {
    throw SyntaxError(msg + " near '" + at.text + "'", at.line, at.column);
  }

  [[noreturn]] void error_eof() const {
    if (end_ == 0) throw SyntaxError("unexpected end of input", 1, 1);
    const Token& last = toks_[end_ - 1];
    throw SyntaxError("unexpected end of input", last.line, last.column);
  }

  const Token* peek(std::size_t off = 0) const {
    return pos_ + off < end_ ? &toks_[pos_ + off] : nullptr;
  }

  const Token& take() {
    if (pos_ >= end_) error_eof();
    return toks_[pos_++];
  }

  void expect_punct(std::string_view p) {
    const Token& t = take();
    if (!t.is_punct(p)) error("expected '" + std::string(p) + "'", t);
  }

  Term variable(const std::string& name) {
    if (name == "_") return Term::var("_");
    auto it = vars_.find(name);
    if (it != vars_.end()) return it->second;
    Term v = Term::var(name);
    vars_.emplace(name, v);
    return v;
  }

  /// Whether the next token can begin an operand of a prefix operator.
  bool starts_term(const Token* t) const {
    if (!t) return false;
    switch (t->kind) {
      case TokenKind::Integer:
      case TokenKind::Variable:
      case TokenKind::QuotedAtom:
        return true;
      case TokenKind::Punct:
        return t->text == "(" || t->text == "[" || t->text == "{";
      case TokenKind::Atom: {
        if (table_.prefix(t->text)) return true;
        const Token* after = pos_ + 1 < end_ ? &toks_[pos_ + 1] : nullptr;
        if (after && after->is_punct("(") && !after->layout_before) return true;
        return !table_.infix(t->text) && !table_.postfix(t->text);
      }
      case TokenKind::End:
        return false;
    }
    return false;
  }

  std::pair<Term, int> parse(int max_prec) {
    auto [left, left_prec] = parse_primary(max_prec);
    return parse_infix(std::move(left), left_prec, max_prec);
  }

  std::pair<Term, int> parse_infix(Term left, int left_prec, int max_prec) {
    while (const Token* t = peek()) {
      std::string name;
      if (t->kind == TokenKind::Atom) {
        name = t->text;
      } else if (t->is_punct(",")) {
        name = ",";
      } else {
        break;
      }
      if (auto def = table_.infix(name)) {
        int p = def->priority;
        int lmax = def->type == OpType::yfx ? p : p - 1;
        int rmax = def->type == OpType::xfy ? p : p - 1;
        if (p <= max_prec && left_prec <= lmax) {
          ++pos_;
          Term right = parse(rmax).first;
          left = Term::compound(name, {std::move(left), std::move(right)});
          left_prec = p;
          continue;
        }
      }
      if (auto def = table_.postfix(name)) {
        int p = def->priority;
        int lmax = def->type == OpType::yf ? p : p - 1;
        if (p <= max_prec && left_prec <= lmax) {
          ++pos_;
          left = Term::compound(name, {std::move(left)});
          left_prec = p;
          continue;
        }
      }
      break;
    }
    return {std::move(left), left_prec};
  }

  std::pair<Term, int> parse_primary(int max_prec) {
    const Token& tok = take();
    switch (tok.kind) {
      case TokenKind::Integer:
        return {Term::integer(std::stoll(tok.text)), 0};
      case TokenKind::Variable:
        return {variable(tok.text), 0};
      case TokenKind::End:
        error("unexpected end of clause", tok);
      case TokenKind::Punct:
        return parse_punct(tok);
      case TokenKind::Atom:
      case TokenKind::QuotedAtom:
        return parse_name(tok, max_prec);
    }
    error("unexpected token", tok);
  }

  std::pair<Term, int> parse_punct(const Token& tok) {
    if (tok.text == "(") {
      Term t = parse(1200).first;
      expect_punct(")");
      return {t, 0};
    }
    if (tok.text == "[") {
      const Token* n = peek();
      if (n && n->is_punct("]")) {
        ++pos_;
        return name_or_compound("[]", tok);
      }
      std::vector<Term> items{parse(999).first};
      Term tail = Term::nil();
      while (true) {
        const Token& sep = take();
        if (sep.is_punct(",")) {
          items.push_back(parse(999).first);
        } else if (sep.is_punct("|")) {
          tail = parse(999).first;
          expect_punct("]");
          break;
        } else if (sep.is_punct("]")) {
          break;
        } else {
          error("expected ',', '|' or ']' in list", sep);
        }
      }
      return {Term::list(items, tail), 0};
    }
    if (tok.text == "{") {
      const Token* n = peek();
      if (n && n->is_punct("}")) {
        ++pos_;
        return name_or_compound("{}", tok);
      }
      Term t = parse(1200).first;
      expect_punct("}");
      return {Term::compound("{}", {t}), 0};
    }
    error("unexpected '" + tok.text + "'", tok);
  }

  std::pair<Term, int> name_or_compound(const std::string& name, const Token& tok) {
    const Token* n = peek();
    if (n && n->is_punct("(") && !n->layout_before) {
      ++pos_;
      std::vector<Term> args{parse(999).first};
      while (true) {
        const Token& sep = take();
        if (sep.is_punct(",")) {
          args.push_back(parse(999).first);
        } else if (sep.is_punct(")")) {
          break;
        } else {
          error("expected ',' or ')' in arguments", sep);
        }
      }
      return {Term::compound(name, std::move(args)), 0};
    }
    (void)tok;
    return {Term::atom(name), 0};
  }

  std::pair<Term, int> parse_name(const Token& tok, int max_prec) {
    const Token* n = peek();
    if (n && n->is_punct("(") && !n->layout_before) return name_or_compound(tok.text, tok);
    if (tok.kind == TokenKind::Atom) {
      if (tok.text == "-" && n && n->kind == TokenKind::Integer && !n->layout_before) {
        ++pos_;
        std::string digits = "-" + n->text;
        return {Term::integer(std::stoll(digits)), 0};
      }
      if (auto def = table_.prefix(tok.text); def && starts_term(n)) {
        int p = def->priority;
        if (p > max_prec) p = 999;
        if (p > max_prec) error("operator priority clash", tok);
        int arg_max = def->type == OpType::fy ? p : p - 1;
        Term operand = parse(arg_max).first;
        return {Term::compound(tok.text, {std::move(operand)}), p};
      }
    }
    return {Term::atom(tok.text), 0};
  }

  const std::vector<Token>& toks_;
  std::size_t pos_;
  std::size_t end_;
  const OperatorTable& table_;
  std::unordered_map<std::string, Term> vars_;
};

// ---------------------------------------------------------------------------

bool is_solo_atom(const std::string& s) { return s == "[]" || s == "!" || s == ";" || s == "{}"; }

bool needs_quotes(const std::string& s) {
  if (s.empty()) return true;
  if (is_solo_atom(s)) return false;
  if (is_lower_start(s[0])) {
    for (char c : s)
      if (!is_alnum_char(c)) return true;
    return false;
  }
  bool all_symbol = true;
  for (char c : s) all_symbol = all_symbol && is_symbol_char(c);
  if (all_symbol) return s == "." || s.find("/*") != std::string::npos;
  return true;
}

std::string quote_atom(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "\\'";
    else if (c == '\\') out += "\\\\";
    else if (c == '\n') out += "\\n";
    else if (c == '\t') out += "\\t";
    else out += c;
  }
  return out + "'";
}

bool is_alpha_name(const std::string& s) { return !s.empty() && is_lower_start(s[0]); }

class Writer {
 public:
  Writer(const OperatorTable& table, WriteOptions opts) : table_(table), opts_(opts) {}

  std::string result() && { return std::move(out_); }

  void write(const Term& t, int max_prec) {
    switch (t.kind()) {
      case Term::Kind::Var:
        emit(var_name(t));
        return;
      case Term::Kind::Int:
        emit(std::to_string(t.value()));
        return;
      case Term::Kind::Atom:
        write_atom(t.name(), max_prec);
        return;
      case Term::Kind::Compound:
        write_compound(t, max_prec);
        return;
    }
  }

 private:
  static std::string var_name(const Term& t) {
    if (t.name().empty() || t.name() == "_") return "_G" + std::to_string(t.var_id());
    return t.name();
  }

  void emit(const std::string& s) {
    if (s.empty()) return;
    if (!out_.empty()) {
      char last = out_.back();
      char first = s[0];
      if ((is_symbol_char(last) && is_symbol_char(first)) || (is_alnum_char(last) && is_alnum_char(first)))
        out_ += ' ';
    }
    out_ += s;
  }

  std::string atom_text(const std::string& name) const {
    return opts_.quoted && needs_quotes(name) ? quote_atom(name) : name;
  }

  void write_atom(const std::string& name, int max_prec) {
    int p = 0;
    if (auto d = table_.infix(name)) p = std::max(p, d->priority);
    if (auto d = table_.prefix(name)) p = std::max(p, d->priority);
    if (auto d = table_.postfix(name)) p = std::max(p, d->priority);
    if (name == ",") {
      emit("','");
      return;
    }
    if (name == "|") {
      emit("'|'");
      return;
    }
    if (p > max_prec) {
      emit("(");
      emit(atom_text(name));
      emit(")");
    } else {
      emit(atom_text(name));
    }
  }

  void write_compound(const Term& t, int max_prec) {
    const std::string& f = t.name();
    if (t.is_cons()) {
      write_list(t);
      return;
    }
    if (f == "{}" && t.arity() == 1) {
      emit("{");
      write(t.arg(0), 1200);
      emit("}");
      return;
    }
    if (opts_.number_vars && f == "$VAR" && t.arity() == 1 && t.arg(0).is_int() && t.arg(0).value() >= 0) {
      std::int64_t n = t.arg(0).value();
      std::string s(1, static_cast<char>('A' + n % 26));
      if (n >= 26) s += std::to_string(n / 26);
      emit(s);
      return;
    }
    if (t.arity() == 2) {
      if (auto def = table_.infix(f)) {
        int p = def->priority;
        int lp = def->type == OpType::yfx ? p : p - 1;
        int rp = def->type == OpType::xfy ? p : p - 1;
        bool paren = p > max_prec;
        if (paren) emit("(");
        write(t.arg(0), lp);
        if (f == ",") {
          out_ += ",";
        } else if (is_alpha_name(f)) {
          out_ += " " + atom_text(f) + " ";
        } else {
          emit(atom_text(f));
        }
        write(t.arg(1), rp);
        if (paren) emit(")");
        return;
      }
    }
    if (t.arity() == 1) {
      if (auto def = table_.prefix(f)) {
        int p = def->priority;
        int ap = def->type == OpType::fy ? p : p - 1;
        bool paren = p > max_prec;
        if (paren) emit("(");
        emit(atom_text(f));
        const Term& a = t.arg(0);
        bool space = a.is_int() || is_alpha_name(f) || operand_opens_paren(a, ap) ||
                     (a.is_atom() && table_.is_op(a.name()));
        if (space) out_ += ' ';
        write(a, ap);
        if (paren) emit(")");
        return;
      }
      if (auto def = table_.postfix(f)) {
        int p = def->priority;
        int ap = def->type == OpType::yf ? p : p - 1;
        bool paren = p > max_prec;
        if (paren) emit("(");
        write(t.arg(0), ap);
        emit(atom_text(f));
        if (paren) emit(")");
        return;
      }
    }
    emit(atom_text(f));
    out_ += "(";
    for (std::size_t i = 0; i < t.arity(); ++i) {
      if (i) out_ += ",";
      write(t.arg(i), 999);
    }
    out_ += ")";
  }

  int term_priority(const Term& t) const {
    if (t.is_compound() && !t.is_cons()) {
      if (t.arity() == 2)
        if (auto d = table_.infix(t.name())) return d->priority;
      if (t.arity() == 1) {
        if (auto d = table_.prefix(t.name())) return d->priority;
        if (auto d = table_.postfix(t.name())) return d->priority;
      }
    }
    return 0;
  }

  bool operand_opens_paren(const Term& t, int prec) const { return term_priority(t) > prec; }

  void write_list(const Term& t) {
    emit("[");
    Term cur = t;
    bool first = true;
    while (cur.is_cons()) {
      if (!first) out_ += ",";
      write(cur.arg(0), 999);
      first = false;
      cur = cur.arg(1);
    }
    if (!cur.is_nil()) {
      out_ += "|";
      write(cur, 999);
    }
    out_ += "]";
  }

  const OperatorTable& table_;
  WriteOptions opts_;
  std::string out_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

const OperatorTable& OperatorTable::standard() {
  static const OperatorTable table = [] {
    OperatorTable t;
    t.add(":-", 1200, OpType::xfx);
    t.add("-->", 1200, OpType::xfx);
    t.add(":-", 1200, OpType::fx);
    t.add("?-", 1200, OpType::fx);
    t.add(";", 1100, OpType::xfy);
    t.add("->", 1050, OpType::xfy);
    t.add(",", 1000, OpType::xfy);
    t.add("\\+", 900, OpType::fy);
    t.add("=>", 800, OpType::xfx);
    for (const char* op : {"=", "\\=", "=..", "==", "\\==", "@<", "@>", "@=<", "@>=", "is", "=:=", "=\\=", "<",
                           ">", "=<", ">="})
      t.add(op, 700, OpType::xfx);
    t.add("+", 500, OpType::yfx);
    t.add("-", 500, OpType::yfx);
    t.add("*", 400, OpType::yfx);
    t.add("/", 400, OpType::yfx);
    t.add("//", 400, OpType::yfx);
    t.add("mod", 400, OpType::yfx);
    t.add("-", 200, OpType::fy);
    return t;
  }();
  return table;
}

void OperatorTable::add(const std::string& name, int priority, OpType type) {
  if (priority < 1 || priority > 1200) throw std::invalid_argument("operator priority out of range");
  std::map<std::string, OpDef>* target = nullptr;
  switch (type) {
    case OpType::xfx: case OpType::xfy: case OpType::yfx: target = &infix_; break;
    case OpType::fy: case OpType::fx: target = &prefix_; break;
    case OpType::xf: case OpType::yf: target = &postfix_; break;
  }
  if (!target->emplace(name, OpDef{priority, type}).second)
    throw std::invalid_argument("duplicate operator definition for " + name);
}

namespace {
std::optional<OpDef> find_op(const std::map<std::string, OpDef>& m, const std::string& name) {
  auto it = m.find(name);
  if (it == m.end()) return std::nullopt;
  return it->second;
}
}  // namespace

std::optional<OpDef> OperatorTable::prefix(const std::string& name) const { return find_op(prefix_, name); }
std::optional<OpDef> OperatorTable::infix(const std::string& name) const { return find_op(infix_, name); }
std::optional<OpDef> OperatorTable::postfix(const std::string& name) const { return find_op(postfix_, name); }
bool OperatorTable::is_op(const std::string& name) const {
  return prefix_.count(name) || infix_.count(name) || postfix_.count(name);
}

Term parse_term(const std::vector<Token>& tokens, const OperatorTable& table) {
  if (tokens.empty()) throw SyntaxError("unexpected end of input", 1, 1);
  return Parser(tokens, 0, tokens.size(), table).parse_clause();
}

Term parse_term(std::string_view text, const OperatorTable& table) {
  std::vector<Token> tokens = tokenize(text);
  if (tokens.empty() || tokens.back().kind != TokenKind::End) {
    Token end;
    end.kind = TokenKind::End;
    end.text = ".";
    if (!tokens.empty()) {
      end.line = tokens.back().line;
      end.column = tokens.back().column + static_cast<int>(tokens.back().text.size());
    }
    end.layout_before = true;
    tokens.push_back(end);
  }
  return parse_term(tokens, table);
}

ClauseKind classify(const Term& t) {
  if (t.is_compound() && t.arity() == 2 && t.name() == "-->") return ClauseKind::DcgRule;
  if (t.is_compound() && t.arity() == 1 && t.name() == ":-") return ClauseKind::Directive;
  if (t.is_compound() && t.arity() == 1 && t.name() == "?-") return ClauseKind::Query;
  return ClauseKind::Clause;
}

ParsedProgram parse_program(std::string_view text, const std::string& file) {
  ParsedProgram result;
  std::vector<Token> tokens;
  try {
    tokens = tokenize(text);
  } catch (const SyntaxError& e) {
    result.errors.push_back(e);
    return result;
  }
  const OperatorTable& table = OperatorTable::standard();
  std::size_t start = 0;
  while (start < tokens.size()) {
    std::size_t stop = start;
    while (stop < tokens.size() && tokens[stop].kind != TokenKind::End) ++stop;
    std::size_t end = stop < tokens.size() ? stop + 1 : stop;
    try {
      if (stop == start) throw SyntaxError("empty clause", tokens[start].line, tokens[start].column);
      Term t = Parser(tokens, start, end, table).parse_clause();
      SourceClause sc;
      sc.term = t;
      sc.file = file;
      sc.line = tokens[start].line;
      sc.kind = classify(t);
      result.clauses.push_back(std::move(sc));
    } catch (const SyntaxError& e) {
      result.errors.push_back(e);
    }
    start = end;
  }
  return result;
}

std::string write_term(const Term& t, const OperatorTable& table, WriteOptions opts, int max_prec) {
  Writer w(table, opts);
  w.write(t, max_prec);
  return std::move(w).result();
}

std::string to_string(const Term& t) { return write_term(t); }

// ---------------------------------------------------------------------------

Formula term_to_formula(const Term& t) {
  auto bad = [&](const std::string& why) -> SyntaxError {
    return SyntaxError(why + " in formula " + to_string(t), 1, 1);
  };
  if (t.is_var()) throw bad("variable in formula position");
  if (t.is_int()) throw bad("integer in formula position");
  const std::string& f = t.name();
  if (t.is_compound()) {
    if (f == "not" && t.arity() == 1) return Formula::negation(term_to_formula(t.arg(0)));
    if (t.arity() == 2) {
      if (f == "and") return Formula::conj(term_to_formula(t.arg(0)), term_to_formula(t.arg(1)));
      if (f == "or") return Formula::disj(term_to_formula(t.arg(0)), term_to_formula(t.arg(1)));
      if (f == "implies") return Formula::implies(term_to_formula(t.arg(0)), term_to_formula(t.arg(1)));
      if (f == "iff") return Formula::iff(term_to_formula(t.arg(0)), term_to_formula(t.arg(1)));
      if (f == "=") return Formula::equals(t.arg(0), t.arg(1));
      if (f == "forall" || f == "exists") {
        if (!t.arg(0).is_var()) throw bad("quantifier without a variable");
        Formula body = term_to_formula(t.arg(1));
        return f == "forall" ? Formula::forall(t.arg(0), body) : Formula::exists(t.arg(0), body);
      }
    }
    // Clause syntax is not a formula; connectives are written and/or/implies.
    if (f == ":-" || f == "-->" || f == "?-" || f == "," || f == ";" || f == "->")
      throw bad("clause syntax '" + f + "'");
  }
  return Formula::atom(t);
}

Formula parse_formula(std::string_view text) { return term_to_formula(parse_term(text)); }

}  // namespace slog
