#include "simplylog/program.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "simplylog/error.hpp"
#include "simplylog/reader.hpp"

namespace slog {

namespace {

void flatten_conj(const Term& t, std::vector<Term>& out) {
  if (t.is_compound() && t.arity() == 2 && t.name() == ",") {
    flatten_conj(t.arg(0), out);
    flatten_conj(t.arg(1), out);
    return;
  }
  if (t.is_atom() && t.name() == "true") return;
  out.push_back(t);
}

void flatten_disj(const Term& t, std::vector<Term>& out) {
  if (t.is_compound() && t.arity() == 2 && t.name() == ";") {
    flatten_disj(t.arg(0), out);
    flatten_disj(t.arg(1), out);
    return;
  }
  out.push_back(t);
}

std::string literal_text(const Term& t) {
  return write_term(t, OperatorTable::standard(), WriteOptions{}, 999);
}

}  // namespace

std::vector<Term> conjuncts(const Term& t) {
  std::vector<Term> out;
  flatten_conj(t, out);
  return out;
}

Term conjunction(const std::vector<Term>& goals) {
  if (goals.empty()) return Term::atom("true");
  Term acc = goals.back();
  for (std::size_t i = goals.size() - 1; i-- > 0;) acc = Term::compound(",", {goals[i], acc});
  return acc;
}

Clause Clause::from_term(const Term& t) {
  if (t.is_compound() && t.name() == ":-" && t.arity() == 2) {
    Clause c;
    flatten_disj(t.arg(0), c.head);
    c.body = conjuncts(t.arg(1));
    return c;
  }
  if (t.is_compound() && t.name() == ":-" && t.arity() == 1) return denial(conjuncts(t.arg(0)));
  Clause c;
  flatten_disj(t, c.head);
  return c;
}

bool Clause::is_ground() const {
  for (const Term& h : head)
    if (!h.is_ground()) return false;
  for (const Term& b : body)
    if (!b.is_ground()) return false;
  return true;
}

Term Clause::to_term() const {
  Term h;
  if (!head.empty()) {
    h = head.back();
    for (std::size_t i = head.size() - 1; i-- > 0;) h = Term::compound(";", {head[i], h});
  }
  if (body.empty()) return head.empty() ? Term::atom("[]") : h;
  Term b = conjunction(body);
  if (head.empty()) return Term::compound(":-", {b});
  return Term::compound(":-", {h, b});
}

std::string to_string(const Clause& c) {
  if (c.is_empty()) return "[]";
  std::string out;
  for (std::size_t i = 0; i < c.head.size(); ++i) {
    if (i) out += " ; ";
    out += literal_text(c.head[i]);
  }
  if (!c.body.empty()) {
    out += c.head.empty() ? ":- " : " :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) out += ", ";
      out += literal_text(c.body[i]);
    }
  }
  return out + ".";
}

std::vector<Term> variables_of(const Clause& c) {
  std::vector<Term> out;
  for (const Term& h : c.head) collect_variables(h, out);
  for (const Term& b : c.body) collect_variables(b, out);
  return out;
}

Clause apply(const Substitution& s, const Clause& c) { return Clause{s.apply(c.head), s.apply(c.body)}; }

Clause rename_apart(const Clause& c, VarSupply& supply) {
  Substitution renaming;
  for (const Term& v : variables_of(c)) renaming.bind(v, supply.fresh());
  return apply(renaming, c);
}

Clause canonical(const Clause& c) {
  auto norm = [](std::vector<Term> v) {
    std::sort(v.begin(), v.end(), TermLess{});
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  return Clause{norm(c.head), norm(c.body)};
}

namespace {

using VarMap = std::unordered_map<VarId, VarId>;

bool variant_term(const Term& a, const Term& b, VarMap& fwd, VarMap& back) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      auto f = fwd.find(a.var_id());
      auto r = back.find(b.var_id());
      if (f == fwd.end() && r == back.end()) {
        fwd.emplace(a.var_id(), b.var_id());
        back.emplace(b.var_id(), a.var_id());
        return true;
      }
      return f != fwd.end() && r != back.end() && f->second == b.var_id() && r->second == a.var_id();
    }
    case Term::Kind::Int:
      return a.value() == b.value();
    case Term::Kind::Atom:
      return a.name() == b.name();
    case Term::Kind::Compound:
      if (a.arity() != b.arity() || a.name() != b.name()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (!variant_term(a.arg(i), b.arg(i), fwd, back)) return false;
      return true;
  }
  return false;
}

/// Backtracking bijection between the literal lists `as` and `bs`.
bool variant_lits(const std::vector<Term>& as, const std::vector<Term>& bs, std::size_t i,
                  std::vector<bool>& used, VarMap& fwd, VarMap& back,
                  const std::function<bool(VarMap&, VarMap&)>& rest) {
  if (i == as.size()) return rest(fwd, back);
  for (std::size_t j = 0; j < bs.size(); ++j) {
    if (used[j]) continue;
    VarMap f2 = fwd, b2 = back;
    if (!variant_term(as[i], bs[j], f2, b2)) continue;
    used[j] = true;
    if (variant_lits(as, bs, i + 1, used, f2, b2, rest)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

bool clause_variant(const Clause& a0, const Clause& b0) {
  Clause a = canonical(a0), b = canonical(b0);
  if (a.head.size() != b.head.size() || a.body.size() != b.body.size()) return false;
  std::vector<bool> used_head(b.head.size(), false);
  VarMap fwd, back;
  return variant_lits(a.head, b.head, 0, used_head, fwd, back, [&](VarMap& f, VarMap& r) {
    std::vector<bool> used_body(b.body.size(), false);
    return variant_lits(a.body, b.body, 0, used_body, f, r, [](VarMap&, VarMap&) { return true; });
  });
}

// ---------------------------------------------------------------------------

Program::Program(std::vector<Clause> clauses) {
  for (Clause& c : clauses) add(std::move(c));
}

const std::vector<std::size_t>& Program::clauses_for(const PredKey& key) const {
  static const std::vector<std::size_t> none;
  auto it = index_.find(key);
  return it == index_.end() ? none : it->second;
}

bool Program::defines(const PredKey& key) const { return index_.count(key) || declared_.count(key); }

void Program::add(Clause c) {
  for (const Term& h : c.head) {
    if (!h.is_callable()) throw TypeError("clause head must be callable: " + to_string(h));
  }
  std::size_t pos = clauses_.size();
  if (c.head.size() == 1) index_[PredKey::of(c.head.front())].push_back(pos);
  clauses_.push_back(std::move(c));
}

void Program::add_all(const std::vector<Clause>& cs) {
  for (const Clause& c : cs) add(c);
}

bool Program::is_definite() const {
  return std::all_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.is_definite(); });
}

std::vector<PredKey> Program::predicates() const {
  std::vector<PredKey> out;
  std::set<PredKey> seen;
  auto note = [&](const Term& t) {
    if (!t.is_callable()) return;
    PredKey k = PredKey::of(t);
    if (seen.insert(k).second) out.push_back(k);
  };
  for (const Clause& c : clauses_) {
    for (const Term& h : c.head) note(h);
    for (const Term& b : c.body) note(b);
  }
  return out;
}

}  // namespace slog
