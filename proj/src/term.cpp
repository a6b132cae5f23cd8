#include "simplylog/term.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_map>

namespace slog {

namespace {

std::atomic<VarId> next_var_id{1};

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term::Term() {
  static const std::shared_ptr<const Node> nil_node = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->ground = true;
    n->depth = 0;
    n->value = 0;
    n->id = 0;
    n->name = "[]";
    n->hash = mix(std::hash<std::string>{}(n->name), 2);
    return n;
  }();
  node_ = nil_node;
}

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->ground = false;
  n->depth = 0;
  n->value = 0;
  n->id = next_var_id.fetch_add(1, std::memory_order_relaxed);
  n->name = std::move(name);
  n->hash = mix(0x51ed27, n->id);
  return Term(std::move(n));
}

Term Term::atom(std::string name) {
  if (name == "[]") return Term();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->ground = true;
  n->depth = 0;
  n->value = 0;
  n->id = 0;
  n->hash = mix(std::hash<std::string>{}(name), 2);
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::integer(std::int64_t value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Int;
  n->ground = true;
  n->depth = 0;
  n->value = value;
  n->id = 0;
  n->hash = mix(0x1f, static_cast<std::size_t>(value));
  return Term(std::move(n));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (args.empty()) return atom(std::move(functor));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compound;
  n->value = 0;
  n->id = 0;
  bool ground = true;
  std::size_t depth = 0;
  std::size_t h = mix(std::hash<std::string>{}(functor), args.size() + 3);
  for (const Term& a : args) {
    ground = ground && a.is_ground();
    depth = std::max(depth, a.depth());
    h = mix(h, a.hash());
  }
  n->ground = ground;
  n->depth = depth + 1;
  n->hash = h;
  n->name = std::move(functor);
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::nil() { return Term(); }

Term Term::cons(Term head, Term tail) {
  return compound(".", {std::move(head), std::move(tail)});
}

Term Term::list(const std::vector<Term>& items, Term tail) {
  Term result = std::move(tail);
  for (auto it = items.rbegin(); it != items.rend(); ++it) result = cons(*it, result);
  return result;
}

std::optional<std::vector<Term>> Term::list_items() const {
  std::vector<Term> items;
  Term cur = *this;
  while (cur.is_cons()) {
    items.push_back(cur.arg(0));
    cur = cur.arg(1);
  }
  if (!cur.is_nil()) return std::nullopt;
  return items;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var:
      return a.var_id() == b.var_id();
    case Term::Kind::Int:
      return a.value() == b.value();
    case Term::Kind::Atom:
      return a.name() == b.name();
    case Term::Kind::Compound:
      if (a.arity() != b.arity() || a.name() != b.name()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (a.arg(i) != b.arg(i)) return false;
      return true;
  }
  return false;
}

int compare(const Term& a, const Term& b) {
  if (a.same_node(b)) return 0;
  auto rank = [](Term::Kind k) {
    switch (k) {
      case Term::Kind::Var: return 0;
      case Term::Kind::Int: return 1;
      case Term::Kind::Atom: return 2;
      case Term::Kind::Compound: return 3;
    }
    return 4;
  };
  int ra = rank(a.kind()), rb = rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case Term::Kind::Var:
      return a.var_id() == b.var_id() ? 0 : (a.var_id() < b.var_id() ? -1 : 1);
    case Term::Kind::Int:
      return a.value() == b.value() ? 0 : (a.value() < b.value() ? -1 : 1);
    case Term::Kind::Atom: {
      int c = a.name().compare(b.name());
      return c == 0 ? 0 : (c < 0 ? -1 : 1);
    }
    case Term::Kind::Compound: {
      if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
      int c = a.name().compare(b.name());
      if (c != 0) return c < 0 ? -1 : 1;
      for (std::size_t i = 0; i < a.arity(); ++i) {
        int r = compare(a.arg(i), b.arg(i));
        if (r != 0) return r;
      }
      return 0;
    }
  }
  return 0;
}

Term VarSupply::fresh() { return Term::var("_G" + std::to_string(++counter_)); }

Term VarSupply::fresh(const std::string& name_hint) {
  ++counter_;
  return Term::var(name_hint);
}

// ---------------------------------------------------------------------------
// Substitution

const Term* Substitution::lookup(VarId id) const {
  auto it = map_.find(id);
  return it == map_.end() ? nullptr : &it->second.value;
}

void Substitution::bind(const Term& var, Term value) {
  if (value.is_var() && value.var_id() == var.var_id()) {
    map_.erase(var.var_id());
    return;
  }
  map_.insert_or_assign(var.var_id(), Binding{var, std::move(value)});
}

Term Substitution::apply(const Term& t) const {
  if (t.is_ground() || map_.empty()) return t;
  if (t.is_var()) {
    const Term* v = lookup(t.var_id());
    return v ? *v : t;
  }
  // Compound with variables.
  std::vector<Term> args;
  bool changed = false;
  args.reserve(t.arity());
  for (const Term& a : t.args()) {
    Term na = apply(a);
    changed = changed || !na.same_node(a);
    args.push_back(std::move(na));
  }
  if (!changed) return t;
  return Term::compound(t.name(), std::move(args));
}

std::vector<Term> Substitution::apply(const std::vector<Term>& ts) const {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const Term& t : ts) out.push_back(apply(t));
  return out;
}

Substitution Substitution::restricted_to(const std::vector<Term>& vars) const {
  Substitution out;
  for (const Term& v : vars) {
    if (!v.is_var()) continue;
    if (const Term* b = lookup(v.var_id())) out.bind(v, *b);
  }
  return out;
}

bool operator==(const Substitution& a, const Substitution& b) {
  if (a.map_.size() != b.map_.size()) return false;
  for (const auto& [id, binding] : a.map_) {
    const Term* other = b.lookup(id);
    if (!other || *other != binding.value) return false;
  }
  return true;
}

Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [id, b] : first) out.bind(b.var, second.apply(b.value));
  for (const auto& [id, b] : second)
    if (!first.lookup(id)) out.bind(b.var, b.value);
  return out;
}

// ---------------------------------------------------------------------------
// Unification

namespace {

/// Triangular binding store used while solving; resolved into an
/// idempotent Substitution at the end.
class Bindings {
 public:
  const Term* find(VarId id) const {
    if (!index_.empty()) {
      auto it = index_.find(id);
      return it == index_.end() ? nullptr : &entries_[it->second].second;
    }
    for (const auto& e : entries_)
      if (e.first.var_id() == id) return &e.second;
    return nullptr;
  }

  void add(const Term& var, const Term& value) {
    entries_.emplace_back(var, value);
    if (!index_.empty()) {
      index_.emplace(var.var_id(), entries_.size() - 1);
    } else if (entries_.size() > 24) {
      for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].first.var_id(), i);
    }
  }

  Term walk(Term t) const {
    while (t.is_var()) {
      const Term* b = find(t.var_id());
      if (!b) break;
      t = *b;
    }
    return t;
  }

  bool occurs(VarId id, const Term& t) const {
    if (t.is_ground()) return false;
    Term w = walk(t);
    if (w.is_var()) return w.var_id() == id;
    if (!w.is_compound()) return false;
    for (const Term& a : w.args())
      if (occurs(id, a)) return true;
    return false;
  }

  Term resolve(const Term& t) const {
    if (t.is_ground()) return t;
    Term w = walk(t);
    if (!w.is_compound() || w.is_ground()) return w;
    std::vector<Term> args;
    args.reserve(w.arity());
    bool changed = false;
    for (const Term& a : w.args()) {
      Term r = resolve(a);
      changed = changed || !r.same_node(a);
      args.push_back(std::move(r));
    }
    return changed ? Term::compound(w.name(), std::move(args)) : w;
  }

  bool unify(const Term& x, const Term& y, bool occurs_check) {
    std::vector<std::pair<Term, Term>> stack{{x, y}};
    while (!stack.empty()) {
      auto [a, b] = std::move(stack.back());
      stack.pop_back();
      a = walk(a);
      b = walk(b);
      if (a.same_node(b)) continue;
      if (a.is_var() && b.is_var() && a.var_id() == b.var_id()) continue;
      if (a.is_var() || b.is_var()) {
        const Term& v = a.is_var() ? a : b;
        const Term& t = a.is_var() ? b : a;
        if (occurs_check && occurs(v.var_id(), t)) return false;
        add(v, t);
        continue;
      }
      if (a.kind() != b.kind()) return false;
      switch (a.kind()) {
        case Term::Kind::Int:
          if (a.value() != b.value()) return false;
          break;
        case Term::Kind::Atom:
          if (a.name() != b.name()) return false;
          break;
        case Term::Kind::Compound:
          if (a.arity() != b.arity() || a.name() != b.name()) return false;
          if (a.is_ground() && b.is_ground()) {
            if (a != b) return false;
            break;
          }
          for (std::size_t i = a.arity(); i-- > 0;) stack.emplace_back(a.arg(i), b.arg(i));
          break;
        case Term::Kind::Var:
          break;
      }
    }
    return true;
  }

  /// Like resolve, but a variable met again inside its own binding is left
  /// in place, so cyclic bindings from unchecked unification stay finite.
  Term resolve_guarded(const Term& t, std::vector<VarId>& active) const {
    if (t.is_ground()) return t;
    if (t.is_var()) {
      if (std::find(active.begin(), active.end(), t.var_id()) != active.end()) return t;
      const Term* b = find(t.var_id());
      if (!b) return t;
      active.push_back(t.var_id());
      Term r = resolve_guarded(*b, active);
      active.pop_back();
      return r;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const Term& a : t.args()) args.push_back(resolve_guarded(a, active));
    return Term::compound(t.name(), std::move(args));
  }

  Substitution to_substitution(bool acyclic) const {
    Substitution out;
    std::vector<VarId> active;
    for (const auto& e : entries_) {
      if (acyclic) {
        out.bind(e.first, resolve(e.second));
      } else {
        active.assign(1, e.first.var_id());
        out.bind(e.first, resolve_guarded(e.second, active));
      }
    }
    return out;
  }

 private:
  std::vector<std::pair<Term, Term>> entries_;
  std::unordered_map<VarId, std::size_t> index_;
};

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b, bool occurs_check) {
  Bindings store;
  if (!store.unify(a, b, occurs_check)) return std::nullopt;
  return store.to_substitution(occurs_check);
}

std::optional<Substitution> unify_all(const std::vector<std::pair<Term, Term>>& pairs,
                                      bool occurs_check) {
  Bindings store;
  for (const auto& [a, b] : pairs)
    if (!store.unify(a, b, occurs_check)) return std::nullopt;
  return store.to_substitution(occurs_check);
}

namespace {

bool match_into(const Term& pattern, const Term& target, Substitution& s) {
  if (pattern.is_var()) {
    if (const Term* b = s.lookup(pattern.var_id())) return *b == target;
    s.bind(pattern, target);
    return true;
  }
  if (pattern.kind() != target.kind()) return false;
  switch (pattern.kind()) {
    case Term::Kind::Int:
      return pattern.value() == target.value();
    case Term::Kind::Atom:
      return pattern.name() == target.name();
    case Term::Kind::Compound:
      if (pattern.arity() != target.arity() || pattern.name() != target.name()) return false;
      if (pattern.is_ground()) return pattern == target;
      for (std::size_t i = 0; i < pattern.arity(); ++i)
        if (!match_into(pattern.arg(i), target.arg(i), s)) return false;
      return true;
    case Term::Kind::Var:
      break;
  }
  return false;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& target, const Substitution& seed) {
  Substitution s = seed;
  if (!match_into(pattern, target, s)) return std::nullopt;
  return s;
}

void collect_variables(const Term& t, std::vector<Term>& out) {
  if (t.is_ground()) return;
  if (t.is_var()) {
    for (const Term& v : out)
      if (v.var_id() == t.var_id()) return;
    out.push_back(t);
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out);
}

std::vector<Term> variables_of(const Term& t) {
  std::vector<Term> out;
  collect_variables(t, out);
  return out;
}

bool occurs_in(const Term& var, const Term& t) {
  if (t.is_ground()) return false;
  if (t.is_var()) return t.var_id() == var.var_id();
  for (const Term& a : t.args())
    if (occurs_in(var, a)) return true;
  return false;
}

Term rename(const Term& t, VarSupply& supply, Substitution& renaming) {
  for (const Term& v : variables_of(t))
    if (!renaming.binds(v)) renaming.bind(v, supply.fresh());
  return renaming.apply(t);
}

namespace {

bool variant_into(const Term& a, const Term& b, std::unordered_map<VarId, VarId>& fwd,
                  std::unordered_map<VarId, VarId>& back) {
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
        if (!variant_into(a.arg(i), b.arg(i), fwd, back)) return false;
      return true;
  }
  return false;
}

}  // namespace

bool is_variant(const Term& a, const Term& b) {
  std::unordered_map<VarId, VarId> fwd, back;
  return variant_into(a, b, fwd, back);
}

// ---------------------------------------------------------------------------
// Anti-unification

bool AntiUnifier::PairLess::operator()(const std::pair<Term, Term>& x,
                                       const std::pair<Term, Term>& y) const {
  int c = compare(x.first, y.first);
  if (c != 0) return c < 0;
  return compare(x.second, y.second) < 0;
}

Term AntiUnifier::generalize(const Term& a, const Term& b) {
  if (a == b) return a;
  if (a.is_compound() && b.is_compound() && a.arity() == b.arity() && a.name() == b.name()) {
    std::vector<Term> args;
    args.reserve(a.arity());
    for (std::size_t i = 0; i < a.arity(); ++i) args.push_back(generalize(a.arg(i), b.arg(i)));
    return Term::compound(a.name(), std::move(args));
  }
  auto key = std::make_pair(a, b);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Term v = supply_.fresh();
  memo_.emplace(std::move(key), v);
  left_.bind(v, a);
  right_.bind(v, b);
  return v;
}

AntiUnification anti_unify(const Term& a, const Term& b, VarSupply& supply) {
  AntiUnifier au(supply);
  Term g = au.generalize(a, b);
  return {g, au.left(), au.right()};
}

}  // namespace slog
