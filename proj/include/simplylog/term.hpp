#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slog {

using VarId = std::uint64_t;

/// Immutable first-order term: variable, atom, integer or compound.
///
/// Terms are cheap handles onto shared, immutable nodes. Equality is
/// structural; variables are identified by a process-unique id and carry a
/// display name used only for printing.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Atom, Int, Compound };

  /// The empty list atom `[]`.
  Term();

  /// A variable with a fresh process-unique identity.
  static Term var(std::string name);
  static Term atom(std::string name);
  static Term integer(std::int64_t value);
  /// Builds `functor(args...)`; an empty argument list yields the atom.
  static Term compound(std::string functor, std::vector<Term> args);
  static Term nil();
  static Term cons(Term head, Term tail);
  static Term list(const std::vector<Term>& items, Term tail = nil());

  Kind kind() const { return node_->kind; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_int() const { return kind() == Kind::Int; }
  bool is_compound() const { return kind() == Kind::Compound; }
  bool is_callable() const { return is_atom() || is_compound(); }
  bool is_atomic() const { return is_atom() || is_int(); }
  bool is_nil() const { return is_atom() && node_->name == "[]"; }
  bool is_cons() const { return is_compound() && arity() == 2 && node_->name == "."; }

  /// Atom name, compound functor, or variable display name.
  const std::string& name() const { return node_->name; }
  std::int64_t value() const { return node_->value; }
  VarId var_id() const { return node_->id; }
  std::size_t arity() const { return node_->args.size(); }
  const std::vector<Term>& args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

  bool is_ground() const { return node_->ground; }
  std::size_t hash() const { return node_->hash; }
  /// Depth of nesting: constants and variables have depth 0.
  std::size_t depth() const { return node_->depth; }

  /// Elements of a proper list, or nullopt if the term is not one.
  std::optional<std::vector<Term>> list_items() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    bool ground;
    std::size_t hash;
    std::size_t depth;
    std::int64_t value;
    VarId id;
    std::string name;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Standard order of terms: Var < Int < Atom < Compound; compounds by
/// arity, then name, then arguments left to right; variables by age.
int compare(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Predicate indicator name/arity.
struct PredKey {
  std::string name;
  std::size_t arity = 0;

  static PredKey of(const Term& t) { return {t.name(), t.is_compound() ? t.arity() : 0}; }
  std::string str() const { return name + "/" + std::to_string(arity); }
  auto operator<=>(const PredKey&) const = default;
};

/// Issues fresh variables named `_G<n>` for standardizing apart.
class VarSupply {
 public:
  Term fresh();
  Term fresh(const std::string& name_hint);
  std::uint64_t issued() const { return counter_; }

 private:
  std::uint64_t counter_ = 0;
};

/// Finite map from variables to terms. Application is simultaneous.
class Substitution {
 public:
  struct Binding {
    Term var;
    Term value;
  };
  using Map = std::map<VarId, Binding>;

  Substitution() = default;

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const Term* lookup(VarId id) const;
  bool binds(const Term& var) const { return var.is_var() && map_.count(var.var_id()) != 0; }

  /// Adds or replaces `var -> value`; binding a variable to itself removes it.
  void bind(const Term& var, Term value);
  void erase(const Term& var) { map_.erase(var.var_id()); }

  Term apply(const Term& t) const;
  std::vector<Term> apply(const std::vector<Term>& ts) const;

  /// Keeps only bindings of the given variables.
  Substitution restricted_to(const std::vector<Term>& vars) const;

  Map::const_iterator begin() const { return map_.begin(); }
  Map::const_iterator end() const { return map_.end(); }

  friend bool operator==(const Substitution& a, const Substitution& b);

 private:
  Map map_;
};

/// apply(compose(a, b), t) == b.apply(a.apply(t)).
Substitution compose(const Substitution& first, const Substitution& second);

/// Most general unifier, idempotent. Returns nullopt when no unifier exists.
std::optional<Substitution> unify(const Term& a, const Term& b, bool occurs_check = true);

/// Simultaneous unification of several pairs.
std::optional<Substitution> unify_all(const std::vector<std::pair<Term, Term>>& pairs,
                                      bool occurs_check = true);

/// One-way matching: binds variables of `pattern` only; variables of
/// `target` behave as constants. Extends `seed`. Pattern and target are
/// expected to be variable-disjoint.
std::optional<Substitution> match(const Term& pattern, const Term& target,
                                  const Substitution& seed = {});

/// Variables in left-to-right first-occurrence order.
std::vector<Term> variables_of(const Term& t);
void collect_variables(const Term& t, std::vector<Term>& out);

bool occurs_in(const Term& var, const Term& t);

/// Renames every variable of `t` consistently; `renaming` is extended.
Term rename(const Term& t, VarSupply& supply, Substitution& renaming);

/// True when a and b are equal up to a bijective variable renaming.
bool is_variant(const Term& a, const Term& b);

struct AntiUnification {
  Term generalization;
  Substitution left;
  Substitution right;
};

/// Plotkin anti-unification with a disagreement-pair memo that can be shared
/// across several calls (needed for clause-level lgg).
class AntiUnifier {
 public:
  explicit AntiUnifier(VarSupply& supply) : supply_(supply) {}

  Term generalize(const Term& a, const Term& b);
  const Substitution& left() const { return left_; }
  const Substitution& right() const { return right_; }

 private:
  struct PairLess {
    bool operator()(const std::pair<Term, Term>& x, const std::pair<Term, Term>& y) const;
  };
  VarSupply& supply_;
  std::map<std::pair<Term, Term>, Term, PairLess> memo_;
  Substitution left_;
  Substitution right_;
};

AntiUnification anti_unify(const Term& a, const Term& b, VarSupply& supply);

}  // namespace slog

template <>
struct std::hash<slog::Term> {
  std::size_t operator()(const slog::Term& t) const noexcept { return t.hash(); }
};
