#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "simplylog/term.hpp"

namespace slog {

/// General clause `A1 ; ... ; An :- B1, ..., Bm`.
///
/// A definite clause has exactly one head atom, a denial none, and the empty
/// clause has neither head nor body. Body order is kept because the SLD
/// engine selects literals left to right; clausal operations treat both
/// sides as sets.
struct Clause {
  std::vector<Term> head;
  std::vector<Term> body;

  static Clause fact(Term head) { return Clause{{std::move(head)}, {}}; }
  static Clause rule(Term head, std::vector<Term> body) { return Clause{{std::move(head)}, std::move(body)}; }
  static Clause denial(std::vector<Term> body) { return Clause{{}, std::move(body)}; }

  /// Reads `H :- B`, `H1 ; H2 :- B`, `:- B` or a fact. A body of `true` is
  /// empty; conjunctions are flattened.
  static Clause from_term(const Term& t);

  bool is_definite() const { return head.size() == 1; }
  bool is_denial() const { return head.empty() && !body.empty(); }
  bool is_empty() const { return head.empty() && body.empty(); }
  bool is_ground() const;

  /// Back to a term: fact, `H :- B`, `(H1;H2) :- B` or `:- B`.
  Term to_term() const;

  friend bool operator==(const Clause& a, const Clause& b) { return a.head == b.head && a.body == b.body; }
};

/// `q(X) :- p(X).`, `p ; q :- r.`, `:- p.`, or `[]` for the empty clause.
std::string to_string(const Clause& c);

/// Flattens a `','/2` tree into its conjuncts; `true` gives no conjuncts.
std::vector<Term> conjuncts(const Term& t);
Term conjunction(const std::vector<Term>& goals);

std::vector<Term> variables_of(const Clause& c);
Clause apply(const Substitution& s, const Clause& c);
Clause rename_apart(const Clause& c, VarSupply& supply);

/// Head and body sorted in standard order with duplicates removed.
Clause canonical(const Clause& c);

/// Equal up to a consistent variable renaming, treating head and body as
/// sets of literals.
bool clause_variant(const Clause& a, const Clause& b);

/// Ordered clause collection with a predicate index.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Clause> clauses);

  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }

  /// Positions of clauses whose head has this predicate, in program order.
  const std::vector<std::size_t>& clauses_for(const PredKey& key) const;

  /// Has clauses or was declared (e.g. dynamic).
  bool defines(const PredKey& key) const;
  void declare(const PredKey& key) { declared_.insert(key); }
  const std::set<PredKey>& declared() const { return declared_; }

  void add(Clause c);
  void add_all(const std::vector<Clause>& cs);

  /// True iff every clause has exactly one head atom.
  bool is_definite() const;

  /// Predicates occurring in heads and bodies, in first-appearance order.
  std::vector<PredKey> predicates() const;

 private:
  std::vector<Clause> clauses_;
  std::map<PredKey, std::vector<std::size_t>> index_;
  std::set<PredKey> declared_;
};

}  // namespace slog
