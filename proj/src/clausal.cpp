#include "simplylog/clausal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "simplylog/error.hpp"
#include "simplylog/reader.hpp"
#include "simplylog/sld.hpp"

namespace slog {

std::vector<Clause> parse_clauses(std::string_view text, const std::string& file) {
  ParsedProgram parsed = parse_program(text, file);
  if (!parsed.ok()) throw parsed.errors.front();
  std::vector<Clause> out;
  for (const SourceClause& sc : parsed.clauses) {
    switch (sc.kind) {
      case ClauseKind::Query: break;
      case ClauseKind::Directive: out.push_back(Clause::denial(conjuncts(sc.term.arg(0)))); break;
      case ClauseKind::DcgRule:
        throw ProgramError((file.empty() ? "" : file + ":" + std::to_string(sc.line) + ": ") +
                           "grammar rule in a clause set");
      case ClauseKind::Clause: out.push_back(Clause::from_term(sc.term)); break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Herbrand machinery

namespace {

void collect_arg(const Term& t, Signature& sig) {
  if (t.is_var()) return;
  if (t.is_atomic()) {
    sig.constants.insert(t);
    return;
  }
  sig.functors.insert(PredKey::of(t));
  for (const Term& a : t.args()) collect_arg(a, sig);
}

void collect_literal(const Term& lit, Signature& sig) {
  sig.predicates.insert(PredKey::of(lit));
  if (lit.is_compound())
    for (const Term& a : lit.args()) collect_arg(a, sig);
}

/// Calls fn on every n-tuple over dom; stops early when fn returns false.
bool for_each_tuple(const std::vector<Term>& dom, std::size_t n,
                    const std::function<bool(const std::vector<Term>&)>& fn) {
  if (n > 0 && dom.empty()) return true;
  std::vector<std::size_t> idx(n, 0);
  std::vector<Term> tuple(n);
  for (;;) {
    for (std::size_t k = 0; k < n; ++k) tuple[k] = dom[idx[k]];
    if (!fn(tuple)) return false;
    std::size_t k = 0;
    while (k < n && ++idx[k] == dom.size()) idx[k++] = 0;
    if (k == n) return true;
  }
}

Term apply_functor(const PredKey& key, const std::vector<Term>& args) {
  return key.arity == 0 ? Term::atom(key.name) : Term::compound(key.name, args);
}

std::size_t arg_depth(const Term& atom) {
  std::size_t d = 0;
  if (atom.is_compound())
    for (const Term& a : atom.args()) d = std::max(d, a.depth());
  return d;
}

/// Every assignment of `vars` over `dom`; fn returns false to stop.
bool for_each_assignment(const std::vector<Term>& vars, const std::vector<Term>& dom,
                         const std::function<bool(const Substitution&)>& fn) {
  return for_each_tuple(dom, vars.size(), [&](const std::vector<Term>& tuple) {
    Substitution s;
    for (std::size_t k = 0; k < vars.size(); ++k) s.bind(vars[k], tuple[k]);
    return fn(s);
  });
}

}  // namespace

Signature signature_of(const std::vector<Clause>& cs) {
  Signature sig;
  for (const Clause& c : cs) {
    for (const Term& h : c.head) collect_literal(h, sig);
    for (const Term& b : c.body) collect_literal(b, sig);
  }
  return sig;
}

TermSet herbrand_universe(const std::vector<Clause>& cs, std::size_t depth) {
  Signature sig = signature_of(cs);
  TermSet u = sig.constants;
  if (u.empty()) u.insert(Term::atom(kInjectedConstant));
  std::vector<Term> level(u.begin(), u.end());
  for (std::size_t d = 1; d <= depth && !sig.functors.empty(); ++d) {
    std::vector<Term> next;
    for (const PredKey& f : sig.functors)
      for_each_tuple(level, f.arity, [&](const std::vector<Term>& args) {
        bool fresh = false;
        for (const Term& a : args) fresh = fresh || a.depth() == d - 1;
        if (fresh) next.push_back(Term::compound(f.name, args));
        return true;
      });
    level.insert(level.end(), next.begin(), next.end());
    u.insert(next.begin(), next.end());
  }
  return u;
}

TermSet herbrand_universe(const Program& p, std::size_t depth) { return herbrand_universe(p.clauses(), depth); }

TermSet herbrand_base(const std::vector<Clause>& cs, std::size_t depth) {
  Signature sig = signature_of(cs);
  TermSet u = herbrand_universe(cs, depth);
  std::vector<Term> dom(u.begin(), u.end());
  TermSet base;
  for (const PredKey& p : sig.predicates)
    for_each_tuple(dom, p.arity, [&](const std::vector<Term>& args) {
      base.insert(apply_functor(p, args));
      return true;
    });
  return base;
}

TermSet herbrand_base(const Program& p, std::size_t depth) { return herbrand_base(p.clauses(), depth); }

bool is_model(const TermSet& true_atoms, const std::vector<Clause>& cs, std::size_t depth) {
  TermSet u = herbrand_universe(cs, depth);
  std::vector<Term> dom(u.begin(), u.end());
  for (const Clause& c : cs) {
    bool ok = for_each_assignment(variables_of(c), dom, [&](const Substitution& s) {
      for (const Term& b : c.body)
        if (!true_atoms.count(s.apply(b))) return true;
      for (const Term& h : c.head)
        if (true_atoms.count(s.apply(h))) return true;
      return false;
    });
    if (!ok) return false;
  }
  return true;
}

bool is_model(const TermSet& true_atoms, const Program& p, std::size_t depth) {
  return is_model(true_atoms, p.clauses(), depth);
}

HerbrandInterpretation least_herbrand_model(const Program& p, std::size_t depth, std::size_t fuel) {
  for (const Clause& c : p.clauses())
    if (!c.is_definite()) throw ProgramError("least Herbrand model needs a definite programme: " + to_string(c));
  TermSet u = herbrand_universe(p, depth);
  std::vector<Term> dom(u.begin(), u.end());

  HerbrandInterpretation m;
  std::map<PredKey, std::vector<Term>> by_pred;
  for (std::size_t iter = 0;; ++iter) {
    std::vector<Term> derived;
    for (const Clause& c : p.clauses()) {
      const Term& head = c.head.front();
      std::function<void(std::size_t, const Substitution&)> join = [&](std::size_t i, const Substitution& s) {
        if (i == c.body.size()) {
          std::vector<Term> open = variables_of(s.apply(head));
          for_each_assignment(open, dom, [&](const Substitution& g) {
            Term atom = g.apply(s.apply(head));
            if (arg_depth(atom) > depth)
              m.truncated = true;
            else if (!m.holds(atom))
              derived.push_back(atom);
            return true;
          });
          return;
        }
        auto it = by_pred.find(PredKey::of(c.body[i]));
        if (it == by_pred.end()) return;
        for (const Term& fact : it->second)
          if (auto s2 = match(c.body[i], fact, s)) join(i + 1, *s2);
      };
      join(0, {});
    }
    bool changed = false;
    for (const Term& a : derived)
      if (m.true_atoms.insert(a).second) {
        by_pred[PredKey::of(a)].push_back(a);
        changed = true;
      }
    if (!changed) break;
    if (iter + 1 >= fuel) {
      m.partial = true;
      break;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Resolution

std::vector<Clause> propositional_resolve(const Clause& c1, const Clause& c2) {
  std::vector<Clause> out;
  auto add = [&](const Clause& a, const Clause& b, const Term& atom) {
    Clause r;
    for (const Term& h : a.head)
      if (h != atom) r.head.push_back(h);
    r.head.insert(r.head.end(), b.head.begin(), b.head.end());
    r.body = a.body;
    for (const Term& x : b.body)
      if (x != atom) r.body.push_back(x);
    r = canonical(r);
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  };
  TermSet done;
  for (const Term& h : c1.head)
    if (std::find(c2.body.begin(), c2.body.end(), h) != c2.body.end() && done.insert(h).second) add(c1, c2, h);
  done.clear();
  for (const Term& h : c2.head)
    if (std::find(c1.body.begin(), c1.body.end(), h) != c1.body.end() && done.insert(h).second) add(c2, c1, h);
  return out;
}

namespace {

bool is_tautology(const Clause& c) {
  for (const Term& h : c.head)
    if (std::find(c.body.begin(), c.body.end(), h) != c.body.end()) return true;
  return false;
}

/// The resolvent of l and r on `atom` under u, with every literal that
/// becomes equal to the atom removed from the resolved sides.
Clause resolvent_under(const Clause& l, const Clause& r, const Term& atom, const Substitution& u) {
  Clause out;
  for (const Term& h : l.head) {
    Term x = u.apply(h);
    if (x != atom) out.head.push_back(x);
  }
  for (const Term& h : r.head) out.head.push_back(u.apply(h));
  for (const Term& b : l.body) out.body.push_back(u.apply(b));
  for (const Term& b : r.body) {
    Term x = u.apply(b);
    if (x != atom) out.body.push_back(x);
  }
  return canonical(out);
}

/// Key under which variants collide (most of the time; a missed duplicate
/// only costs time).
std::string clause_key(const Clause& c) {
  if (c.is_ground()) return to_string(c);
  Term hole = Term::atom("$v");
  auto skeleton = [&](const Term& t) {
    Substitution s;
    for (const Term& v : variables_of(t)) s.bind(v, hole);
    return to_string(s.apply(t));
  };
  struct Lit {
    bool head;
    std::string skel;
    Term term;
  };
  std::vector<Lit> lits;
  for (const Term& h : c.head) lits.push_back({true, skeleton(h), h});
  for (const Term& b : c.body) lits.push_back({false, skeleton(b), b});
  std::stable_sort(lits.begin(), lits.end(), [](const Lit& a, const Lit& b) {
    if (a.head != b.head) return a.head;
    return a.skel < b.skel;
  });
  std::unordered_map<VarId, std::size_t> names;
  std::string key;
  std::function<void(const Term&)> write = [&](const Term& t) {
    if (t.is_var()) {
      auto [it, fresh] = names.emplace(t.var_id(), names.size());
      key += "#" + std::to_string(it->second);
    } else if (t.is_compound()) {
      key += t.name() + "(";
      for (const Term& a : t.args()) {
        write(a);
        key += ",";
      }
      key += ")";
    } else {
      key += to_string(t);
    }
  };
  for (const Lit& l : lits) {
    key += l.head ? "+" : "-";
    write(l.term);
    key += ";";
  }
  return key;
}

struct Node {
  Clause clause;
  std::optional<RefutationStep> step;  // refs index nodes, not yet renumbered
  std::size_t input_index = 0;
};

struct Saturation {
  Saturation(std::size_t max_steps, std::optional<std::size_t> depth_bound,
             std::function<bool(const Clause&)> goal_reached)
      : max_steps(max_steps), depth_bound(depth_bound), goal_reached(std::move(goal_reached)) {}

  std::size_t max_steps;
  std::optional<std::size_t> depth_bound;
  std::function<bool(const Clause&)> goal_reached;

  std::vector<Node> nodes;
  std::unordered_set<std::string> seen;
  std::size_t generated = 0;
  VarSupply supply;

  bool within_depth(const Clause& c) const {
    if (!depth_bound) return true;
    auto deep = [&](const Term& t) { return t.name() != "$ans" && arg_depth(t) > *depth_bound; };
    return std::none_of(c.head.begin(), c.head.end(), deep) && std::none_of(c.body.begin(), c.body.end(), deep);
  }

  enum class Add { Kept, Dropped, Goal, Budget };

  Add add(Clause c, std::optional<RefutationStep> step, std::size_t input_index = 0) {
    c = canonical(c);
    if (is_tautology(c) || !within_depth(c)) return Add::Dropped;
    if (!seen.insert(clause_key(c)).second) return Add::Dropped;
    if (step) {
      step->resolvent = c;
      if (++generated > max_steps) return Add::Budget;
    }
    nodes.push_back(Node{c, std::move(step), input_index});
    return c.is_empty() || (goal_reached && goal_reached(c)) ? Add::Goal : Add::Kept;
  }

  /// Resolves a's head against b's body. Returns the first non-Kept outcome.
  Add resolve(std::size_t ai, std::size_t bi) {
    Clause l = nodes[ai].clause, r = nodes[bi].clause;
    if (!l.is_ground()) l = rename_apart(l, supply);
    if (!r.is_ground()) r = rename_apart(r, supply);
    for (const Term& h : l.head)
      for (const Term& b : r.body) {
        if (PredKey::of(h) != PredKey::of(b)) continue;
        auto theta = unify(h, b);
        if (!theta) continue;
        std::vector<Substitution> pending{*theta};
        std::unordered_set<std::string> local;
        while (!pending.empty()) {
          Substitution u = std::move(pending.back());
          pending.pop_back();
          Term atom = u.apply(h);
          Clause res = resolvent_under(l, r, atom, u);
          if (!local.insert(clause_key(res)).second) continue;
          RefutationStep st{ClauseRef{false, ai}, ClauseRef{false, bi}, l, r, atom, u, {}};
          Add a = add(res, std::move(st));
          if (a == Add::Goal || a == Add::Budget) return a;
          // Factors: unify two literals on the same side.
          auto factor = [&](const std::vector<Term>& side) {
            for (std::size_t i = 0; i < side.size(); ++i)
              for (std::size_t j = i + 1; j < side.size(); ++j) {
                if (PredKey::of(side[i]) != PredKey::of(side[j])) continue;
                if (auto s = unify(side[i], side[j])) pending.push_back(compose(u, *s));
              }
          };
          if (!res.is_ground()) {
            factor(res.head);
            factor(res.body);
          }
        }
      }
    return Add::Kept;
  }

  /// FIFO given-clause loop. Returns the node index that reached the goal.
  std::pair<RefuteStatus, std::optional<std::size_t>> run() {
    for (std::size_t g = 0; g < nodes.size(); ++g) {
      for (std::size_t p = 0; p <= g; ++p) {
        for (int dir = 0; dir < (p == g ? 1 : 2); ++dir) {
          Add a = dir == 0 ? resolve(g, p) : resolve(p, g);
          if (a == Add::Budget) return {RefuteStatus::Budget, std::nullopt};
          if (a == Add::Goal) return {RefuteStatus::Refuted, nodes.size() - 1};
        }
      }
    }
    return {RefuteStatus::Saturated, std::nullopt};
  }

  Refutation extract(std::size_t goal, const std::vector<Clause>& inputs) const {
    std::vector<std::size_t> used;
    std::vector<bool> mark(nodes.size(), false);
    std::function<void(std::size_t)> visit = [&](std::size_t i) {
      if (mark[i]) return;
      mark[i] = true;
      if (!nodes[i].step) return;
      visit(nodes[i].step->left.index);
      visit(nodes[i].step->right.index);
    };
    visit(goal);
    std::vector<std::size_t> renumber(nodes.size(), 0);
    Refutation r;
    r.inputs = inputs;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!mark[i] || !nodes[i].step) continue;
      RefutationStep st = *nodes[i].step;
      for (ClauseRef* ref : {&st.left, &st.right}) {
        const Node& parent = nodes[ref->index];
        *ref = parent.step ? ClauseRef{false, renumber[ref->index]} : ClauseRef{true, parent.input_index};
      }
      renumber[i] = r.steps.size();
      r.steps.push_back(std::move(st));
    }
    return r;
  }
};

/// Ground clause sets over at most 64 atoms: the same saturation on bitmasks.
struct GroundSaturation {
  struct Mask {
    std::uint64_t head, body;
    bool operator==(const Mask&) const = default;
  };
  struct MaskHash {
    std::size_t operator()(const Mask& m) const { return std::hash<std::uint64_t>()(m.head * 0x9e3779b97f4a7c15ULL ^ m.body); }
  };
  struct GNode {
    Mask m;
    bool derived;
    std::size_t a, b;  // node indices, or input index when !derived (in a)
    int atom;
  };

  std::vector<Term> atoms;
  std::map<Term, int, TermLess> index;
  std::vector<GNode> nodes;
  std::unordered_set<Mask, MaskHash> seen;

  static std::optional<GroundSaturation> build(const std::vector<Clause>& cs) {
    GroundSaturation g;
    for (const Clause& c : cs) {
      if (!c.is_ground()) return std::nullopt;
      for (const auto* side : {&c.head, &c.body})
        for (const Term& t : *side)
          if (g.index.emplace(t, static_cast<int>(g.atoms.size())).second) {
            g.atoms.push_back(t);
            if (g.atoms.size() > 64) return std::nullopt;
          }
    }
    return g;
  }

  Mask mask_of(const Clause& c) const {
    Mask m{0, 0};
    for (const Term& t : c.head) m.head |= 1ULL << index.at(t);
    for (const Term& t : c.body) m.body |= 1ULL << index.at(t);
    return m;
  }

  Clause clause_of(Mask m) const {
    Clause c;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (m.head >> i & 1) c.head.push_back(atoms[i]);
      if (m.body >> i & 1) c.body.push_back(atoms[i]);
    }
    return canonical(c);
  }

  RefuteResult run(const std::vector<Clause>& inputs, std::size_t max_steps) {
    RefuteResult out;
    std::optional<std::size_t> goal;
    for (std::size_t i = 0; i < inputs.size() && !goal; ++i) {
      Mask m = mask_of(inputs[i]);
      if (m.head & m.body || !seen.insert(m).second) continue;
      nodes.push_back(GNode{m, false, i, 0, -1});
      if (m.head == 0 && m.body == 0) goal = nodes.size() - 1;
    }
    for (std::size_t g = 0; g < nodes.size() && !goal; ++g) {
      for (std::size_t p = 0; p <= g && !goal; ++p) {
        for (int dir = 0; dir < (p == g ? 1 : 2) && !goal; ++dir) {
          std::size_t li = dir == 0 ? g : p, ri = dir == 0 ? p : g;
          Mask l = nodes[li].m, r = nodes[ri].m;
          std::uint64_t clash = l.head & r.body;
          for (int bit = 0; clash && !goal; ++bit, clash >>= 1) {
            if (!(clash & 1)) continue;
            std::uint64_t b = 1ULL << bit;
            Mask res{(l.head & ~b) | r.head, l.body | (r.body & ~b)};
            if (res.head & res.body || !seen.insert(res).second) continue;
            if (++out.generated > max_steps) {
              out.status = RefuteStatus::Budget;
              return out;
            }
            nodes.push_back(GNode{res, true, li, ri, bit});
            if (res.head == 0 && res.body == 0) goal = nodes.size() - 1;
          }
        }
      }
    }
    if (!goal) {
      out.status = RefuteStatus::Saturated;
      return out;
    }
    out.status = RefuteStatus::Refuted;
    std::vector<bool> mark(nodes.size(), false);
    std::function<void(std::size_t)> visit = [&](std::size_t i) {
      if (mark[i]) return;
      mark[i] = true;
      if (!nodes[i].derived) return;
      visit(nodes[i].a);
      visit(nodes[i].b);
    };
    visit(*goal);
    Refutation ref;
    ref.inputs = inputs;
    std::vector<std::size_t> renumber(nodes.size(), 0);
    auto ref_of = [&](std::size_t i) {
      return nodes[i].derived ? ClauseRef{false, renumber[i]} : ClauseRef{true, nodes[i].a};
    };
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!mark[i] || !nodes[i].derived) continue;
      const GNode& n = nodes[i];
      RefutationStep st{ref_of(n.a), ref_of(n.b), clause_of(nodes[n.a].m), clause_of(nodes[n.b].m),
                        atoms[static_cast<std::size_t>(n.atom)], {}, clause_of(n.m)};
      renumber[i] = ref.steps.size();
      ref.steps.push_back(std::move(st));
    }
    out.refutation = std::move(ref);
    return out;
  }
};

std::string ref_name(const ClauseRef& r) { return (r.input ? "c" : "r") + std::to_string(r.index + 1); }

}  // namespace

RefuteResult resolution_refute(const std::vector<Clause>& cs, std::size_t max_steps) {
  if (auto ground = GroundSaturation::build(cs)) return ground->run(cs, max_steps);

  Saturation sat{max_steps, std::nullopt, nullptr};
  RefuteResult out;
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (sat.add(cs[i], std::nullopt, i) == Saturation::Add::Goal) {
      out.status = RefuteStatus::Refuted;
      out.refutation = sat.extract(sat.nodes.size() - 1, cs);
      return out;
    }
  auto [status, goal] = sat.run();
  out.status = status;
  out.generated = sat.generated;
  if (goal) out.refutation = sat.extract(*goal, cs);
  return out;
}

bool replay(const Refutation& r) {
  auto parent = [&](const ClauseRef& ref, std::size_t step) -> const Clause* {
    if (ref.input) return ref.index < r.inputs.size() ? &r.inputs[ref.index] : nullptr;
    return ref.index < step ? &r.steps[ref.index].resolvent : nullptr;
  };
  if (r.steps.empty())
    return std::any_of(r.inputs.begin(), r.inputs.end(), [](const Clause& c) { return c.is_empty(); });
  for (std::size_t k = 0; k < r.steps.size(); ++k) {
    const RefutationStep& st = r.steps[k];
    const Clause* l = parent(st.left, k);
    const Clause* rr = parent(st.right, k);
    if (!l || !rr) return false;
    if (!clause_variant(*l, st.left_copy) || !clause_variant(*rr, st.right_copy)) return false;
    auto maps_to_atom = [&](const std::vector<Term>& side) {
      return std::any_of(side.begin(), side.end(), [&](const Term& x) { return st.unifier.apply(x) == st.atom; });
    };
    if (!maps_to_atom(st.left_copy.head) || !maps_to_atom(st.right_copy.body)) return false;
    Clause expected = resolvent_under(st.left_copy, st.right_copy, st.atom, st.unifier);
    if (!clause_variant(expected, st.resolvent)) return false;
  }
  return r.steps.back().resolvent.is_empty();
}

std::string refutation_to_text(const Refutation& r) {
  std::ostringstream os;
  for (std::size_t k = 0; k < r.steps.size(); ++k) {
    const RefutationStep& st = r.steps[k];
    os << "step " << k + 1 << ": " << ref_name(st.left) << " + " << ref_name(st.right) << " on "
       << to_string(st.atom) << " gives " << to_string(st.resolvent) << "\n";
  }
  return os.str();
}

std::string refutation_to_json(const Refutation& r) {
  nlohmann::ordered_json j;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const Clause& c : r.inputs) j["inputs"].push_back(to_string(c));
  j["steps"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < r.steps.size(); ++k) {
    const RefutationStep& st = r.steps[k];
    nlohmann::ordered_json s;
    s["step"] = k + 1;
    s["left"] = ref_name(st.left);
    s["right"] = ref_name(st.right);
    s["atom"] = to_string(st.atom);
    s["unifier"] = nlohmann::ordered_json::array();
    for (const auto& [id, b] : st.unifier) s["unifier"].push_back({{"var", to_string(b.var)}, {"value", to_string(b.value)}});
    s["resolvent"] = to_string(st.resolvent);
    j["steps"].push_back(std::move(s));
  }
  return j.dump(2);
}

ClausalQueryResult full_clausal_query(const std::vector<Clause>& cs, const std::vector<Term>& goal,
                                      std::size_t depth, std::size_t max_steps) {
  std::vector<Term> vars;
  for (const Term& g : goal) collect_variables(g, vars);
  Term ans = Term::compound("$ans", vars);
  auto is_ans = [](const Term& t) { return t.name() == "$ans"; };

  std::vector<Clause> inputs = cs;
  inputs.push_back(Clause{{ans}, goal});

  Saturation sat{max_steps, depth, [&](const Clause& c) {
                   return c.body.empty() && c.head.size() == 1 && is_ans(c.head.front());
                 }};
  ClausalQueryResult out;
  std::optional<std::size_t> goal_node;
  for (std::size_t i = 0; i < inputs.size() && !goal_node; ++i)
    if (sat.add(inputs[i], std::nullopt, i) == Saturation::Add::Goal) goal_node = sat.nodes.size() - 1;
  if (!goal_node) {
    auto [status, g] = sat.run();
    out.status = status;
    goal_node = g;
  }
  if (!goal_node) return out;
  out.status = RefuteStatus::Refuted;

  ClausalAnswer a;
  const Clause& final = sat.nodes[*goal_node].clause;
  if (!final.head.empty()) {
    Term found = final.head.front();
    for (std::size_t k = 0; k < vars.size(); ++k) a.bindings.bind(vars[k], found.arg(k));
  }
  auto strip = [&](const Clause& c) {
    Clause s;
    for (const Term& h : c.head)
      if (!is_ans(h)) s.head.push_back(h);
    s.body = c.body;
    return s;
  };
  Refutation r = sat.extract(*goal_node, inputs);
  for (Clause& c : r.inputs) c = strip(c);
  for (RefutationStep& st : r.steps) {
    st.left_copy = strip(st.left_copy);
    st.right_copy = strip(st.right_copy);
    st.resolvent = strip(st.resolvent);
  }
  a.refutation = std::move(r);
  out.answer = std::move(a);
  return out;
}

SoundnessReport soundness_audit(const Program& p,
                                const std::vector<std::pair<std::vector<Term>, Substitution>>& answers,
                                std::size_t depth) {
  SoundnessReport rep;
  HerbrandInterpretation m = least_herbrand_model(p, depth);
  rep.model_partial = m.partial || m.truncated;
  TermSet u = herbrand_universe(p, depth);
  std::vector<Term> dom(u.begin(), u.end());
  for (const auto& [goals, sigma] : answers)
    for (const Term& g : goals) {
      if (is_builtin(PredKey::of(g))) continue;
      Term inst = sigma.apply(g);
      for_each_assignment(variables_of(inst), dom, [&](const Substitution& s) {
        Term atom = s.apply(inst);
        if (m.holds(atom)) return true;
        rep.violations.push_back(to_string(atom) + " is not in the least Herbrand model");
        return false;
      });
    }
  return rep;
}

}  // namespace slog
