#include <algorithm>
#include <functional>
#include "json.hpp"

#include "simplylog/sld.hpp"
#include "sld_internal.hpp"

namespace slog {

using detail::GoalCell;
using detail::State;

namespace {

std::string goals_text(const std::vector<Term>& goals) {
  if (goals.empty()) return "[]";
  std::string out;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (i) out += ", ";
    out += write_term(goals[i], OperatorTable::standard(), WriteOptions{}, 999);
  }
  return out;
}

std::string source_label(const ProofTree& t) {
  switch (t.source) {
    case ProofTree::Source::Clause: return "clause " + std::to_string(t.clause + 1);
    case ProofTree::Source::Builtin: return "builtin";
    case ProofTree::Source::Abduced: return "abduced";
  }
  return "";
}

void proof_text(const ProofTree& t, std::size_t depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += to_string(t.atom) + "  [" + source_label(t) + "]\n";
  for (const ProofTree& c : t.children) proof_text(c, depth + 1, out);
}

nlohmann::ordered_json proof_json(const ProofTree& t) {
  nlohmann::ordered_json j;
  j["atom"] = to_string(t.atom);
  j["source"] = source_label(t);
  j["children"] = nlohmann::ordered_json::array();
  for (const ProofTree& c : t.children) j["children"].push_back(proof_json(c));
  return j;
}

bool check_builtin(const ProofTree& t, bool occurs_check) {
  const Term& a = t.atom;
  if (!a.is_compound() || a.arity() != 2) return true;
  const std::string& f = a.name();
  try {
    if (f == "=") return a.arg(0) == a.arg(1);
    if (f == "\\=") return !unify(a.arg(0), a.arg(1), occurs_check);
    if (f == "==") return a.arg(0) == a.arg(1);
    if (f == "\\==") return a.arg(0) != a.arg(1);
    if (f == "is") return a.arg(0).is_int() && a.arg(0).value() == eval_arith(a.arg(1));
    std::int64_t x, y;
    static const std::vector<std::string> cmp = {"=:=", "=\\=", "<", ">", "=<", ">="};
    if (std::find(cmp.begin(), cmp.end(), f) == cmp.end()) return true;
    x = eval_arith(a.arg(0));
    y = eval_arith(a.arg(1));
    if (f == "=:=") return x == y;
    if (f == "=\\=") return x != y;
    if (f == "<") return x < y;
    if (f == ">") return x > y;
    if (f == "=<") return x <= y;
    return x >= y;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

std::string proof_to_text(const ProofTree& t, const Program&) {
  std::string out;
  proof_text(t, 0, out);
  return out;
}

std::string proof_to_json(const ProofTree& t, const Program&) { return proof_json(t).dump(2) + "\n"; }

bool verify_proof(const ProofTree& t, const Program& p, bool occurs_check) {
  switch (t.source) {
    case ProofTree::Source::Abduced:
      if (!t.children.empty()) return false;
      break;
    case ProofTree::Source::Builtin:
      if (!check_builtin(t, occurs_check)) return false;
      break;
    case ProofTree::Source::Clause: {
      if (t.clause >= p.size()) return false;
      const Clause& c = p.clauses()[t.clause];
      if (!c.is_definite() || c.body.size() != t.children.size()) return false;
      VarSupply supply;
      Clause r = rename_apart(c, supply);
      std::vector<Term> pattern{r.head.front()}, target{t.atom};
      for (std::size_t i = 0; i < r.body.size(); ++i) {
        pattern.push_back(r.body[i]);
        target.push_back(t.children[i].atom);
      }
      if (!match(Term::compound("$c", pattern), Term::compound("$c", target))) return false;
      break;
    }
  }
  return std::all_of(t.children.begin(), t.children.end(),
                     [&](const ProofTree& c) { return verify_proof(c, p, occurs_check); });
}

// ---------------------------------------------------------------------------

const char* status_name(SldNode::Status s) {
  switch (s) {
    case SldNode::Status::Internal: return "internal";
    case SldNode::Status::Success: return "success";
    case SldNode::Status::Failure: return "failure";
    case SldNode::Status::Pruned: return "pruned";
    case SldNode::Status::DepthBounded: return "depth-bounded";
  }
  return "?";
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const detail::Context& ctx, const std::vector<Term>& query_vars, std::size_t max_depth)
      : ctx_(ctx), query_vars_(query_vars), max_depth_(max_depth) {}

  /// Returns the id of the node whose alternatives a cut removed, if the
  /// cut reaches above `node`.
  std::optional<std::size_t> build(State s, SldNode& node) {
    std::size_t id = next_id_++;
    std::optional<std::size_t> signal;
    while (s.goals && s.goals->kind != GoalCell::Kind::Goal) {
      if (s.goals->kind == GoalCell::Kind::CutTo) signal = min_signal(signal, s.goals->barrier);
      s.goals = s.goals->next;
    }
    node.goals = detail::goal_terms(s.goals);
    node.depth = s.depth;
    if (!s.goals) {
      node.status = SldNode::Status::Success;
      for (std::size_t i = 0; i < query_vars_.size(); ++i) node.answer.bind(query_vars_[i], s.answer.arg(i));
      return signal;
    }
    if (s.depth >= max_depth_) {
      node.status = SldNode::Status::DepthBounded;
      return signal;
    }
    detail::Expansion e;
    try {
      e = detail::expand(ctx_, s, id);
    } catch (const ResourceError&) {
      node.status = SldNode::Status::DepthBounded;
      return signal;
    } catch (const Error&) {
      node.status = SldNode::Status::Failure;
      return signal;
    }
    if (e.cut_to) signal = min_signal(signal, *e.cut_to);
    if (e.children.empty()) {
      node.status = SldNode::Status::Failure;
      return signal;
    }
    node.status = SldNode::Status::Internal;
    for (std::size_t i = 0; i < e.children.size(); ++i) {
      SldNode c;
      const State& cs = e.children[i];
      if (cs.log && cs.log->source == ProofTree::Source::Clause) c.clause = cs.log->clause;
      std::optional<std::size_t> sig = build(cs, c);
      node.children.push_back(std::move(c));
      if (sig) {
        for (std::size_t j = i + 1; j < e.children.size(); ++j) {
          SldNode stub;
          stub.goals = detail::goal_terms(e.children[j].goals);
          stub.depth = e.children[j].depth;
          stub.status = SldNode::Status::Pruned;
          const State& ps = e.children[j];
          if (ps.log && ps.log->source == ProofTree::Source::Clause) stub.clause = ps.log->clause;
          node.children.push_back(std::move(stub));
        }
        if (*sig != id) signal = min_signal(signal, *sig);
        break;
      }
    }
    return signal;
  }

 private:
  static std::optional<std::size_t> min_signal(std::optional<std::size_t> a, std::size_t b) {
    return a ? std::min(*a, b) : b;
  }

  const detail::Context& ctx_;
  const std::vector<Term>& query_vars_;
  std::size_t max_depth_;
  std::size_t next_id_ = 0;
};

void tree_text(const SldNode& n, bool root, std::string& out) {
  out.append(2 * n.depth, ' ');
  if (root) out += "?- ";
  if (n.clause) out += "(" + std::to_string(*n.clause + 1) + ") ";
  out += goals_text(n.goals);
  switch (n.status) {
    case SldNode::Status::Internal: break;
    case SldNode::Status::Success: {
      std::string b;
      for (const auto& [id, bnd] : n.answer) {
        (void)id;
        if (!b.empty()) b += ", ";
        b += bnd.var.name() + " = " + write_term(bnd.value, OperatorTable::standard(), WriteOptions{}, 699);
      }
      out += "  [success" + (b.empty() ? std::string() : ": " + b) + "]";
      break;
    }
    default: out += std::string("  [") + status_name(n.status) + "]";
  }
  out += "\n";
  for (const SldNode& c : n.children) tree_text(c, false, out);
}

nlohmann::ordered_json tree_json(const SldNode& n) {
  nlohmann::ordered_json j;
  j["goals"] = goals_text(n.goals);
  j["status"] = status_name(n.status);
  j["depth"] = n.depth;
  if (n.clause)
    j["clause"] = *n.clause + 1;
  else
    j["clause"] = nullptr;
  if (n.status == SldNode::Status::Success) {
    nlohmann::ordered_json a = nlohmann::ordered_json::object();
    for (const auto& [id, bnd] : n.answer) {
      (void)id;
      a[bnd.var.name()] = to_string(bnd.value);
    }
    j["answer"] = a;
  }
  j["children"] = nlohmann::ordered_json::array();
  for (const SldNode& c : n.children) j["children"].push_back(tree_json(c));
  return j;
}

}  // namespace

SldTree sld_tree(const Program& p, const std::vector<Term>& goals, std::size_t max_depth, EngineOptions opts) {
  detail::Context ctx;
  ctx.program = std::make_shared<const Program>(p);
  ctx.strategy = Strategy::depth_first();
  ctx.limits.max_depth = max_depth;
  opts.undefined_is_error = false;
  opts.trace = false;
  ctx.options = std::move(opts);
  ctx.supply = std::make_shared<VarSupply>();
  ctx.nodes = std::make_shared<std::size_t>(0);

  SldTree t;
  std::vector<Term> vars;
  for (const Term& g : goals) collect_variables(g, vars);
  for (const Term& v : vars)
    if (!v.name().empty() && v.name()[0] != '_') t.query_vars.push_back(v);
  State root;
  root.goals = detail::push_goals(goals, 0, 1, nullptr);
  root.answer = Term::compound("$answer", t.query_vars);
  TreeBuilder(ctx, t.query_vars, max_depth).build(root, t.root);
  return t;
}

std::string sld_tree_to_text(const SldTree& t) {
  std::string out;
  tree_text(t.root, true, out);
  return out;
}

std::string sld_tree_to_json(const SldTree& t) { return tree_json(t.root).dump(2) + "\n"; }

}  // namespace slog
