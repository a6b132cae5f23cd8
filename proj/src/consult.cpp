#include "simplylog/lang.hpp"
#include "simplylog/sld.hpp"

namespace slog {

namespace {

void declare_indicator(Program& p, const Term& ind) {
  if (ind.is_compound() && ind.arity() == 2 && ind.name() == ",") {
    declare_indicator(p, ind.arg(0));
    declare_indicator(p, ind.arg(1));
    return;
  }
  if (!(ind.is_compound() && ind.name() == "/" && ind.arity() == 2 && ind.arg(0).is_atom() && ind.arg(1).is_int()))
    throw ProgramError("bad predicate indicator: " + to_string(ind));
  p.declare({ind.arg(0).name(), static_cast<std::size_t>(ind.arg(1).value())});
}

}  // namespace

Program consult(const Program& base, const std::vector<SourceClause>& clauses) {
  Program p = base;
  for (const SourceClause& sc : clauses) {
    switch (sc.kind) {
      case ClauseKind::Query:
        break;
      case ClauseKind::Directive: {
        const Term& d = sc.term.arg(0);
        if (d.is_compound() && d.name() == "dynamic" && d.arity() == 1) declare_indicator(p, d.arg(0));
        break;
      }
      case ClauseKind::DcgRule:
        p.add(dcg_translate(GrammarRule::from_term(sc.term)));
        break;
      case ClauseKind::Clause: {
        Clause c = Clause::from_term(sc.term);
        if (!c.is_definite()) {
          std::string where = sc.file.empty() ? "" : sc.file + ":" + std::to_string(sc.line) + ": ";
          throw ProgramError(where + "not a definite clause: " + to_string(c) +
                             " (use the full clausal interpreter for disjunctive heads)");
        }
        p.add(std::move(c));
        break;
      }
    }
  }
  return p;
}

}  // namespace slog
