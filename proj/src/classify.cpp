#include "sde/classify.hpp"

#include <algorithm>

namespace sde {

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::Simple: return "Simple";
    case SystemKind::Linear: return "Linear";
    case SystemKind::ContextFree: return "ContextFree";
    case SystemKind::NonStd: return "NonStd";
    case SystemKind::EvenOdd: return "EvenOdd";
    case SystemKind::General: return "General";
  }
  return "?";
}

std::string to_string(DerivKind kind) {
  switch (kind) {
    case DerivKind::Tail: return "tail";
    case DerivKind::Delta: return "delta";
    case DerivKind::Ddx: return "ddx";
    case DerivKind::DeltaO: return "delta_o";
  }
  return "?";
}

std::string to_string(GsosViolationKind kind) {
  switch (kind) {
    case GsosViolationKind::HigherDVar: return "HigherDVar";
    case GsosViolationKind::DerivativeOfTerm: return "DerivativeOfTerm";
    case GsosViolationKind::NonHeadGuard: return "NonHeadGuard";
    case GsosViolationKind::NonExhaustiveGuards: return "NonExhaustiveGuards";
  }
  return "?";
}

namespace {

bool literal_only(const HeadExpr& e) {
  if (e.kind == HeadExpr::Kind::Head || e.kind == HeadExpr::Kind::NonHeadRef) return false;
  return std::all_of(e.args.begin(), e.args.end(), [](const HeadExprPtr& a) { return literal_only(*a); });
}

bool is_unknown(const Term& t) { return t.kind == Term::Kind::Ref && t.order == 0 && !t.param; }

bool is_zero_literal(const Term& t) {
  return t.kind == Term::Kind::Const && t.value->kind == HeadExpr::Kind::Literal &&
         t.value->literal.value() == 0 && !t.value->literal.is_infinite();
}

}  // namespace

bool is_scalar_term(const Term& t) {
  if (t.kind == Term::Kind::Const) return literal_only(*t.value);
  if (t.kind != Term::Kind::App) return false;
  if (t.name == op::kNeg) return is_scalar_term(*t.args[0]);
  if (t.name == op::kMul || t.name == op::kAdd) return is_scalar_term(*t.args[0]) && is_scalar_term(*t.args[1]);
  return false;
}

bool is_simple_rhs(const Term& t) { return is_unknown(t); }

bool is_linear_rhs(const Term& t) {
  if (is_unknown(t) || is_zero_literal(t)) return true;
  if (t.kind != Term::Kind::App) return false;
  if (t.name == op::kAdd) return is_linear_rhs(*t.args[0]) && is_linear_rhs(*t.args[1]);
  if (t.name == op::kNeg) return is_linear_rhs(*t.args[0]);
  if (t.name == op::kMul)
    return (is_scalar_term(*t.args[0]) && is_linear_rhs(*t.args[1])) ||
           (is_linear_rhs(*t.args[0]) && is_scalar_term(*t.args[1]));
  return false;
}

bool is_polynomial_rhs(const Term& t) {
  if (is_unknown(t)) return true;
  if (t.kind == Term::Kind::Const) return literal_only(*t.value);
  if (t.kind != Term::Kind::App) return false;
  if (t.name == op::kX) return true;
  if (t.name == op::kAdd || t.name == op::kMul) return is_polynomial_rhs(*t.args[0]) && is_polynomial_rhs(*t.args[1]);
  if (t.name == op::kNeg) return is_polynomial_rhs(*t.args[0]);
  return false;
}

Classification classify(const EquationSystem& sys) {
  const auto& eqs = sys.equations;
  if (eqs.empty()) return {SystemKind::Simple};
  bool all_evenodd = std::all_of(eqs.begin(), eqs.end(), [](const Equation& e) { return e.even_odd; });
  if (all_evenodd) return {SystemKind::EvenOdd};
  if (std::any_of(eqs.begin(), eqs.end(), [](const Equation& e) { return e.even_odd; })) return {SystemKind::General};

  // Flattening produces plain tail equations v#k' = v#(k+1); a non-standard
  // system keeps those only as the tail of its own chain.
  std::optional<DerivKind> nonstd;
  for (const auto& e : eqs) {
    if (e.deriv == DerivKind::Tail) continue;
    if (nonstd && *nonstd != e.deriv) return {SystemKind::General};
    nonstd = e.deriv;
  }
  if (nonstd) {
    for (const auto& e : eqs) {
      if (e.deriv == DerivKind::Tail) return {SystemKind::General};
      if (!is_polynomial_rhs(*e.rhs)) return {SystemKind::General};
    }
    return {SystemKind::NonStd, *nonstd};
  }

  SystemKind kind = SystemKind::Simple;
  for (const auto& e : eqs) {
    const Term& r = *e.rhs;
    if (is_simple_rhs(r)) continue;
    if (is_linear_rhs(r)) {
      kind = std::max(kind, SystemKind::Linear);
    } else if (is_polynomial_rhs(r)) {
      kind = std::max(kind, SystemKind::ContextFree);
    } else {
      return {SystemKind::General};
    }
  }
  return {kind};
}

namespace {

void scan_deriv(const Term& t, const GsosDef& def, GsosCheck& out) {
  if (t.kind == Term::Kind::Ref && t.param) {
    if (t.order >= 2)
      out.violations.push_back({GsosViolationKind::HigherDVar,
                                def.name + ": " + t.name + std::string(t.order, '\'') + " is a higher derivative"});
    if (t.order == 0) out.sos = false;
  }
  if (t.kind == Term::Kind::DerivOf)
    out.violations.push_back({GsosViolationKind::DerivativeOfTerm, def.name + ": derivative of a compound term"});
  if (t.kind == Term::Kind::Const && t.value) {
    // Heads may appear inside constants; anything else is not a head.
    std::vector<const HeadExpr*> todo{t.value.get()};
    while (!todo.empty()) {
      const HeadExpr* h = todo.back();
      todo.pop_back();
      if (h->kind == HeadExpr::Kind::NonHeadRef)
        out.violations.push_back({GsosViolationKind::NonHeadGuard, def.name + ": " + h->name + " used as a head"});
      for (const auto& a : h->args) todo.push_back(a.get());
    }
  }
  for (const auto& a : t.args) scan_deriv(*a, def, out);
}

bool head_has_nonhead(const HeadExpr& e) {
  if (e.kind == HeadExpr::Kind::NonHeadRef) return true;
  return std::any_of(e.args.begin(), e.args.end(), [](const HeadExprPtr& a) { return head_has_nonhead(*a); });
}

bool guard_has_nonhead(const Guard& g) {
  if (g.lhs && head_has_nonhead(*g.lhs)) return true;
  if (g.rhs && head_has_nonhead(*g.rhs)) return true;
  return std::any_of(g.parts.begin(), g.parts.end(), [](const GuardPtr& p) { return guard_has_nonhead(*p); });
}

// Outcomes of comparing (a, b): bit 0 for a < b, bit 1 for a = b, bit 2 for a > b.
int outcomes(const Guard& g, const HeadExpr& a, const HeadExpr& b) {
  bool forward = same_head(*g.lhs, a) && same_head(*g.rhs, b);
  bool backward = same_head(*g.lhs, b) && same_head(*g.rhs, a);
  if (!forward && !backward) return -1;
  int lt = forward ? 1 : 4, gt = forward ? 4 : 1;
  switch (g.kind) {
    case Guard::Kind::Lt: return lt;
    case Guard::Kind::Le: return lt | 2;
    case Guard::Kind::Eq: return 2;
    case Guard::Kind::Ne: return lt | gt;
    default: return -1;
  }
}

template <typename Clause>
bool exhaustive(const std::vector<Clause>& clauses) {
  for (const auto& c : clauses)
    if (c.guard->kind == Guard::Kind::Otherwise) return true;
  const Guard& first = *clauses.front().guard;
  if (!first.lhs) return false;
  int covered = 0;
  for (const auto& c : clauses) {
    int o = outcomes(*c.guard, *first.lhs, *first.rhs);
    if (o < 0) return false;
    covered |= o;
  }
  return covered == 7;
}

}  // namespace

GsosCheck validate_gsos(const GsosDef& def) {
  GsosCheck out;
  out.sos = true;
  for (const auto& c : def.out_clauses) {
    if (guard_has_nonhead(*c.guard))
      out.violations.push_back({GsosViolationKind::NonHeadGuard, def.name + ": guard refers to a non-head"});
    if (head_has_nonhead(*c.out))
      out.violations.push_back({GsosViolationKind::NonHeadGuard, def.name + ": output refers to a non-head"});
  }
  for (const auto& c : def.deriv_clauses) {
    if (guard_has_nonhead(*c.guard))
      out.violations.push_back({GsosViolationKind::NonHeadGuard, def.name + ": guard refers to a non-head"});
    scan_deriv(*c.deriv, def, out);
  }
  if (!def.out_clauses.empty() && !exhaustive(def.out_clauses))
    out.violations.push_back({GsosViolationKind::NonExhaustiveGuards, def.name + ": out clauses are not exhaustive"});
  if (!def.deriv_clauses.empty() && !exhaustive(def.deriv_clauses))
    out.violations.push_back({GsosViolationKind::NonExhaustiveGuards, def.name + ": deriv clauses are not exhaustive"});
  return out;
}

ZeroConsistency check_zero_consistency(const EquationSystem& sys) {
  for (const auto& e : sys.equations) {
    if (!e.even_odd) continue;
    const Equation* target = sys.find(e.even_target);
    if (target && !(target->head == e.head)) return {false, e.var};
  }
  return {};
}

}  // namespace sde
