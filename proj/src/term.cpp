#include "sde/term.hpp"

#include <map>

namespace sde {

HeadExprPtr hx_literal(const Elem& e) {
  auto h = std::make_shared<HeadExpr>();
  h->kind = HeadExpr::Kind::Literal;
  h->literal = e;
  return h;
}

HeadExprPtr hx_head(std::size_t param, std::string name) {
  auto h = std::make_shared<HeadExpr>();
  h->kind = HeadExpr::Kind::Head;
  h->param = param;
  h->name = std::move(name);
  return h;
}

HeadExprPtr hx_op(HeadExpr::Kind kind, std::vector<HeadExprPtr> args) {
  auto h = std::make_shared<HeadExpr>();
  h->kind = kind;
  h->args = std::move(args);
  return h;
}

GuardPtr guard_otherwise() {
  static const GuardPtr g = std::make_shared<Guard>();
  return g;
}

GuardPtr guard_cmp(Guard::Kind kind, HeadExprPtr lhs, HeadExprPtr rhs) {
  auto g = std::make_shared<Guard>();
  g->kind = kind;
  g->lhs = std::move(lhs);
  g->rhs = std::move(rhs);
  return g;
}

TermPtr t_const(HeadExprPtr value) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Const;
  t->value = std::move(value);
  return t;
}

TermPtr t_literal(const Elem& e) { return t_const(hx_literal(e)); }

TermPtr t_ref(std::string name, std::size_t order, std::optional<std::size_t> param) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Ref;
  t->name = std::move(name);
  t->order = order;
  t->param = param;
  return t;
}

TermPtr t_app(std::string op, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::App;
  t->name = std::move(op);
  t->args = std::move(args);
  return t;
}

TermPtr t_deriv_of(TermPtr inner) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::DerivOf;
  t->args = {std::move(inner)};
  return t;
}

TermPtr t_leaf(const Stream& s) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Leaf;
  t->leaf = s;
  return t;
}

std::optional<std::size_t> builtin_arity(const std::string& name) {
  static const std::map<std::string, std::size_t> table = {
      {op::kAdd, 2},   {op::kMul, 2},     {op::kNeg, 1},      {op::kInv, 1},  {op::kX, 0},
      {op::kShuffle, 2}, {op::kHadamard, 2}, {op::kSqrt, 1}, {op::kEven, 1}, {op::kOdd, 1},
      {op::kZip, 2},   {op::kMerge, 2},   {op::kDelta, 1},    {op::kDdx, 1},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

const Equation* EquationSystem::find(const std::string& var) const {
  for (const auto& e : equations)
    if (e.var == var) return &e;
  return nullptr;
}

std::vector<std::string> EquationSystem::variables() const {
  std::vector<std::string> out;
  for (const auto& e : equations) out.push_back(e.var);
  return out;
}

const GsosDef* SpecFile::find_def(const std::string& name) const {
  for (const auto& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

std::string flattened_name(const std::string& v, std::size_t k) {
  return k == 0 ? v : v + "#" + std::to_string(k);
}

Elem eval_head(const Algebra& alg, const HeadExpr& e, const std::vector<Elem>& heads) {
  using K = HeadExpr::Kind;
  auto arg = [&](std::size_t i) { return eval_head(alg, *e.args[i], heads); };
  switch (e.kind) {
    case K::Literal: return e.literal;
    case K::Head:
      if (e.param >= heads.size()) fail(ErrorKind::ArityMismatch, "head of missing argument " + e.name);
      return heads[e.param];
    case K::Add: return alg.add(arg(0), arg(1));
    case K::Sub: return alg.sub(arg(0), arg(1));
    case K::Mul: return alg.mul(arg(0), arg(1));
    case K::Neg: return alg.neg(arg(0));
    case K::Div:
    case K::Inv: {
      Elem d = e.kind == K::Div ? arg(1) : arg(0);
      auto inv = alg.try_inv(d);
      if (!inv) fail(ErrorKind::HeadNotInvertible, alg.print(d) + " is not invertible");
      return e.kind == K::Div ? alg.mul(arg(0), *inv) : *inv;
    }
    case K::Sqrt: {
      Elem a = arg(0);
      auto r = alg.try_sqrt(a);
      if (!r) fail(ErrorKind::NoExactSqrt, alg.print(a) + " has no exact square root");
      return *r;
    }
    case K::NonHeadRef:
      fail(ErrorKind::InvalidArgument, "'" + e.name + "' is not a head and cannot be evaluated");
  }
  return alg.zero();
}

bool eval_guard(const Algebra& alg, const Guard& g, const std::vector<Elem>& heads) {
  using K = Guard::Kind;
  switch (g.kind) {
    case K::Otherwise: return true;
    case K::Eq: return eval_head(alg, *g.lhs, heads) == eval_head(alg, *g.rhs, heads);
    case K::Ne: return !(eval_head(alg, *g.lhs, heads) == eval_head(alg, *g.rhs, heads));
    case K::Lt: return alg.less(eval_head(alg, *g.lhs, heads), eval_head(alg, *g.rhs, heads));
    case K::Le: {
      Elem a = eval_head(alg, *g.lhs, heads);
      Elem b = eval_head(alg, *g.rhs, heads);
      return a == b || alg.less(a, b);
    }
    case K::And:
      for (const auto& p : g.parts)
        if (!eval_guard(alg, *p, heads)) return false;
      return true;
    case K::Or:
      for (const auto& p : g.parts)
        if (eval_guard(alg, *p, heads)) return true;
      return false;
    case K::Not: return !eval_guard(alg, *g.parts[0], heads);
  }
  return false;
}

namespace {

// Precedence levels shared by head expressions and terms.
constexpr int kSum = 1, kProd = 2, kUnary = 3, kAtom = 4;

struct Printed {
  std::string text;
  int prec;
};

std::string wrap(const Printed& p, int need) { return p.prec >= need ? p.text : "(" + p.text + ")"; }

Printed print_head(const Algebra& alg, const HeadExpr& e) {
  using K = HeadExpr::Kind;
  auto arg = [&](std::size_t i) { return print_head(alg, *e.args[i]); };
  switch (e.kind) {
    case K::Literal: {
      std::string s = alg.print(e.literal);
      return {s, s[0] == '-' ? kUnary : kAtom};
    }
    case K::Head: return {e.name + "(0)", kAtom};
    case K::NonHeadRef: return {e.name + std::string(e.order, '\''), kAtom};
    case K::Add: return {wrap(arg(0), kSum) + " + " + wrap(arg(1), kProd), kSum};
    case K::Sub: return {wrap(arg(0), kSum) + " - " + wrap(arg(1), kProd), kSum};
    case K::Mul: return {wrap(arg(0), kProd) + " * " + wrap(arg(1), kUnary), kProd};
    case K::Div: {
      Printed r = arg(1);
      std::string rhs = e.args[1]->kind == K::Literal ? "(" + r.text + ")" : wrap(r, kUnary);
      return {wrap(arg(0), kProd) + " / " + rhs, kProd};
    }
    case K::Neg: {
      Printed a = arg(0);
      bool literal = e.args[0]->kind == K::Literal;
      return {"-" + (literal ? "(" + a.text + ")" : wrap(a, kUnary)), kUnary};
    }
    case K::Inv: return {"inv(" + arg(0).text + ")", kAtom};
    case K::Sqrt: return {"sqrt(" + arg(0).text + ")", kAtom};
  }
  return {"?", kAtom};
}

bool plain_literal(const Algebra& alg, const HeadExpr& e) {
  if (e.kind != HeadExpr::Kind::Literal) return false;
  std::string s = alg.print(e.literal);
  return s.find_first_not_of("0123456789") == std::string::npos;
}

Printed print_term(const Algebra& alg, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Const:
      if (plain_literal(alg, *t.value)) return {alg.print(t.value->literal), kAtom};
      return {"[" + print_head(alg, *t.value).text + "]", kAtom};
    case Term::Kind::Ref: return {t.name + std::string(t.order, '\''), kAtom};
    case Term::Kind::Leaf: return {"<stream>", kAtom};
    case Term::Kind::DerivOf: return {"(" + print_term(alg, *t.args[0]).text + ")'", kAtom};
    case Term::Kind::App: break;
  }
  auto arg = [&](std::size_t i) { return print_term(alg, *t.args[i]); };
  if (t.name == op::kAdd) {
    const Term& rhs = *t.args[1];
    if (rhs.kind == Term::Kind::App && rhs.name == op::kNeg)
      return {wrap(arg(0), kSum) + " - " + wrap(print_term(alg, *rhs.args[0]), kProd), kSum};
    return {wrap(arg(0), kSum) + " + " + wrap(arg(1), kProd), kSum};
  }
  if (t.name == op::kMul) return {wrap(arg(0), kProd) + " * " + wrap(arg(1), kUnary), kProd};
  if (t.name == op::kNeg) return {"-" + wrap(arg(0), kUnary), kUnary};
  if (t.name == op::kX) return {"X", kAtom};
  std::string s = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i != 0) s += ", ";
    s += arg(i).text;
  }
  return {s + ")", kAtom};
}

bool same_args(const std::vector<HeadExprPtr>& a, const std::vector<HeadExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_head(*a[i], *b[i])) return false;
  return true;
}

}  // namespace

std::string to_string(const Algebra& alg, const HeadExpr& e) { return print_head(alg, e).text; }

std::string to_string(const Algebra& alg, const Guard& g) {
  using K = Guard::Kind;
  switch (g.kind) {
    case K::Otherwise: return "otherwise";
    case K::Eq: return to_string(alg, *g.lhs) + " = " + to_string(alg, *g.rhs);
    case K::Ne: return to_string(alg, *g.lhs) + " != " + to_string(alg, *g.rhs);
    case K::Lt: return to_string(alg, *g.lhs) + " < " + to_string(alg, *g.rhs);
    case K::Le: return to_string(alg, *g.lhs) + " <= " + to_string(alg, *g.rhs);
    case K::Not: return "!(" + to_string(alg, *g.parts[0]) + ")";
    case K::And:
    case K::Or: {
      std::string sep = g.kind == K::And ? " && " : " || ";
      std::string s = "(";
      for (std::size_t i = 0; i < g.parts.size(); ++i) s += (i ? sep : "") + to_string(alg, *g.parts[i]);
      return s + ")";
    }
  }
  return "?";
}

std::string to_string(const Algebra& alg, const Term& t) { return print_term(alg, t).text; }

std::string to_string(const Algebra& alg, const GsosDef& d) {
  std::string s = "def " + d.name + "(";
  for (std::size_t i = 0; i < d.params.size(); ++i) s += (i ? ", " : "") + d.params[i];
  s += ") {\n";
  auto prefix = [&](const Guard& g) {
    return g.kind == Guard::Kind::Otherwise ? std::string("  ") : "  when " + to_string(alg, g) + " => ";
  };
  for (const auto& c : d.out_clauses) s += prefix(*c.guard) + "out = " + to_string(alg, *c.out) + ";\n";
  for (const auto& c : d.deriv_clauses) s += prefix(*c.guard) + "deriv = " + to_string(alg, *c.deriv) + ";\n";
  return s + "}\n";
}

std::string to_string(const SpecFile& spec) {
  const Algebra& alg = *spec.algebra;
  std::string s = "algebra " + alg.name() + ";\n";
  for (const auto& d : spec.defs) s += to_string(alg, d);
  for (const auto& e : spec.system.equations) {
    s += e.var + "(0) = " + alg.print(e.head) + ";\n";
    if (e.even_odd) {
      s += "even(" + e.var + ") = " + e.even_target + ";\n";
      s += "odd(" + e.var + ") = " + e.odd_target + ";\n";
      continue;
    }
    std::string lhs = e.var + "'";
    if (e.deriv == DerivKind::Delta) lhs = "delta(" + e.var + ")";
    if (e.deriv == DerivKind::Ddx) lhs = "ddx(" + e.var + ")";
    s += lhs + " = " + to_string(alg, *e.rhs) + ";\n";
  }
  return s;
}

bool same_head(const HeadExpr& a, const HeadExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case HeadExpr::Kind::Literal: return a.literal == b.literal;
    case HeadExpr::Kind::Head: return a.param == b.param && a.name == b.name;
    case HeadExpr::Kind::NonHeadRef: return a.name == b.name && a.order == b.order;
    default: return same_args(a.args, b.args);
  }
}

bool same_guard(const Guard& a, const Guard& b) {
  if (a.kind != b.kind) return false;
  if (a.lhs && !(b.lhs && same_head(*a.lhs, *b.lhs))) return false;
  if (a.rhs && !(b.rhs && same_head(*a.rhs, *b.rhs))) return false;
  if (a.parts.size() != b.parts.size()) return false;
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    if (!same_guard(*a.parts[i], *b.parts[i])) return false;
  return true;
}

bool same_term(const Term& a, const Term& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Term::Kind::Const: return same_head(*a.value, *b.value);
    case Term::Kind::Ref: return a.name == b.name && a.order == b.order && a.param == b.param;
    case Term::Kind::Leaf:
      return a.leaf->source() == b.leaf->source() && a.leaf->offset() == b.leaf->offset();
    case Term::Kind::App:
    case Term::Kind::DerivOf:
      if (a.name != b.name || a.args.size() != b.args.size()) return false;
      for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!same_term(*a.args[i], *b.args[i])) return false;
      return true;
  }
  return false;
}

bool same_def(const GsosDef& a, const GsosDef& b) {
  if (a.name != b.name || a.params != b.params) return false;
  if (a.out_clauses.size() != b.out_clauses.size() || a.deriv_clauses.size() != b.deriv_clauses.size())
    return false;
  for (std::size_t i = 0; i < a.out_clauses.size(); ++i)
    if (!same_guard(*a.out_clauses[i].guard, *b.out_clauses[i].guard) ||
        !same_head(*a.out_clauses[i].out, *b.out_clauses[i].out))
      return false;
  for (std::size_t i = 0; i < a.deriv_clauses.size(); ++i)
    if (!same_guard(*a.deriv_clauses[i].guard, *b.deriv_clauses[i].guard) ||
        !same_term(*a.deriv_clauses[i].deriv, *b.deriv_clauses[i].deriv))
      return false;
  return true;
}

bool same_spec(const SpecFile& a, const SpecFile& b) {
  if (!a.algebra->same_as(*b.algebra) || a.defs.size() != b.defs.size()) return false;
  for (std::size_t i = 0; i < a.defs.size(); ++i)
    if (!same_def(a.defs[i], b.defs[i])) return false;
  const auto& x = a.system.equations;
  const auto& y = b.system.equations;
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].var != y[i].var || !(x[i].head == y[i].head) || x[i].even_odd != y[i].even_odd ||
        x[i].deriv != y[i].deriv || x[i].even_target != y[i].even_target || x[i].odd_target != y[i].odd_target)
      return false;
    if ((x[i].rhs == nullptr) != (y[i].rhs == nullptr)) return false;
    if (x[i].rhs && !same_term(*x[i].rhs, *y[i].rhs)) return false;
  }
  return true;
}

}  // namespace sde
