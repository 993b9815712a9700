#include "sde/classify.hpp"
#include "sde/error.hpp"
#include "sde/solvers.hpp"

namespace sde {

namespace {

Elem scalar_value(const Algebra& alg, const Term& t) {
  if (t.kind == Term::Kind::Const) return eval_head(alg, *t.value, {});
  if (t.name == op::kNeg) return alg.neg(scalar_value(alg, *t.args[0]));
  if (t.name == op::kMul) return alg.mul(scalar_value(alg, *t.args[0]), scalar_value(alg, *t.args[1]));
  return alg.add(scalar_value(alg, *t.args[0]), scalar_value(alg, *t.args[1]));
}

void collect_linear(const Algebra& alg, const Term& t, const Elem& coeff, std::map<std::string, Elem>& acc) {
  if (t.kind == Term::Kind::Ref) {
    auto [it, fresh] = acc.emplace(t.name, coeff);
    if (!fresh) it->second = alg.add(it->second, coeff);
    return;
  }
  if (t.kind == Term::Kind::Const) return;  // the zero literal
  if (t.name == op::kAdd) {
    collect_linear(alg, *t.args[0], coeff, acc);
    collect_linear(alg, *t.args[1], coeff, acc);
  } else if (t.name == op::kNeg) {
    collect_linear(alg, *t.args[0], alg.neg(coeff), acc);
  } else if (is_scalar_term(*t.args[0])) {
    collect_linear(alg, *t.args[1], alg.mul(coeff, scalar_value(alg, *t.args[0])), acc);
  } else {
    collect_linear(alg, *t.args[0], alg.mul(coeff, scalar_value(alg, *t.args[1])), acc);
  }
}

class LinearSource final : public StreamSource {
 public:
  LinearSource(std::shared_ptr<const LinearSystem> sys, std::size_t start)
      : StreamSource(sys->algebra), sys_(std::move(sys)) {
    std::vector<Elem> v(sys_->vars.size(), algebra()->zero());
    v[start] = algebra()->one();
    states_.push_back(std::move(v));
  }
  std::optional<std::string> state_key(std::size_t i) override {
    extend(i);
    std::string key;
    for (const auto& c : states_[i]) key += algebra()->print(c) + ",";
    return key;
  }

 protected:
  Elem compute(std::size_t i) override {
    extend(i);
    const Algebra& alg = *algebra();
    Elem acc = alg.zero();
    for (std::size_t j = 0; j < states_[i].size(); ++j) acc = alg.add(acc, alg.mul(states_[i][j], sys_->heads[j]));
    return acc;
  }

 private:
  void extend(std::size_t i) {
    const Algebra& alg = *algebra();
    while (states_.size() <= i) {
      const auto& v = states_.back();
      std::vector<Elem> next(v.size(), alg.zero());
      for (std::size_t r = 0; r < v.size(); ++r) {
        if (alg.is_zero(v[r])) continue;
        for (std::size_t c = 0; c < v.size(); ++c) next[c] = alg.add(next[c], alg.mul(v[r], sys_->m[r][c]));
      }
      states_.push_back(std::move(next));
    }
  }
  std::shared_ptr<const LinearSystem> sys_;
  std::vector<std::vector<Elem>> states_;
};

// Coefficients a with sum_i a_i basis[i] = target, if any (exact elimination).
std::optional<std::vector<Elem>> solve_in_span(const Algebra& alg, const std::vector<std::vector<Elem>>& basis,
                                               const std::vector<Elem>& target) {
  std::size_t rows = target.size(), cols = basis.size();
  std::vector<std::vector<Elem>> a(rows, std::vector<Elem>(cols + 1, alg.zero()));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = basis[c][r];
    a[r][cols] = target[r];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t p = row;
    while (p < rows && alg.is_zero(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[row]);
    Elem inv = *alg.try_inv(a[row][c]);
    for (auto& x : a[row]) x = alg.mul(x, inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || alg.is_zero(a[r][c])) continue;
      Elem f = a[r][c];
      for (std::size_t k = 0; k <= cols; ++k) a[r][k] = alg.sub(a[r][k], alg.mul(f, a[row][k]));
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (!alg.is_zero(a[r][cols])) return std::nullopt;
  std::vector<Elem> x(cols, alg.zero());
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = a[i][cols];
  return x;
}

}  // namespace

LinearSystem to_linear(const EquationSystem& sys) {
  LinearSystem l;
  l.algebra = sys.algebra;
  l.vars = sys.variables();
  const Algebra& alg = *sys.algebra;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < l.vars.size(); ++i) index[l.vars[i]] = i;
  for (const auto& e : sys.equations) {
    if (e.even_odd || e.deriv != DerivKind::Tail || !is_linear_rhs(*e.rhs))
      fail(ErrorKind::UnsupportedOp, "equation for " + e.var + " is not linear");
    l.heads.push_back(e.head);
    std::map<std::string, Elem> acc;
    collect_linear(alg, *e.rhs, alg.one(), acc);
    std::vector<Elem> row(l.vars.size(), alg.zero());
    for (const auto& [name, c] : acc) {
      auto it = index.find(name);
      if (it == index.end()) fail(ErrorKind::UnknownSymbol, "unknown stream '" + name + "'");
      row[it->second] = c;
    }
    l.m.push_back(std::move(row));
  }
  return l;
}

EquationSystem to_equations(const LinearSystem& sys) {
  EquationSystem out;
  out.algebra = sys.algebra;
  const Algebra& alg = *sys.algebra;
  for (std::size_t i = 0; i < sys.vars.size(); ++i) {
    Equation e;
    e.var = sys.vars[i];
    e.head = sys.heads[i];
    for (std::size_t j = 0; j < sys.vars.size(); ++j) {
      const Elem& c = sys.m[i][j];
      if (alg.is_zero(c)) continue;
      TermPtr t = c == alg.one() ? t_ref(sys.vars[j]) : t_app(op::kMul, {t_literal(c), t_ref(sys.vars[j])});
      e.rhs = e.rhs ? t_app(op::kAdd, {e.rhs, t}) : t;
    }
    if (!e.rhs) e.rhs = t_literal(alg.zero());
    out.equations.push_back(std::move(e));
  }
  return out;
}

std::vector<RatExpr> solve_linear_matrix(const LinearSystem& sys) {
  const AlgebraPtr& alg = sys.algebra;
  if (alg->kind() != AlgebraKind::Field)
    fail(ErrorKind::UnsupportedOp, "the matrix method needs a field, got " + alg->name());
  std::size_t n = sys.vars.size();
  RatMatrix a(n, std::vector<RatExpr>(n, RatExpr(Poly(alg))));
  std::vector<RatExpr> b;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Elem diag = i == j ? alg->one() : alg->zero();
      a[i][j] = RatExpr(Poly(alg, {diag, alg->neg(sys.m[i][j])}));
    }
    b.push_back(RatExpr(Poly::constant(alg, sys.heads[i])));
  }
  return gauss_solve(std::move(a), std::move(b));
}

Solution solve_linear_coinductive(const LinearSystem& sys) {
  auto shared = std::make_shared<const LinearSystem>(sys);
  Solution s;
  s.vars = sys.vars;
  for (std::size_t i = 0; i < sys.vars.size(); ++i)
    s.streams.emplace(sys.vars[i], Stream(std::make_shared<LinearSource>(shared, i)));
  return s;
}

LinearSystem rational_to_linear(const RatExpr& r) {
  const AlgebraPtr& alg = r.algebra();
  LinearSystem l;
  l.algebra = alg;
  if (r.is_zero()) {
    l.vars = {"x0"};
    l.heads = {alg->zero()};
    l.m = {{alg->zero()}};
    return l;
  }
  // All derivatives share the denominator of r, so they are represented by
  // their numerators, which live in a space of dimension `dim`.
  const Poly& den = r.den();
  std::size_t dim = std::max(r.num().degree().value_or(0) + 1, den.degree().value_or(0)) + 1;
  auto coords = [&](const Poly& p) {
    std::vector<Elem> v(dim, alg->zero());
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) v[i] = p.coeffs()[i];
    return v;
  };
  std::vector<std::vector<Elem>> basis;
  Poly p = r.num();
  while (true) {
    std::vector<Elem> v = coords(p);
    if (auto a = solve_in_span(*alg, basis, v)) {
      std::size_t d = basis.size();
      for (std::size_t i = 0; i < d; ++i) {
        l.vars.push_back("x" + std::to_string(i));
        std::vector<Elem> row(d, alg->zero());
        if (i + 1 < d) {
          row[i + 1] = alg->one();
        } else {
          row = *a;
        }
        l.m.push_back(std::move(row));
      }
      return l;
    }
    basis.push_back(std::move(v));
    l.heads.push_back(p.at_zero());
    p = shift_down(p - scale(p.at_zero(), den));
  }
}

}  // namespace sde
