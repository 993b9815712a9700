#include <algorithm>
#include <map>

#include "sde/classify.hpp"
#include "sde/error.hpp"
#include "sde/solvers.hpp"

namespace sde {

namespace {

void add_into(const Algebra& alg, CfPolynomial& acc, const Monomial& w, const Elem& c) {
  if (alg.is_zero(c)) return;
  auto [it, fresh] = acc.emplace(w, c);
  if (fresh) return;
  it->second = alg.add(it->second, c);
  if (alg.is_zero(it->second)) acc.erase(it);
}

Monomial merge_words(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

CfPolynomial poly_mul(const Algebra& alg, const CfPolynomial& a, const CfPolynomial& b) {
  CfPolynomial out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) add_into(alg, out, merge_words(u, v), alg.mul(x, y));
  return out;
}

struct Expander {
  const Algebra& alg;
  const std::map<std::string, std::uint32_t>& index;
  std::uint32_t x_letter;
  bool uses_x = false;

  CfPolynomial expand(const Term& t) {
    CfPolynomial out;
    switch (t.kind) {
      case Term::Kind::Ref: {
        auto it = index.find(t.name);
        if (it == index.end()) fail(ErrorKind::UnknownSymbol, "unknown stream '" + t.name + "'");
        out[{it->second}] = alg.one();
        return out;
      }
      case Term::Kind::Const:
        add_into(alg, out, {}, eval_head(alg, *t.value, {}));
        return out;
      case Term::Kind::App: break;
      default: fail(ErrorKind::UnsupportedOp, "term is not a polynomial");
    }
    if (t.name == op::kX) {
      uses_x = true;
      out[{x_letter}] = alg.one();
      return out;
    }
    if (t.name == op::kNeg) {
      Elem m1 = alg.neg(alg.one());
      for (const auto& [w, c] : expand(*t.args[0])) add_into(alg, out, w, alg.mul(m1, c));
      return out;
    }
    CfPolynomial a = expand(*t.args[0]);
    CfPolynomial b = expand(*t.args[1]);
    if (t.name == op::kMul) return poly_mul(alg, a, b);
    for (const auto& [w, c] : b) add_into(alg, a, w, c);
    return a;
  }
};

// Polynomial automaton with memoized per-word outputs and derivatives.
class CfMachine {
 public:
  explicit CfMachine(ContextFreeSystem sys) : sys_(std::move(sys)) {
    CfPolynomial one;
    one[{}] = sys_.algebra->one();
    x_deriv_ = std::move(one);
  }

  const ContextFreeSystem& system() const { return sys_; }

  const Elem& letter_out(std::uint32_t l) const {
    return l == sys_.x_letter() ? zero_ : sys_.heads[l];
  }

  const CfPolynomial& letter_deriv(std::uint32_t l) const { return l == sys_.x_letter() ? x_deriv_ : sys_.rhs[l]; }

  const Elem& word_out(const Monomial& w) {
    auto it = out_memo_.find(w);
    if (it != out_memo_.end()) return it->second;
    const Algebra& alg = *sys_.algebra;
    Elem acc = alg.one();
    for (auto l : w) acc = alg.mul(acc, letter_out(l));
    return out_memo_.emplace(w, acc).first->second;
  }

  const CfPolynomial& word_deriv(const Monomial& w) {
    auto it = deriv_memo_.find(w);
    if (it != deriv_memo_.end()) return it->second;
    const Algebra& alg = *sys_.algebra;
    CfPolynomial acc;
    Elem pre = alg.one();
    for (std::size_t i = 0; i < w.size() && !alg.is_zero(pre); ++i) {
      Monomial rest(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
      for (const auto& [u, c] : letter_deriv(w[i])) add_into(alg, acc, merge_words(u, rest), alg.mul(pre, c));
      pre = alg.mul(pre, letter_out(w[i]));
    }
    return deriv_memo_.emplace(w, std::move(acc)).first->second;
  }

  Elem output(const CfPolynomial& p) {
    const Algebra& alg = *sys_.algebra;
    Elem acc = alg.zero();
    for (const auto& [w, c] : p) acc = alg.add(acc, alg.mul(c, word_out(w)));
    return acc;
  }

  CfPolynomial derivative(const CfPolynomial& p) {
    const Algebra& alg = *sys_.algebra;
    CfPolynomial acc;
    for (const auto& [w, c] : p)
      for (const auto& [u, k] : word_deriv(w)) add_into(alg, acc, u, alg.mul(c, k));
    return acc;
  }

 private:
  ContextFreeSystem sys_;
  Elem zero_ = sys_.algebra->zero();
  CfPolynomial x_deriv_;
  std::map<Monomial, Elem> out_memo_;
  std::map<Monomial, CfPolynomial> deriv_memo_;
};

class CfSource final : public StreamSource {
 public:
  CfSource(std::shared_ptr<CfMachine> m, std::uint32_t var)
      : StreamSource(m->system().algebra), machine_(std::move(m)) {
    state_[{var}] = algebra()->one();
  }

 protected:
  Elem compute(std::size_t i) override {
    if (i > 0) state_ = machine_->derivative(state_);
    return machine_->output(state_);
  }

 private:
  std::shared_ptr<CfMachine> machine_;
  CfPolynomial state_;
};

// Coefficients through sigma = sigma(0) + X * sigma': element n + 1 of each
// unknown is element n of its right-hand side, and products are Cauchy
// products of prefixes that are already known.
class CfSeries {
 public:
  explicit CfSeries(ContextFreeSystem sys) : sys_(std::move(sys)), vals_(sys_.vars.size()) {
    for (std::size_t v = 0; v < sys_.vars.size(); ++v) vals_[v].push_back(sys_.heads[v]);
  }

  const ContextFreeSystem& system() const { return sys_; }

  const Elem& value(std::uint32_t var, std::size_t i) {
    while (vals_[var].size() <= i) step();
    return vals_[var][i];
  }

 private:
  Elem letter(std::uint32_t l, std::size_t k) const {
    const Algebra& alg = *sys_.algebra;
    if (l == sys_.x_letter()) return k == 1 ? alg.one() : alg.zero();
    return vals_[l][k];
  }

  // Element n of the product of the letters in w, with every shorter prefix
  // of w memoized up to n.
  const Elem& product(const Monomial& w, std::size_t n) {
    auto& memo = products_[w];
    while (memo.size() <= n) {
      const Algebra& alg = *sys_.algebra;
      std::size_t k = memo.size();
      if (w.empty()) {
        memo.push_back(k == 0 ? alg.one() : alg.zero());
        continue;
      }
      Monomial head(w.begin(), w.end() - 1);
      std::uint32_t last = w.back();
      Elem acc = alg.zero();
      for (std::size_t j = 0; j <= k; ++j) {
        Elem b = letter(last, k - j);
        if (alg.is_zero(b)) continue;
        acc = alg.add(acc, alg.mul(product(head, j), b));
      }
      products_[w].push_back(acc);
    }
    return products_[w][n];
  }

  void step() {
    const Algebra& alg = *sys_.algebra;
    std::size_t n = vals_[0].size() - 1;
    std::vector<Elem> next;
    for (std::size_t v = 0; v < sys_.vars.size(); ++v) {
      Elem acc = alg.zero();
      for (const auto& [w, c] : sys_.rhs[v]) acc = alg.add(acc, alg.mul(c, product(w, n)));
      next.push_back(acc);
    }
    for (std::size_t v = 0; v < sys_.vars.size(); ++v) vals_[v].push_back(next[v]);
  }

  ContextFreeSystem sys_;
  std::vector<std::vector<Elem>> vals_;
  std::map<Monomial, std::vector<Elem>> products_;
};

class CfSeriesSource final : public StreamSource {
 public:
  CfSeriesSource(std::shared_ptr<CfSeries> m, std::uint32_t var)
      : StreamSource(m->system().algebra), machine_(std::move(m)), var_(var) {}

 protected:
  Elem compute(std::size_t i) override { return machine_->value(var_, i); }

 private:
  std::shared_ptr<CfSeries> machine_;
  std::uint32_t var_;
};

}  // namespace

ContextFreeSystem to_context_free(const EquationSystem& sys) {
  ContextFreeSystem cf;
  cf.algebra = sys.algebra;
  cf.vars = sys.variables();
  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < cf.vars.size(); ++i) index[cf.vars[i]] = i;
  Expander ex{*sys.algebra, index, cf.x_letter()};
  for (const auto& e : sys.equations) {
    if (e.even_odd || e.deriv != DerivKind::Tail || !is_polynomial_rhs(*e.rhs))
      fail(ErrorKind::UnsupportedOp, "equation for " + e.var + " is not context-free");
    cf.heads.push_back(e.head);
    cf.rhs.push_back(ex.expand(*e.rhs));
  }
  cf.uses_x = ex.uses_x;
  return cf;
}

std::string to_string(const ContextFreeSystem& sys, const CfPolynomial& p) {
  if (p.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : p) {
    if (!out.empty()) out += " + ";
    out += sys.algebra->print(c);
    for (auto l : w) out += "*" + (l == sys.x_letter() ? std::string("X") : sys.vars[l]);
  }
  return out;
}

Solution solve_context_free(const ContextFreeSystem& sys) {
  auto machine = std::make_shared<CfSeries>(sys);
  Solution s;
  s.vars = sys.vars;
  for (std::uint32_t i = 0; i < sys.vars.size(); ++i)
    s.streams.emplace(sys.vars[i], Stream(std::make_shared<CfSeriesSource>(machine, i)));
  return s;
}

Solution solve_context_free_automaton(const ContextFreeSystem& sys) {
  auto machine = std::make_shared<CfMachine>(sys);
  Solution s;
  s.vars = sys.vars;
  for (std::uint32_t i = 0; i < sys.vars.size(); ++i)
    s.streams.emplace(sys.vars[i], Stream(std::make_shared<CfSource>(machine, i)));
  return s;
}

}  // namespace sde
