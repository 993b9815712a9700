#include "sde/solvers.hpp"

#include <unordered_map>

#include "sde/classify.hpp"
#include "sde/error.hpp"

namespace sde {

const Stream& Solution::at(const std::string& var) const {
  auto it = streams.find(var);
  if (it == streams.end()) fail(ErrorKind::UnknownSymbol, "no stream named '" + var + "'");
  return it->second;
}

std::size_t StreamAutomaton::index(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  fail(ErrorKind::UnknownSymbol, "no state named '" + name + "'");
}

StreamAutomaton to_automaton(const EquationSystem& sys) {
  StreamAutomaton a;
  a.algebra = sys.algebra;
  a.names = sys.variables();
  for (const auto& e : sys.equations) {
    if (e.even_odd || e.deriv != DerivKind::Tail || !is_simple_rhs(*e.rhs))
      fail(ErrorKind::UnsupportedOp, "equation for " + e.var + " is not simple");
    a.out.push_back(e.head);
  }
  for (const auto& e : sys.equations) a.next.push_back(a.index(e.rhs->name));
  return a;
}

namespace {

class AutomatonSource final : public StreamSource {
 public:
  AutomatonSource(StreamAutomaton a, std::size_t start) : StreamSource(a.algebra), a_(std::move(a)), states_{start} {}
  std::optional<std::string> state_key(std::size_t i) override {
    extend(i);
    return std::to_string(states_[i]);
  }

 protected:
  Elem compute(std::size_t i) override {
    extend(i);
    return a_.out[states_[i]];
  }

 private:
  void extend(std::size_t i) {
    while (states_.size() <= i) states_.push_back(a_.next[states_.back()]);
  }
  StreamAutomaton a_;
  std::vector<std::size_t> states_;
};

}  // namespace

Stream automaton_stream(const StreamAutomaton& a, std::size_t state) {
  if (state >= a.out.size()) fail(ErrorKind::InvalidArgument, "state out of range");
  return Stream(std::make_shared<AutomatonSource>(a, state));
}

Solution solve_simple(const EquationSystem& sys) {
  StreamAutomaton a = to_automaton(sys);
  Solution s;
  s.vars = a.names;
  for (std::size_t i = 0; i < a.names.size(); ++i) s.streams.emplace(a.names[i], automaton_stream(a, i));
  return s;
}

Periodicity detect_eventually_periodic(const Stream& s, std::size_t bound) {
  if (s.state_key(0)) {
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i <= bound; ++i) {
      std::string key = *s.state_key(i);
      auto [it, fresh] = seen.emplace(key, i);
      if (!fresh) return Periodic{it->second, i};
    }
    return UnknownPeriod{};
  }
  std::vector<Elem> xs;
  try {
    xs = take(s, bound);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExhausted) throw;
    return UnknownPeriod{};
  }
  for (std::size_t n = 1; n < bound; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = n - k;
      if (k + 2 * p > bound) continue;
      bool ok = true;
      for (std::size_t i = k; i + p < bound && ok; ++i) ok = xs[i] == xs[i + p];
      if (ok) return Periodic{k, n};
    }
  }
  return UnknownPeriod{};
}

Stream native_eval(const Term& t, const AlgebraPtr& alg, const std::function<Stream(const std::string&)>& lookup) {
  auto arg = [&](std::size_t i) { return native_eval(*t.args[i], alg, lookup); };
  switch (t.kind) {
    case Term::Kind::Const: return constant(alg, eval_head(*alg, *t.value, {}));
    case Term::Kind::Ref:
      if (t.param || t.order != 0) fail(ErrorKind::UnsupportedOp, "parameters cannot be evaluated natively");
      return lookup(t.name);
    case Term::Kind::Leaf: return *t.leaf;
    case Term::Kind::DerivOf: return arg(0).tail();
    case Term::Kind::App: break;
  }
  const std::string& f = t.name;
  if (f == op::kAdd) return sum(arg(0), arg(1));
  if (f == op::kMul) return conv_mul(arg(0), arg(1));
  if (f == op::kNeg) return neg(arg(0));
  if (f == op::kInv) return conv_inv(arg(0));
  if (f == op::kX) return x_stream(alg);
  if (f == op::kShuffle) return shuffle_mul(arg(0), arg(1));
  if (f == op::kHadamard) return hadamard(arg(0), arg(1));
  if (f == op::kSqrt) return sqrt_stream(arg(0));
  if (f == op::kEven) return even(arg(0));
  if (f == op::kOdd) return odd(arg(0));
  if (f == op::kZip) return zip(arg(0), arg(1));
  if (f == op::kMerge) return merge(arg(0), arg(1));
  if (f == op::kDelta) return delta(arg(0));
  if (f == op::kDdx) return ddx(arg(0));
  fail(ErrorKind::UnsupportedOp, "operator " + f + " has no native implementation");
}

Solution solve_nonstd(const EquationSystem& sys, DerivKind kind, const std::optional<DeltaOSpec>& delta_o) {
  const AlgebraPtr& alg = sys.algebra;
  for (const auto& e : sys.equations)
    if (e.even_odd || e.deriv != kind)
      fail(ErrorKind::InvalidArgument, "equation for " + e.var + " does not use the " + to_string(kind) + " derivative");

  if (kind == DerivKind::Tail) fail(ErrorKind::InvalidArgument, "system is standard");
  if (kind == DerivKind::Delta) {
    // delta(x) = t  is  x' = t + x.
    if (!alg->has_neg()) fail(ErrorKind::UnsupportedOp, "delta needs a ring, got " + alg->name());
    EquationSystem rewritten = sys;
    for (auto& e : rewritten.equations) {
      e.rhs = t_app(op::kAdd, {e.rhs, t_ref(e.var)});
      e.deriv = DerivKind::Tail;
    }
    switch (classify(rewritten).kind) {
      case SystemKind::Simple:
      case SystemKind::Linear: return solve_linear_coinductive(to_linear(rewritten));
      default: return solve_context_free(to_context_free(rewritten));
    }
  }
  if (kind == DerivKind::Ddx && (alg->kind() != AlgebraKind::Field || !alg->char_zero()))
    fail(ErrorKind::UnsupportedOp, "d/dX reconstruction needs a field of characteristic zero, got " + alg->name());
  if (kind == DerivKind::DeltaO && !delta_o)
    fail(ErrorKind::InvalidArgument, "delta_o needs the operation and its inverse");

  std::map<std::string, LateBound> slots;
  for (const auto& e : sys.equations) slots.emplace(e.var, LateBound(alg));
  auto lookup = [&](const std::string& name) -> Stream {
    auto it = slots.find(name);
    if (it == slots.end()) fail(ErrorKind::UnknownSymbol, "unknown stream '" + name + "'");
    return it->second.placeholder();
  };
  Solution sol;
  for (const auto& e : sys.equations) {
    Stream t = native_eval(*e.rhs, alg, lookup);
    Stream tail = t;
    if (kind == DerivKind::Ddx) {
      // x(n+1) = (ddx x)(n) / (n+1)
      tail = hadamard(t, nats_inv(alg));
    } else {
      Stream self = slots.at(e.var).placeholder();
      BinaryOp inverse = delta_o->inverse;
      tail = generate(alg, [self, t, inverse](std::size_t n) { return inverse(self.at(n), t.at(n)); });
    }
    Stream x = cons(e.head, tail);
    slots.at(e.var).bind(x);
    sol.vars.push_back(e.var);
    sol.streams.emplace(e.var, x);
  }
  return sol;
}

}  // namespace sde
