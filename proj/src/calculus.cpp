#include "sde/calculus.hpp"

#include "sde/error.hpp"

namespace sde {

namespace {

void require_ring(const Algebra& alg, const char* what) {
  if (!alg.has_neg()) fail(ErrorKind::UnsupportedOp, std::string(what) + " needs a ring, got " + alg.name());
}

class ConvMulSource final : public StreamSource {
 public:
  ConvMulSource(Stream a, Stream b) : StreamSource(a.algebra()), a_(std::move(a)), b_(std::move(b)) {}
  std::optional<std::size_t> support_bound() const override {
    auto x = a_.support_bound();
    auto y = b_.support_bound();
    if (x && *x == 0) return 0;
    if (y && *y == 0) return 0;
    if (x && y) return *x + *y - 1;
    return std::nullopt;
  }

 protected:
  Elem compute(std::size_t n) override {
    const Algebra& alg = *algebra();
    auto sa = a_.support_bound();
    auto sb = b_.support_bound();
    if ((sa && *sa == 0) || (sb && *sb == 0)) return alg.zero();
    std::size_t hi = sa ? std::min(n, *sa - 1) : n;
    std::size_t lo = sb && n >= *sb ? n - (*sb - 1) : 0;
    Elem acc = alg.zero();
    for (std::size_t k = lo; k <= hi; ++k) acc = alg.add(acc, alg.mul(a_.at(k), b_.at(n - k)));
    return acc;
  }

 private:
  Stream a_, b_;
};

class ConvInvSource final : public StreamSource {
 public:
  explicit ConvInvSource(Stream a) : StreamSource(a.algebra()), a_(std::move(a)) {}

 protected:
  Elem compute(std::size_t n) override {
    const Algebra& alg = *algebra();
    if (n == 0) {
      auto inv = alg.try_inv(a_.head());
      if (!inv) fail(ErrorKind::HeadNotInvertible, "head " + alg.print(a_.head()) + " is not invertible");
      head_inv_ = *inv;
      return *inv;
    }
    Elem acc = alg.zero();
    std::size_t hi = n;
    if (auto s = a_.support_bound()) hi = std::min(hi, *s == 0 ? 0 : *s - 1);
    for (std::size_t k = 1; k <= hi; ++k) acc = alg.add(acc, alg.mul(a_.at(k), at(n - k)));
    return alg.neg(alg.mul(head_inv_, acc));
  }

 private:
  Stream a_;
  Elem head_inv_;
};

class ShuffleSource final : public StreamSource {
 public:
  ShuffleSource(Stream a, Stream b) : StreamSource(a.algebra()), a_(std::move(a)), b_(std::move(b)) {}

 protected:
  Elem compute(std::size_t n) override {
    const Algebra& alg = *algebra();
    // Pascal's rule keeps the binomial coefficients as algebra elements.
    std::vector<Elem> next(n + 1, alg.one());
    for (std::size_t k = 1; k < n; ++k) next[k] = alg.add(row_[k - 1], row_[k]);
    row_ = std::move(next);
    Elem acc = alg.zero();
    for (std::size_t k = 0; k <= n; ++k) acc = alg.add(acc, alg.mul(row_[k], alg.mul(a_.at(k), b_.at(n - k))));
    return acc;
  }

 private:
  Stream a_, b_;
  std::vector<Elem> row_;
};

class SqrtSource final : public StreamSource {
 public:
  explicit SqrtSource(Stream a) : StreamSource(a.algebra()), a_(std::move(a)) {}

 protected:
  Elem compute(std::size_t n) override {
    const Algebra& alg = *algebra();
    if (n == 0) {
      auto root = alg.try_sqrt(a_.head());
      if (!root) fail(ErrorKind::NoExactSqrt, "head " + alg.print(a_.head()) + " has no exact square root");
      auto inv = alg.try_inv(alg.add(*root, *root));
      if (!inv) fail(ErrorKind::HeadNotInvertible, "twice the root of the head is not invertible");
      twice_root_inv_ = *inv;
      return *root;
    }
    Elem acc = a_.at(n);
    for (std::size_t k = 1; k < n; ++k) acc = alg.sub(acc, alg.mul(at(k), at(n - k)));
    return alg.mul(acc, twice_root_inv_);
  }

 private:
  Stream a_;
  Elem twice_root_inv_;
};

class MergeSource final : public StreamSource {
 public:
  MergeSource(Stream a, Stream b) : StreamSource(a.algebra()), a_(std::move(a)), b_(std::move(b)) {}

 protected:
  Elem compute(std::size_t) override {
    const Algebra& alg = *algebra();
    const Elem& x = a_.at(i_);
    const Elem& y = b_.at(j_);
    if (alg.less(x, y)) {
      ++i_;
      return x;
    }
    if (alg.less(y, x)) {
      ++j_;
      return y;
    }
    ++i_;
    ++j_;
    return x;
  }

 private:
  Stream a_, b_;
  std::size_t i_ = 0, j_ = 0;
};

class RatExprSource final : public StreamSource {
 public:
  explicit RatExprSource(const RatExpr& r) : StreamSource(r.algebra()), states_{r} {}
  std::optional<std::string> state_key(std::size_t i) override {
    extend(i);
    return states_[i].to_string();
  }
  std::optional<std::size_t> support_bound() const override {
    const Poly& den = states_[0].den();
    if (den.degree() != std::size_t{0}) return std::nullopt;
    auto d = states_[0].num().degree();
    return d ? *d + 1 : 0;
  }

 protected:
  Elem compute(std::size_t i) override {
    extend(i);
    return ratexpr_head(states_[i]);
  }

 private:
  void extend(std::size_t i) {
    while (states_.size() <= i) states_.push_back(ratexpr_derivative(states_.back()));
  }
  std::vector<RatExpr> states_;
};

class ConstantSource final : public StreamSource {
 public:
  ConstantSource(AlgebraPtr alg, Elem a) : StreamSource(std::move(alg)), a_(std::move(a)) {}
  std::optional<Elem> constant_value() const override { return a_; }
  std::optional<std::size_t> support_bound() const override { return algebra()->is_zero(a_) ? 0 : 1; }

 protected:
  Elem compute(std::size_t i) override { return i == 0 ? a_ : algebra()->zero(); }

 private:
  Elem a_;
};

template <typename Fn>
Stream elementwise(const Stream& a, Fn fn) {
  Stream src = a;
  return generate(a.algebra(), [src, fn](std::size_t n) { return fn(src.at(n)); });
}

template <typename Fn>
Stream elementwise(const Stream& a, const Stream& b, const char* what, Fn fn) {
  require_same(*a.algebra(), *b.algebra(), what);
  Stream x = a, y = b;
  return generate(a.algebra(), [x, y, fn](std::size_t n) { return fn(x.at(n), y.at(n)); });
}

}  // namespace

Stream constant(const AlgebraPtr& alg, const Elem& a) { return Stream(std::make_shared<ConstantSource>(alg, a)); }
Stream zeros(const AlgebraPtr& alg) { return constant(alg, alg->zero()); }
Stream ones(const AlgebraPtr& alg) {
  Elem one = alg->one();
  return generate(alg, [one](std::size_t) { return one; });
}
Stream x_stream(const AlgebraPtr& alg) { return from_prefix(alg, {alg->zero(), alg->one()}); }

Stream sum(const Stream& a, const Stream& b) {
  AlgebraPtr alg = a.algebra();
  return elementwise(a, b, "sum", [alg](const Elem& x, const Elem& y) { return alg->add(x, y); });
}

Stream neg(const Stream& a) {
  AlgebraPtr alg = a.algebra();
  require_ring(*alg, "negation");
  return elementwise(a, [alg](const Elem& x) { return alg->neg(x); });
}

Stream difference(const Stream& a, const Stream& b) {
  AlgebraPtr alg = a.algebra();
  require_ring(*alg, "difference");
  return elementwise(a, b, "difference", [alg](const Elem& x, const Elem& y) { return alg->sub(x, y); });
}

Stream scalar(const Elem& c, const Stream& a) {
  AlgebraPtr alg = a.algebra();
  return elementwise(a, [alg, c](const Elem& x) { return alg->mul(c, x); });
}

Stream conv_mul(const Stream& a, const Stream& b) {
  require_same(*a.algebra(), *b.algebra(), "convolution product");
  if (auto c = a.constant_value()) return scalar(*c, b);
  if (auto c = b.constant_value()) return scalar(*c, a);
  return Stream(std::make_shared<ConvMulSource>(a, b));
}

Stream conv_inv(const Stream& a) {
  require_ring(*a.algebra(), "convolution inverse");
  return Stream(std::make_shared<ConvInvSource>(a));
}

Stream shuffle_mul(const Stream& a, const Stream& b) {
  require_same(*a.algebra(), *b.algebra(), "shuffle product");
  return Stream(std::make_shared<ShuffleSource>(a, b));
}

Stream hadamard(const Stream& a, const Stream& b) {
  AlgebraPtr alg = a.algebra();
  return elementwise(a, b, "hadamard product", [alg](const Elem& x, const Elem& y) { return alg->mul(x, y); });
}

Stream sqrt_stream(const Stream& a) {
  if (a.algebra()->kind() != AlgebraKind::Field)
    fail(ErrorKind::UnsupportedOp, "square root needs a field, got " + a.algebra()->name());
  return Stream(std::make_shared<SqrtSource>(a));
}

Stream even(const Stream& a) {
  Stream s = a;
  return generate(a.algebra(), [s](std::size_t n) { return s.at(2 * n); });
}

Stream odd(const Stream& a) {
  Stream s = a;
  return generate(a.algebra(), [s](std::size_t n) { return s.at(2 * n + 1); });
}

Stream zip(const Stream& a, const Stream& b) {
  require_same(*a.algebra(), *b.algebra(), "zip");
  Stream x = a, y = b;
  return generate(a.algebra(), [x, y](std::size_t n) { return n % 2 == 0 ? x.at(n / 2) : y.at(n / 2); });
}

Stream merge(const Stream& a, const Stream& b) {
  require_same(*a.algebra(), *b.algebra(), "merge");
  if (!a.algebra()->ordered()) fail(ErrorKind::UnorderedAlgebra, "merge needs an ordered algebra, got " + a.algebra()->name());
  return Stream(std::make_shared<MergeSource>(a, b));
}

Stream delta(const Stream& a) {
  AlgebraPtr alg = a.algebra();
  require_ring(*alg, "delta");
  Stream s = a;
  return generate(alg, [alg, s](std::size_t n) { return alg->sub(s.at(n + 1), s.at(n)); });
}

Stream ddx(const Stream& a) {
  AlgebraPtr alg = a.algebra();
  Stream s = a;
  return generate(alg, [alg, s](std::size_t n) { return alg->times(n + 1, s.at(n + 1)); });
}

Stream delta_o(const BinaryOp& o, const Stream& a) {
  Stream s = a;
  return generate(a.algebra(), [o, s](std::size_t n) { return o(s.at(n), s.at(n + 1)); });
}

Stream nats(const AlgebraPtr& alg) {
  return generate(alg, [alg](std::size_t n) { return alg->from_nat(n + 1); });
}

Stream nats_inv(const AlgebraPtr& alg) {
  if (alg->kind() != AlgebraKind::Field || !alg->char_zero())
    fail(ErrorKind::UnsupportedOp, "nats inverse needs a field of characteristic zero, got " + alg->name());
  return generate(alg, [alg](std::size_t n) { return *alg->try_inv(alg->from_nat(n + 1)); });
}

Stream poly_stream(const Poly& p) { return from_prefix(p.algebra(), p.coeffs()); }

Stream ratexpr_stream(const RatExpr& r) { return Stream(std::make_shared<RatExprSource>(r)); }

}  // namespace sde
