#include "sde/algebra.hpp"

#include <functional>
#include <map>
#include <mutex>

#include "sde/error.hpp"

namespace sde {

Elem Elem::infinity() {
  Elem e;
  e.infinite_ = true;
  return e;
}

std::size_t Elem::hash() const {
  if (infinite_) return 0x9e3779b97f4a7c15ULL;
  std::size_t h = std::hash<std::string>{}(value_.get_num().get_str(16));
  h ^= std::hash<std::string>{}(value_.get_den().get_str(16)) + 0x9e3779b9 + (h << 6) + (h >> 2);
  return h;
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&]() -> mpq_class { fail(ErrorKind::InvalidArgument, "malformed number '" + s + "'"); };
  if (s.empty()) return bad();
  std::size_t slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto digits_ok = [](const std::string& d, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < d.size() && (d[i] == '-' || d[i] == '+')) ++i;
    if (i == d.size()) return false;
    for (; i < d.size(); ++i)
      if (d[i] < '0' || d[i] > '9') return false;
    return true;
  };
  if (!digits_ok(num, true) || !digits_ok(den, false)) return bad();
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) fail(ErrorKind::InvalidArgument, "zero denominator in '" + s + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

namespace {

bool perfect_square(const mpz_class& z, mpz_class& root) {
  if (z < 0) return false;
  root = sqrt(z);
  return root * root == z;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  mpz_class rn, rd;
  if (!perfect_square(q.get_num(), rn) || !perfect_square(q.get_den(), rd)) return std::nullopt;
  return mpq_class(rn, rd);
}

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

class RationalField final : public Algebra {
 public:
  std::string name() const override { return "Q"; }
  AlgebraKind kind() const override { return AlgebraKind::Field; }
  bool ordered() const override { return true; }
  bool char_zero() const override { return true; }
  Elem zero() const override { return Elem(0L); }
  Elem one() const override { return Elem(1L); }
  Elem add(const Elem& a, const Elem& b) const override { return Elem(mpq_class(a.value() + b.value())); }
  Elem mul(const Elem& a, const Elem& b) const override { return Elem(mpq_class(a.value() * b.value())); }
  Elem neg(const Elem& a) const override { return Elem(mpq_class(-a.value())); }
  std::optional<Elem> try_inv(const Elem& a) const override {
    if (a.value() == 0) return std::nullopt;
    return Elem(mpq_class(1 / a.value()));
  }
  std::optional<Elem> try_sqrt(const Elem& a) const override {
    auto r = rational_sqrt(a.value());
    if (!r) return std::nullopt;
    return Elem(*r);
  }
  bool less(const Elem& a, const Elem& b) const override { return a.value() < b.value(); }
  Elem from_rational(const mpq_class& q) const override { return Elem(q); }
};

class IntegerRing final : public Algebra {
 public:
  std::string name() const override { return "Z"; }
  AlgebraKind kind() const override { return AlgebraKind::Ring; }
  bool ordered() const override { return true; }
  bool char_zero() const override { return true; }
  Elem zero() const override { return Elem(0L); }
  Elem one() const override { return Elem(1L); }
  Elem add(const Elem& a, const Elem& b) const override { return Elem(mpq_class(a.value() + b.value())); }
  Elem mul(const Elem& a, const Elem& b) const override { return Elem(mpq_class(a.value() * b.value())); }
  Elem neg(const Elem& a) const override { return Elem(mpq_class(-a.value())); }
  std::optional<Elem> try_inv(const Elem& a) const override {
    if (a.value() == 1 || a.value() == -1) return a;
    return std::nullopt;
  }
  std::optional<Elem> try_sqrt(const Elem& a) const override {
    mpz_class r;
    if (!perfect_square(a.value().get_num(), r)) return std::nullopt;
    return Elem(mpq_class(r));
  }
  bool less(const Elem& a, const Elem& b) const override { return a.value() < b.value(); }
  Elem from_rational(const mpq_class& q) const override {
    if (!is_integer(q)) fail(ErrorKind::InvalidArgument, "literal " + q.get_str() + " is not an integer");
    return Elem(q);
  }
};

class NaturalSemiring final : public Algebra {
 public:
  std::string name() const override { return "Nat"; }
  AlgebraKind kind() const override { return AlgebraKind::Semiring; }
  bool ordered() const override { return true; }
  bool char_zero() const override { return true; }
  Elem zero() const override { return Elem(0L); }
  Elem one() const override { return Elem(1L); }
  Elem add(const Elem& a, const Elem& b) const override { return Elem(mpq_class(a.value() + b.value())); }
  Elem mul(const Elem& a, const Elem& b) const override { return Elem(mpq_class(a.value() * b.value())); }
  std::optional<Elem> try_sqrt(const Elem& a) const override {
    mpz_class r;
    if (!perfect_square(a.value().get_num(), r)) return std::nullopt;
    return Elem(mpq_class(r));
  }
  bool less(const Elem& a, const Elem& b) const override { return a.value() < b.value(); }
  Elem from_rational(const mpq_class& q) const override {
    if (!is_integer(q) || q < 0)
      fail(ErrorKind::InvalidArgument, "literal " + q.get_str() + " is not a natural number");
    return Elem(q);
  }
};

class BooleanSemiring final : public Algebra {
 public:
  std::string name() const override { return "Bool"; }
  AlgebraKind kind() const override { return AlgebraKind::Semiring; }
  Elem zero() const override { return Elem(0L); }
  Elem one() const override { return Elem(1L); }
  Elem add(const Elem& a, const Elem& b) const override {
    return Elem(a.value() != 0 || b.value() != 0 ? 1L : 0L);
  }
  Elem mul(const Elem& a, const Elem& b) const override {
    return Elem(a.value() != 0 && b.value() != 0 ? 1L : 0L);
  }
  std::optional<Elem> try_sqrt(const Elem& a) const override { return a; }
  Elem from_rational(const mpq_class& q) const override {
    if (!is_integer(q) || q < 0)
      fail(ErrorKind::InvalidArgument, "literal " + q.get_str() + " is not a boolean");
    return Elem(q != 0 ? 1L : 0L);
  }
  Elem parse(std::string_view text) const override {
    if (text == "true") return one();
    if (text == "false") return zero();
    return Algebra::parse(text);
  }
};

class TropicalSemiring final : public Algebra {
 public:
  std::string name() const override { return "Tropical"; }
  AlgebraKind kind() const override { return AlgebraKind::Semiring; }
  Elem zero() const override { return Elem::infinity(); }
  Elem one() const override { return Elem(0L); }
  Elem add(const Elem& a, const Elem& b) const override {
    if (a.is_infinite()) return b;
    if (b.is_infinite()) return a;
    return a.value() <= b.value() ? a : b;
  }
  Elem mul(const Elem& a, const Elem& b) const override {
    if (a.is_infinite() || b.is_infinite()) return Elem::infinity();
    return Elem(mpq_class(a.value() + b.value()));
  }
  Elem from_rational(const mpq_class& q) const override { return Elem(q); }
  Elem parse(std::string_view text) const override {
    if (text == "inf") return Elem::infinity();
    return Algebra::parse(text);
  }
  std::string print(const Elem& a) const override {
    return a.is_infinite() ? "inf" : Algebra::print(a);
  }
};

class PrimeField final : public Algebra {
 public:
  explicit PrimeField(unsigned long p) : p_(p) {}
  std::string name() const override { return p_ == 2 ? "F2" : "Fp(" + std::to_string(p_) + ")"; }
  AlgebraKind kind() const override { return AlgebraKind::Field; }
  Elem zero() const override { return Elem(0L); }
  Elem one() const override { return Elem(1L); }
  Elem add(const Elem& a, const Elem& b) const override { return reduce(a.value().get_num() + b.value().get_num()); }
  Elem mul(const Elem& a, const Elem& b) const override { return reduce(a.value().get_num() * b.value().get_num()); }
  Elem neg(const Elem& a) const override { return reduce(-a.value().get_num()); }
  std::optional<Elem> try_inv(const Elem& a) const override {
    if (a.value() == 0) return std::nullopt;
    mpz_class r;
    mpz_class mod(p_);
    mpz_class num = a.value().get_num();
    mpz_invert(r.get_mpz_t(), num.get_mpz_t(), mod.get_mpz_t());
    return reduce(r);
  }
  std::optional<Elem> try_sqrt(const Elem& a) const override {
    unsigned long v = a.value().get_num().get_ui();
    for (unsigned long x = 0; x < p_; ++x)
      if ((static_cast<unsigned __int128>(x) * x) % p_ == v) return Elem(static_cast<long>(x));
    return std::nullopt;
  }
  Elem from_rational(const mpq_class& q) const override {
    Elem num = reduce(q.get_num());
    Elem den = reduce(q.get_den());
    auto inv = try_inv(den);
    if (!inv) fail(ErrorKind::InvalidArgument, "literal " + q.get_str() + " has no image in " + name());
    return mul(num, *inv);
  }

 private:
  Elem reduce(const mpz_class& z) const {
    mpz_class r;
    mpz_class mod(p_);
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), mod.get_mpz_t());
    return Elem(mpq_class(r));
  }
  unsigned long p_;
};

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Elem Algebra::neg(const Elem&) const {
  fail(ErrorKind::UnsupportedOp, "negation is not available in " + name());
}

Elem Algebra::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

std::optional<Elem> Algebra::try_inv(const Elem&) const {
  fail(ErrorKind::UnsupportedOp, "inverse is not available in " + name());
}

std::optional<Elem> Algebra::try_sqrt(const Elem&) const {
  fail(ErrorKind::UnsupportedOp, "square root is not available in " + name());
}

bool Algebra::less(const Elem&, const Elem&) const {
  fail(ErrorKind::UnorderedAlgebra, name() + " is not ordered");
}

Elem Algebra::from_nat(unsigned long n) const { return times(n, one()); }

Elem Algebra::times(unsigned long n, const Elem& a) const {
  Elem result = zero();
  Elem base = a;
  while (n != 0) {
    if (n & 1UL) result = add(result, base);
    n >>= 1;
    if (n != 0) base = add(base, base);
  }
  return result;
}

Elem Algebra::parse(std::string_view text) const { return from_rational(parse_rational(text)); }

std::string Algebra::print(const Elem& a) const { return a.value().get_str(); }

AlgebraPtr rationals() {
  static const AlgebraPtr a = std::make_shared<RationalField>();
  return a;
}
AlgebraPtr integers() {
  static const AlgebraPtr a = std::make_shared<IntegerRing>();
  return a;
}
AlgebraPtr naturals() {
  static const AlgebraPtr a = std::make_shared<NaturalSemiring>();
  return a;
}
AlgebraPtr booleans() {
  static const AlgebraPtr a = std::make_shared<BooleanSemiring>();
  return a;
}
AlgebraPtr tropical() {
  static const AlgebraPtr a = std::make_shared<TropicalSemiring>();
  return a;
}

AlgebraPtr prime_field(unsigned long p) {
  if (!is_prime(p)) fail(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  static std::mutex mu;
  static std::map<unsigned long, AlgebraPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = std::make_shared<PrimeField>(p);
  return slot;
}

AlgebraPtr algebra_by_name(std::string_view name) {
  if (name == "Q") return rationals();
  if (name == "Z") return integers();
  if (name == "Nat" || name == "N") return naturals();
  if (name == "Bool") return booleans();
  if (name == "Tropical") return tropical();
  if (name == "F2") return prime_field(2);
  if (name.size() > 4 && name.substr(0, 3) == "Fp(" && name.back() == ')') {
    std::string digits(name.substr(3, name.size() - 4));
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos)
      return prime_field(std::stoul(digits));
  }
  fail(ErrorKind::UnknownSymbol, "unknown algebra '" + std::string(name) + "'");
}

void require_same(const Algebra& a, const Algebra& b, std::string_view what) {
  if (!a.same_as(b))
    fail(ErrorKind::AlgebraMismatch, std::string(what) + ": " + a.name() + " vs " + b.name());
}

}  // namespace sde
