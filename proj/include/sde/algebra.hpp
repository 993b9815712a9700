#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace sde {

// A carrier value. Every built-in algebra embeds its carrier in the exact
// rationals, with one extra point (+inf) used by the tropical semiring.
// Values are always kept in the owning algebra's normal form, so raw equality
// is equality in the algebra.
class Elem {
 public:
  Elem() = default;
  explicit Elem(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }
  explicit Elem(long value) : value_(value) {}

  static Elem infinity();

  const mpq_class& value() const { return value_; }
  bool is_infinite() const { return infinite_; }

  friend bool operator==(const Elem& a, const Elem& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

  std::size_t hash() const;

 private:
  mpq_class value_{0};
  bool infinite_ = false;
};

enum class AlgebraKind { Semiring, Ring, Field };

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class Algebra {
 public:
  virtual ~Algebra() = default;

  virtual std::string name() const = 0;
  virtual AlgebraKind kind() const = 0;
  virtual bool ordered() const { return false; }
  // True when n-fold sums of one are never zero (needed by d/dX reconstruction).
  virtual bool char_zero() const { return false; }

  virtual Elem zero() const = 0;
  virtual Elem one() const = 0;
  virtual Elem add(const Elem& a, const Elem& b) const = 0;
  virtual Elem mul(const Elem& a, const Elem& b) const = 0;

  bool has_neg() const { return kind() != AlgebraKind::Semiring; }
  // Throws UnsupportedOp on semirings.
  virtual Elem neg(const Elem& a) const;
  Elem sub(const Elem& a, const Elem& b) const;

  // Multiplicative inverse when it exists in this algebra.
  virtual std::optional<Elem> try_inv(const Elem& a) const;
  // Exact square root (non-negative root for ordered fields).
  virtual std::optional<Elem> try_sqrt(const Elem& a) const;

  // Throws UnorderedAlgebra unless ordered().
  virtual bool less(const Elem& a, const Elem& b) const;

  // Embeds a numeric literal. Throws InvalidArgument when the literal has no
  // image (e.g. 1/2 in Z, -1 in Nat).
  virtual Elem from_rational(const mpq_class& q) const = 0;
  Elem from_long(long n) const { return from_rational(mpq_class(n)); }
  // n-fold sum of one, computed with additions only.
  Elem from_nat(unsigned long n) const;
  // n-fold sum of a.
  Elem times(unsigned long n, const Elem& a) const;

  virtual Elem parse(std::string_view text) const;
  virtual std::string print(const Elem& a) const;

  bool is_zero(const Elem& a) const { return a == zero(); }
  bool same_as(const Algebra& other) const { return name() == other.name(); }
};

AlgebraPtr rationals();
AlgebraPtr integers();
AlgebraPtr naturals();
AlgebraPtr booleans();
AlgebraPtr tropical();
// Throws InvalidArgument unless p is prime.
AlgebraPtr prime_field(unsigned long p);

// Accepts Q, Z, F2, Fp(p), Bool, Nat, Tropical.
AlgebraPtr algebra_by_name(std::string_view name);

// Throws AlgebraMismatch when the two algebras differ.
void require_same(const Algebra& a, const Algebra& b, std::string_view what);

// Parses "p", "-p", "p/q" into an exact rational.
mpq_class parse_rational(std::string_view text);

}  // namespace sde
