#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sde/algebra.hpp"

namespace sde {

// Polynomial in X with coefficients in an algebra; trailing zeros are never
// stored, so the zero polynomial has no coefficients.
class Poly {
 public:
  explicit Poly(AlgebraPtr alg);
  Poly(AlgebraPtr alg, std::vector<Elem> coeffs);

  static Poly constant(AlgebraPtr alg, const Elem& c);
  static Poly x(AlgebraPtr alg);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }
  // std::nullopt stands for degree minus infinity (the zero polynomial).
  std::optional<std::size_t> degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  Elem coeff(std::size_t i) const;
  Elem at_zero() const { return coeff(0); }

  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.alg_->same_as(*b.alg_) && a.coeffs_ == b.coeffs_;
  }

 private:
  AlgebraPtr alg_;
  std::vector<Elem> coeffs_;
};

enum class PolyOp { Add, Sub, Mul };

Poly poly_arith(PolyOp op, const Poly& a, const Poly& b);
Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly scale(const Elem& c, const Poly& p);
// Divides by X; the constant coefficient must be zero.
Poly shift_down(const Poly& p);

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};
// Euclidean division over a field.
PolyDivision divmod(const Poly& a, const Poly& b);
// Monic greatest common divisor over a field (zero when both are zero).
Poly gcd(const Poly& a, const Poly& b);

// Accepts "a0 + a1*X + a2*X^2" style text.
Poly parse_poly(const AlgebraPtr& alg, std::string_view text);

// Rational stream expression num/den over a field, kept reduced with
// den(0) = 1.
class RatExpr {
 public:
  explicit RatExpr(const Poly& p);
  static RatExpr make(const Poly& num, const Poly& den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const AlgebraPtr& algebra() const { return num_.algebra(); }
  bool is_zero() const { return num_.is_zero(); }

  std::string to_string() const;

  friend bool operator==(const RatExpr& a, const RatExpr& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  friend RatExpr ratexpr_normalize(const Poly& num, const Poly& den);
  RatExpr(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
  Poly num_;
  Poly den_;
};

RatExpr ratexpr_normalize(const Poly& num, const Poly& den);
Elem ratexpr_head(const RatExpr& r);
RatExpr ratexpr_derivative(const RatExpr& r);

RatExpr operator+(const RatExpr& a, const RatExpr& b);
RatExpr operator-(const RatExpr& a, const RatExpr& b);
RatExpr operator*(const RatExpr& a, const RatExpr& b);
// Throws DenominatorHeadZero when b(0) = 0.
RatExpr operator/(const RatExpr& a, const RatExpr& b);
RatExpr operator-(const RatExpr& a);

// Accepts "(p)/(q)" or a bare polynomial.
RatExpr parse_ratexpr(const AlgebraPtr& alg, std::string_view text);

using RatMatrix = std::vector<std::vector<RatExpr>>;

// Solves A x = b over rational stream expressions. Pivots must have an
// invertible head; throws SingularMatrix when none exists.
std::vector<RatExpr> gauss_solve(RatMatrix a, std::vector<RatExpr> b);

}  // namespace sde
