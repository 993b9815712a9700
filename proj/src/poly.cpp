#include "sde/poly.hpp"

#include <cctype>

#include "sde/error.hpp"

namespace sde {

namespace {

void require_field(const Algebra& alg, std::string_view what) {
  if (alg.kind() != AlgebraKind::Field)
    fail(ErrorKind::UnsupportedOp, std::string(what) + " needs a field, got " + alg.name());
}

bool printed_negative(const Algebra& alg, const Elem& c) {
  return alg.ordered() && alg.has_neg() && alg.less(c, alg.zero());
}

}  // namespace

Poly::Poly(AlgebraPtr alg) : alg_(std::move(alg)) {}

Poly::Poly(AlgebraPtr alg, std::vector<Elem> coeffs) : alg_(std::move(alg)), coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && alg_->is_zero(coeffs_.back())) coeffs_.pop_back();
}

Poly Poly::constant(AlgebraPtr alg, const Elem& c) {
  std::vector<Elem> cs{c};
  return Poly(std::move(alg), std::move(cs));
}

Poly Poly::x(AlgebraPtr alg) {
  std::vector<Elem> cs{alg->zero(), alg->one()};
  return Poly(std::move(alg), std::move(cs));
}

std::optional<std::size_t> Poly::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

Elem Poly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : alg_->zero(); }

std::string Poly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Elem& c = coeffs_[k];
    if (alg_->is_zero(c)) continue;
    bool negative = printed_negative(*alg_, c);
    Elem mag = negative ? alg_->neg(c) : c;
    std::string body;
    if (k == 0) {
      body = alg_->print(mag);
    } else {
      std::string xpart = k == 1 ? "X" : "X^" + std::to_string(k);
      body = mag == alg_->one() ? xpart : alg_->print(mag) + "*" + xpart;
    }
    if (first) {
      out += negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " + body : " + " + body;
    }
  }
  return out;
}

Poly poly_arith(PolyOp op, const Poly& a, const Poly& b) {
  require_same(*a.algebra(), *b.algebra(), "polynomial arithmetic");
  const Algebra& alg = *a.algebra();
  if (op == PolyOp::Mul) {
    if (a.is_zero() || b.is_zero()) return Poly(a.algebra());
    std::vector<Elem> out(a.coeffs().size() + b.coeffs().size() - 1, alg.zero());
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
      for (std::size_t j = 0; j < b.coeffs().size(); ++j)
        out[i + j] = alg.add(out[i + j], alg.mul(a.coeffs()[i], b.coeffs()[j]));
    return Poly(a.algebra(), std::move(out));
  }
  if (op == PolyOp::Sub && !alg.has_neg())
    fail(ErrorKind::UnsupportedOp, "subtraction is not available in " + alg.name());
  std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<Elem> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(op == PolyOp::Add ? alg.add(a.coeff(i), b.coeff(i)) : alg.sub(a.coeff(i), b.coeff(i)));
  return Poly(a.algebra(), std::move(out));
}

Poly operator+(const Poly& a, const Poly& b) { return poly_arith(PolyOp::Add, a, b); }
Poly operator-(const Poly& a, const Poly& b) { return poly_arith(PolyOp::Sub, a, b); }
Poly operator*(const Poly& a, const Poly& b) { return poly_arith(PolyOp::Mul, a, b); }

Poly scale(const Elem& c, const Poly& p) {
  std::vector<Elem> out;
  out.reserve(p.coeffs().size());
  for (const Elem& e : p.coeffs()) out.push_back(p.algebra()->mul(c, e));
  return Poly(p.algebra(), std::move(out));
}

Poly shift_down(const Poly& p) {
  if (p.is_zero()) return p;
  if (!p.algebra()->is_zero(p.coeffs()[0]))
    fail(ErrorKind::InvalidArgument, "polynomial is not divisible by X");
  return Poly(p.algebra(), std::vector<Elem>(p.coeffs().begin() + 1, p.coeffs().end()));
}

PolyDivision divmod(const Poly& a, const Poly& b) {
  require_same(*a.algebra(), *b.algebra(), "polynomial division");
  const Algebra& alg = *a.algebra();
  require_field(alg, "polynomial division");
  if (b.is_zero()) fail(ErrorKind::InvalidArgument, "division by the zero polynomial");
  std::vector<Elem> rem = a.coeffs();
  std::size_t db = *b.degree();
  Elem lead_inv = *alg.try_inv(b.coeffs().back());
  if (rem.size() < b.coeffs().size()) return {Poly(a.algebra()), a};
  std::vector<Elem> quot(rem.size() - db, alg.zero());
  for (std::size_t k = rem.size(); k-- > db;) {
    Elem factor = alg.mul(rem[k], lead_inv);
    quot[k - db] = factor;
    if (alg.is_zero(factor)) continue;
    for (std::size_t j = 0; j <= db; ++j)
      rem[k - db + j] = alg.sub(rem[k - db + j], alg.mul(factor, b.coeffs()[j]));
  }
  return {Poly(a.algebra(), std::move(quot)), Poly(a.algebra(), std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return scale(*x.algebra()->try_inv(x.coeffs().back()), x);
}

Poly parse_poly(const AlgebraPtr& alg, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto bad = [&](const std::string& why) -> Poly {
    fail(ErrorKind::SyntaxError, "bad polynomial '" + std::string(text) + "': " + why);
  };
  if (s.empty()) return bad("empty");
  Poly result(alg);
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (!first) {
      return bad("expected '+' or '-'");
    }
    first = false;
    std::string number;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) number += s[i++];
    Elem coeff = number.empty() ? alg->one() : alg->from_rational(parse_rational(number));
    std::size_t power = 0;
    if (i < s.size() && s[i] == '*') {
      ++i;
      if (i >= s.size() || s[i] != 'X') return bad("expected X after '*'");
    }
    if (i < s.size() && s[i] == 'X') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
        if (digits.empty()) return bad("expected exponent");
        power = std::stoul(digits);
      }
    } else if (number.empty()) {
      return bad("expected a term");
    }
    if (negative) coeff = alg->neg(coeff);
    std::vector<Elem> cs(power + 1, alg->zero());
    cs[power] = coeff;
    result = result + Poly(alg, std::move(cs));
  }
  return result;
}

RatExpr::RatExpr(const Poly& p) : num_(p), den_(Poly::constant(p.algebra(), p.algebra()->one())) {
  require_field(*p.algebra(), "rational expression");
}

RatExpr RatExpr::make(const Poly& num, const Poly& den) { return ratexpr_normalize(num, den); }

std::string RatExpr::to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }

RatExpr ratexpr_normalize(const Poly& num, const Poly& den) {
  require_same(*num.algebra(), *den.algebra(), "rational expression");
  const Algebra& alg = *num.algebra();
  require_field(alg, "rational expression");
  if (den.is_zero()) fail(ErrorKind::DenominatorHeadZero, "zero denominator");
  Poly g = gcd(num, den);
  Poly n = divmod(num, g).quotient;
  Poly d = divmod(den, g).quotient;
  auto inv = alg.try_inv(d.at_zero());
  if (!inv) fail(ErrorKind::DenominatorHeadZero, "denominator " + den.to_string() + " vanishes at 0");
  if (n.is_zero()) return RatExpr(n, Poly::constant(num.algebra(), alg.one()));
  return RatExpr(scale(*inv, n), scale(*inv, d));
}

Elem ratexpr_head(const RatExpr& r) { return r.num().at_zero(); }

RatExpr ratexpr_derivative(const RatExpr& r) {
  Poly shifted = shift_down(r.num() - scale(ratexpr_head(r), r.den()));
  return ratexpr_normalize(shifted, r.den());
}

RatExpr operator+(const RatExpr& a, const RatExpr& b) {
  return ratexpr_normalize(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

RatExpr operator-(const RatExpr& a, const RatExpr& b) {
  return ratexpr_normalize(a.num() * b.den() - b.num() * a.den(), a.den() * b.den());
}

RatExpr operator*(const RatExpr& a, const RatExpr& b) {
  return ratexpr_normalize(a.num() * b.num(), a.den() * b.den());
}

RatExpr operator/(const RatExpr& a, const RatExpr& b) {
  if (b.algebra()->is_zero(b.num().at_zero()))
    fail(ErrorKind::DenominatorHeadZero, "divisor " + b.to_string() + " has zero head");
  return ratexpr_normalize(a.num() * b.den(), a.den() * b.num());
}

RatExpr operator-(const RatExpr& a) { return RatExpr(Poly(a.algebra())) - a; }

RatExpr parse_ratexpr(const AlgebraPtr& alg, std::string_view text) {
  std::string s(text);
  std::size_t split = s.find(")/(");
  if (split == std::string::npos) return RatExpr(parse_poly(alg, s));
  std::size_t open = s.find('(');
  std::size_t close = s.rfind(')');
  if (open == std::string::npos || close == std::string::npos || open > split || close <= split + 2)
    fail(ErrorKind::SyntaxError, "bad rational expression '" + s + "'");
  return ratexpr_normalize(parse_poly(alg, s.substr(open + 1, split - open - 1)),
                           parse_poly(alg, s.substr(split + 3, close - split - 3)));
}

std::vector<RatExpr> gauss_solve(RatMatrix a, std::vector<RatExpr> b) {
  std::size_t n = a.size();
  if (b.size() != n) fail(ErrorKind::InvalidArgument, "right-hand side has the wrong length");
  for (const auto& row : a)
    if (row.size() != n) fail(ErrorKind::InvalidArgument, "matrix is not square");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = col; r < n; ++r) {
      if (!a[r][col].algebra()->is_zero(ratexpr_head(a[r][col]))) {
        pivot = r;
        break;
      }
    }
    if (pivot == n) fail(ErrorKind::SingularMatrix, "no pivot with invertible head in column " + std::to_string(col));
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      RatExpr factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] = a[r][c] - factor * a[col][c];
      b[r] = b[r] - factor * b[col];
    }
  }
  std::vector<RatExpr> x(n, RatExpr(Poly(b.empty() ? rationals() : b[0].algebra())));
  for (std::size_t i = n; i-- > 0;) {
    RatExpr acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc = acc - a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace sde
