#include <doctest.h>

#include "sde/calculus.hpp"
#include "support.hpp"

using namespace sde;
using namespace sde::testing;

namespace {

// Cauchy product by the defining double sum.
std::vector<Elem> convolution_oracle(const Algebra& alg, const std::vector<Elem>& a, const std::vector<Elem>& b) {
  std::vector<Elem> out;
  for (std::size_t n = 0; n < a.size(); ++n) {
    Elem acc = alg.zero();
    for (std::size_t k = 0; k <= n; ++k) acc = alg.add(acc, alg.mul(a[k], b[n - k]));
    out.push_back(acc);
  }
  return out;
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

TEST_CASE("basic streams") {
  auto Q = rationals();
  CHECK(show(zeros(Q), 3) == "0, 0, 0");
  CHECK(show(ones(Q), 3) == "1, 1, 1");
  CHECK(show(x_stream(Q), 4) == "0, 1, 0, 0");
  CHECK(show(constant(Q, q(5)), 3) == "5, 0, 0");
  CHECK(show(nats(Q), 4) == "1, 2, 3, 4");
  CHECK(show(nats_inv(Q), 4) == "1, 1/2, 1/3, 1/4");
  CHECK(show(poly_stream(parse_poly(Q, "1 - X^2")), 4) == "1, 0, -1, 0");
}

TEST_CASE("sum, negation and scalars") {
  auto Q = rationals();
  CHECK(show(sum(ones(Q), nats(Q)), 4) == "2, 3, 4, 5");
  CHECK(show(neg(nats(Q)), 3) == "-1, -2, -3");
  CHECK(show(difference(nats(Q), ones(Q)), 4) == "0, 1, 2, 3");
  CHECK(show(scalar(q(1, 2), nats(Q)), 3) == "1/2, 1, 3/2");
  CHECK(error_kind([&] { neg(ones(naturals())); }) == ErrorKind::UnsupportedOp);
  CHECK(error_kind([&] { sum(ones(Q), ones(integers())); }) == ErrorKind::AlgebraMismatch);
}

TEST_CASE("convolution product and inverse") {
  auto Q = rationals();
  CHECK(show(conv_mul(ones(Q), ones(Q)), 5) == "1, 2, 3, 4, 5");
  CHECK(show(conv_inv(poly_stream(parse_poly(Q, "1 - X"))), 4) == "1, 1, 1, 1");
  CHECK(show(conv_inv(poly_stream(parse_poly(Q, "1 - X - X^2"))), 7) == "1, 1, 2, 3, 5, 8, 13");
  CHECK(show(conv_mul(x_stream(Q), nats(Q)), 4) == "0, 1, 2, 3");
  CHECK(show(conv_inv(constant(Q, q(2))), 3) == "1/2, 0, 0");

  SUBCASE("head zero is not invertible") {
    Stream s = conv_inv(x_stream(Q));
    CHECK(error_kind([&] { s.head(); }) == ErrorKind::HeadNotInvertible);
  }
  SUBCASE("semirings have no inverse") {
    CHECK(error_kind([&] { conv_inv(ones(naturals())); }) == ErrorKind::UnsupportedOp);
  }
  SUBCASE("integers invert units only") {
    auto Z = integers();
    CHECK(show(conv_inv(poly_stream(parse_poly(Z, "1 - X"))), 3) == "1, 1, 1");
    Stream s = conv_inv(constant(Z, Elem(mpq_class(2))));
    CHECK(error_kind([&] { s.head(); }) == ErrorKind::HeadNotInvertible);
  }
}

TEST_CASE("shuffle and hadamard products") {
  auto Q = rationals();
  // exp-like: shuffle of ones with itself is (2^n)
  CHECK(show(shuffle_mul(ones(Q), ones(Q)), 5) == "1, 2, 4, 8, 16");
  CHECK(show(hadamard(nats(Q), nats(Q)), 4) == "1, 4, 9, 16");
  CHECK(show(shuffle_mul(ones(booleans()), ones(booleans())), 3) == "1, 1, 1");
}

TEST_CASE("square root") {
  auto Q = rationals();
  Stream r = sqrt_stream(poly_stream(parse_poly(Q, "1 - 4*X")));
  Stream catalan = scalar(q(2), conv_inv(sum(constant(Q, q(1)), r)));
  CHECK(show(catalan, 8) == "1, 1, 2, 5, 14, 42, 132, 429");
  CHECK(show(sqrt_stream(poly_stream(parse_poly(Q, "4 + 4*X + X^2"))), 4) == "2, 1, 0, 0");
  CHECK(error_kind([&] { sqrt_stream(ones(integers())); }) == ErrorKind::UnsupportedOp);
  Stream s2 = sqrt_stream(constant(Q, q(2)));
  CHECK(error_kind([&] { s2.head(); }) == ErrorKind::NoExactSqrt);
  Stream s0 = sqrt_stream(x_stream(Q));
  CHECK(error_kind([&] { take(s0, 2); }) == ErrorKind::HeadNotInvertible);
}

TEST_CASE("even, odd, zip and merge") {
  auto Q = rationals();
  CHECK(show(even(nats(Q)), 4) == "1, 3, 5, 7");
  CHECK(show(odd(nats(Q)), 4) == "2, 4, 6, 8");
  CHECK(show(zip(ones(Q), zeros(Q)), 5) == "1, 0, 1, 0, 1");
  Stream evens = generate(Q, [](std::size_t i) { return q(2 * static_cast<long>(i) + 2); });
  Stream threes = generate(Q, [](std::size_t i) { return q(3 * static_cast<long>(i) + 3); });
  CHECK(show(merge(evens, threes), 8) == "2, 3, 4, 6, 8, 9, 10, 12");
  CHECK(error_kind([&] { merge(ones(booleans()), ones(booleans())); }) == ErrorKind::UnorderedAlgebra);
  CHECK(error_kind([&] { merge(ones(tropical()), ones(tropical())); }) == ErrorKind::UnorderedAlgebra);
}

TEST_CASE("non-standard derivatives") {
  auto Q = rationals();
  Stream powers = generate(Q, [](std::size_t i) { return Elem(mpq_class(mpz_class(1) << static_cast<unsigned>(i))); });
  CHECK(show(delta(powers), 5) == "1, 2, 4, 8, 16");
  CHECK(show(ddx(nats(Q)), 4) == "2, 6, 12, 20");
  CHECK(show(ddx(ones(naturals())), 4) == "1, 2, 3, 4");
  BinaryOp mul = [](const Elem& a, const Elem& b) { return Elem(a.value() * b.value()); };
  CHECK(show(delta_o(mul, nats(Q)), 3) == "2, 6, 12");
  CHECK(error_kind([&] { delta(ones(naturals())); }) == ErrorKind::UnsupportedOp);
}

TEST_CASE("rational expressions as streams") {
  auto Q = rationals();
  CHECK(show(ratexpr_stream(parse_ratexpr(Q, "(X)/(1 - X - X^2)")), 8) == "0, 1, 1, 2, 3, 5, 8, 13");
  CHECK(show(ratexpr_stream(parse_ratexpr(Q, "(1 + X)/(1 - 3*X + 3*X^2 - X^3)")), 5) == "1, 4, 9, 16, 25");
  Stream r = ratexpr_stream(parse_ratexpr(Q, "(1)/(1 - X^2)"));
  take(r, 4);
  CHECK(r.state_key(0) == r.state_key(2));
  CHECK(r.state_key(0) != r.state_key(1));
}

TEST_CASE("commutative ring laws on rational streams") {
  auto Q = rationals();
  Gen g(31);
  const std::size_t n = 32;
  for (int i = 0; i < 10000; ++i) {
    std::vector<Elem> pa = g.elems(*Q, 8, 5), pb = g.elems(*Q, 8, 5), pc = g.elems(*Q, 8, 5);
    Stream a = from_prefix(Q, pa), b = from_prefix(Q, pb), c = from_prefix(Q, pc);
    switch (i % 6) {
      case 0: REQUIRE(same_prefix(sum(a, b), sum(b, a), n)); break;
      case 1: REQUIRE(same_prefix(sum(sum(a, b), c), sum(a, sum(b, c)), n)); break;
      case 2: REQUIRE(same_prefix(conv_mul(a, b), conv_mul(b, a), n)); break;
      case 3: REQUIRE(same_prefix(conv_mul(conv_mul(a, b), c), conv_mul(a, conv_mul(b, c)), n)); break;
      case 4: REQUIRE(same_prefix(conv_mul(a, sum(b, c)), sum(conv_mul(a, b), conv_mul(a, c)), n)); break;
      case 5:
        REQUIRE(same_prefix(sum(a, neg(a)), zeros(Q), n));
        REQUIRE(same_prefix(conv_mul(a, constant(Q, q(1))), a, n));
        break;
    }
  }
}

TEST_CASE("convolution agrees with the double-sum oracle") {
  Gen g(6);
  const auto algebras = all_algebras();
  const std::size_t per = (10000 + algebras.size() - 1) / algebras.size();
  for (const auto& alg : algebras) {
    for (std::size_t i = 0; i < per; ++i) {
      // Dense arguments keep the fast paths out of the way.
      std::vector<Elem> a = g.elems(*alg, 24, 6), b = g.elems(*alg, 24, 6);
      std::vector<Elem> expect = convolution_oracle(*alg, a, b);
      std::vector<Elem> got = take(conv_mul(from_prefix(alg, a), from_prefix(alg, b)), 24);
      REQUIRE(got == expect);
    }
  }
}

TEST_CASE("tail through delta and through d/dX") {
  auto Q = rationals();
  Gen g(9);
  for (int i = 0; i < 10000; ++i) {
    Stream s = g.stream(Q, 32);
    if (i % 2 == 0) {
      REQUIRE(same_prefix(s.tail(), sum(delta(s), s), 31));
    } else {
      REQUIRE(same_prefix(s.tail(), hadamard(ddx(s), nats_inv(Q)), 31));
    }
  }
}

TEST_CASE("delta is nilpotent on polynomial sequences") {
  auto Q = rationals();
  Gen g(12);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t d = static_cast<std::size_t>(g.range(0, 6));
    std::vector<Elem> coeffs = g.elems(*Q, d + 1, 5);
    if (Q->is_zero(coeffs[d])) coeffs[d] = q(1);
    // s(n) = coeffs(n), evaluated by Horner's rule.
    Stream s = generate(Q, [coeffs](std::size_t n) {
      mpq_class acc = 0;
      for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * static_cast<long>(n) + coeffs[k].value();
      return Elem(acc);
    });
    Stream it = s;
    for (std::size_t k = 0; k < d; ++k) it = delta(it);
    // The d-th difference is the constant a_d * d!.
    mpz_class fact = 1;
    for (std::size_t k = 2; k <= d; ++k) fact *= static_cast<long>(k);
    Elem lead(coeffs[d].value() * fact);
    for (std::size_t k = 0; k < 8; ++k) REQUIRE(it.at(k) == lead);
    REQUIRE(same_prefix(delta(it), zeros(Q), 8));
  }
}

TEST_CASE("zip, even and odd are mutually inverse") {
  Gen g(77);
  for (int i = 0; i < 10000; ++i) {
    auto alg = all_algebras()[static_cast<std::size_t>(i) % all_algebras().size()];
    Stream s = g.stream(alg, 64);
    Stream t = g.stream(alg, 64);
    switch (i % 3) {
      case 0: REQUIRE(same_prefix(zip(even(s), odd(s)), s, 64)); break;
      case 1: REQUIRE(same_prefix(even(zip(s, t)), s, 64)); break;
      case 2: REQUIRE(same_prefix(odd(zip(s, t)), t, 64)); break;
    }
  }
}

TEST_CASE("shuffle agrees with the binomial sum") {
  auto Q = rationals();
  Gen g(4);
  for (int i = 0; i < 200; ++i) {
    std::vector<Elem> a = g.elems(*Q, 16), b = g.elems(*Q, 16);
    std::vector<Elem> got = take(shuffle_mul(from_prefix(Q, a), from_prefix(Q, b)), 16);
    for (unsigned n = 0; n < 16; ++n) {
      mpq_class acc = 0;
      for (unsigned k = 0; k <= n; ++k) acc += mpq_class(binomial(n, k)) * a[k].value() * b[n - k].value();
      REQUIRE(got[n] == Elem(acc));
    }
  }
}
