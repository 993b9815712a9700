#include <doctest.h>

#include "sde/classify.hpp"
#include "sde/engine.hpp"
#include "sde/error.hpp"
#include "sde/parser.hpp"
#include "support.hpp"

using namespace sde;
using namespace sde::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("syntactic automaton reproduces the product/sum trace") {
  auto Q = rationals();
  auto engine = Engine::create(Q);
  Stream sigma = from_prefix(Q, qs({2}));
  Stream tau = ones(Q);
  Stream delta = from_prefix(Q, qs({1}));

  NodeId s = engine->leaf(sigma);
  NodeId t = engine->app(op::kMul, {s, engine->app(op::kAdd, {engine->leaf(tau), engine->leaf(delta)})});
  CHECK(engine->output(t) == q(4));
  NodeId expected = engine->app(
      op::kAdd,
      {engine->app(op::kMul, {engine->leaf(sigma.tail()),
                              engine->app(op::kAdd, {engine->leaf(tau), engine->leaf(delta)})}),
       engine->app(op::kMul, {engine->constant(q(2)), engine->app(op::kAdd, {engine->leaf(tau.tail()),
                                                                             engine->leaf(delta.tail())})})});
  CHECK(engine->next(t) == expected);

  NodeId five = engine->app(op::kMul, {engine->constant(q(5)), s});
  CHECK(engine->output(five) == q(10));
  NodeId expected5 = engine->app(op::kAdd, {engine->app(op::kMul, {engine->constant(q(0)), s}),
                                            engine->app(op::kMul, {engine->constant(q(5)), engine->constant(q(0))})});
  CHECK(engine->next(five) == expected5);
  CHECK(engine->show(expected5) == "(([0] * " + engine->show(s) + ") + ([5] * [0]))");

  CHECK(show(engine->unfold(t), 4) == "4, 2, 2, 2");
  CHECK(show(engine->behaviour(t), 4) == "4, 2, 2, 2");
  CHECK(show(engine->unfold(five), 4) == "10, 0, 0, 0");
}

TEST_CASE("a bare leaf evaluates to itself") {
  auto Q = rationals();
  auto engine = Engine::create(Q);
  Stream s = from_prefix(Q, qs({3, 1, 4, 1, 5}));
  NodeId n = engine->leaf(s);
  CHECK(engine->output(n) == q(3));
  CHECK(engine->next(n) == engine->leaf(s.tail()));
  CHECK(show(eval_term(*engine, *t_leaf(s), {}), 5) == "3, 1, 4, 1, 5");
}

TEST_CASE("systems combined with definitions") {
  SUBCASE("naturals through a user-defined sum") {
    auto spec = parse_spec(
        "algebra Q;\n"
        "def plus(x, y) { out = x(0) + y(0); deriv = plus(x', y'); }\n"
        "n(0) = 1; n' = plus(n, o);\n"
        "o(0) = 1; o' = o;\n");
    Solution sol = solve_system_with_defs(spec);
    CHECK(show(sol.at("n"), 8) == "1, 2, 3, 4, 5, 6, 7, 8");
  }
  SUBCASE("hamming numbers") {
    auto spec = parse_spec("algebra Q; g(0) = 1; g' = merge(2*g, merge(3*g, 5*g));");
    CHECK(show(solve_system_with_defs(spec).at("g"), 12) == "1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16");
  }
  SUBCASE("non-causal even is caught") {
    auto spec = parse_spec("algebra Q; s(0) = 0; s' = even(s);");
    Solution sol = solve_system_with_defs(spec);
    try {
      take(sol.at("s"), 5);
      FAIL("expected NonProductive");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonProductive);
      REQUIRE(e.index());
      CHECK(*e.index() == 2);
    }
  }
  SUBCASE("delta and ddx unknowns") {
    auto spec = parse_spec("algebra Q; x(0) = 1; delta(x) = x; y(0) = 1; ddx(y) = y;");
    Solution sol = solve_system_with_defs(spec);
    CHECK(show(sol.at("x"), 5) == "1, 2, 4, 8, 16");
    CHECK(show(sol.at("y"), 5) == "1, 1, 1/2, 1/6, 1/24");
  }
}

TEST_CASE("definition errors") {
  auto Q = rationals();
  auto engine = Engine::create(Q);
  CHECK(kind_of([&] { engine->app("nope", {}); }) == ErrorKind::UnknownSymbol);
  CHECK(kind_of([&] { engine->app(op::kAdd, {engine->constant(q(1))}); }) == ErrorKind::ArityMismatch);
  CHECK(kind_of([&] { engine->unknown("z"); }) == ErrorKind::UnknownSymbol);
  GsosDef d;
  d.name = op::kAdd;
  CHECK(kind_of([&] { engine->add_def(d); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("built-ins redeclared as user definitions agree with the native calculus") {
  auto Q = rationals();
  auto spec = parse_spec(
      "algebra Q;\n"
      "def plus(x, y) { out = x(0) + y(0); deriv = plus(x', y'); }\n"
      "def times(x, y) { out = x(0) * y(0); deriv = plus(times(x', y), times([x(0)], y')); }\n"
      "def shuf(x, y) { out = x(0) * y(0); deriv = plus(shuf(x', y), shuf(x, y')); }\n"
      "def had(x, y) { out = x(0) * y(0); deriv = had(x', y'); }\n"
      "def zp(x, y) { out = x(0); deriv = zp(y, x'); }\n"
      "def mg(x, y) { when x(0) < y(0) => out = x(0); otherwise => out = y(0);\n"
      "  when x(0) < y(0) => deriv = mg(x', y); when x(0) = y(0) => deriv = mg(x', y');\n"
      "  when y(0) < x(0) => deriv = mg(x, y'); }\n"
      "def ng(x) { out = -x(0); deriv = ng(x'); }\n"
      "def iv(x) { out = 1 / x(0); deriv = times([-1 / x(0)], times(x', iv(x))); }\n");
  for (const auto& d : spec.defs) CHECK(validate_gsos(d).ok());
  Gen g(7);
  const std::vector<std::pair<std::string, std::function<Stream(const Stream&, const Stream&)>>> binary = {
      {"plus", sum}, {"times", conv_mul}, {"shuf", shuffle_mul}, {"had", hadamard}, {"zp", zip}, {"mg", merge}};
  for (int round = 0; round < 20; ++round) {
    Stream a = g.stream(Q, 32);
    Stream b = g.stream(Q, 32);
    auto engine = Engine::create(Q);
    for (const auto& d : spec.defs) engine->add_def(d);
    for (const auto& [name, native] : binary) {
      NodeId n = engine->app(name, {engine->leaf(a), engine->leaf(b)});
      CHECK_MESSAGE(std::holds_alternative<Equal>(bounded_eq(engine->unfold(n), native(a, b), 32)), name);
    }
    NodeId n = engine->app("ng", {engine->leaf(a)});
    CHECK(std::holds_alternative<Equal>(bounded_eq(engine->unfold(n), neg(a), 32)));
    Stream c = cons(q(g.range(1, 5)), a);
    n = engine->app("iv", {engine->leaf(c)});
    CHECK(std::holds_alternative<Equal>(bounded_eq(engine->unfold(n), conv_inv(c), 24)));
  }
}

TEST_CASE("evaluation is a homomorphism") {
  auto Q = rationals();
  Gen g(11);
  const char* ops[] = {op::kAdd, op::kMul, op::kShuffle, op::kHadamard, op::kZip};
  for (int round = 0; round < 30; ++round) {
    auto engine = Engine::create(Q);
    std::vector<NodeId> pool;
    for (int i = 0; i < 3; ++i) pool.push_back(engine->leaf(g.stream(Q, 32)));
    for (int i = 0; i < 4; ++i) {
      const char* o = ops[g.range(0, 4)];
      NodeId a = pool[static_cast<std::size_t>(g.range(0, static_cast<long>(pool.size()) - 1))];
      NodeId b = pool[static_cast<std::size_t>(g.range(0, static_cast<long>(pool.size()) - 1))];
      pool.push_back(engine->app(o, {a, b}));
    }
    NodeId top = pool.back();
    CHECK(std::holds_alternative<Equal>(bounded_eq(engine->unfold(top), engine->behaviour(top), 32)));
  }
}

TEST_CASE("replacing a subterm by an equal one keeps the prefix") {
  auto Q = rationals();
  Gen g(5);
  for (int round = 0; round < 20; ++round) {
    auto engine = Engine::create(Q);
    Stream a = g.stream(Q, 32);
    Stream b = g.stream(Q, 32);
    NodeId ab = engine->app(op::kAdd, {engine->leaf(a), engine->leaf(b)});
    NodeId ba = engine->app(op::kAdd, {engine->leaf(b), engine->leaf(a)});
    NodeId c = engine->leaf(g.stream(Q, 32));
    NodeId t1 = engine->app(op::kMul, {ab, c});
    NodeId t2 = engine->app(op::kMul, {ba, c});
    CHECK(std::holds_alternative<Equal>(bounded_eq(engine->unfold(t1), engine->unfold(t2), 32)));
  }
}

TEST_CASE("SOS definitions never substitute underived arguments") {
  auto spec = parse_spec(
      "algebra Q;\n"
      "def had(x, y) { out = x(0) * y(0); deriv = had(x', y'); }\n"
      "def times(x, y) { out = x(0) * y(0); deriv = times(x', y) + [x(0)] * y'; }\n");
  CHECK(validate_gsos(spec.defs[0]).sos);
  CHECK_FALSE(validate_gsos(spec.defs[1]).sos);
  auto Q = rationals();
  Gen g(3);
  auto engine = Engine::create(Q);
  for (const auto& d : spec.defs) engine->add_def(d);
  NodeId n = engine->app("had", {engine->leaf(g.stream(Q, 16)), engine->leaf(g.stream(Q, 16))});
  take(engine->unfold(n), 16);
  CHECK(engine->stats().x_substitutions == 0);
  CHECK(engine->stats().y_substitutions > 0);
  NodeId m = engine->app("times", {engine->leaf(g.stream(Q, 16)), engine->leaf(g.stream(Q, 16))});
  take(engine->unfold(m), 4);
  CHECK(engine->stats().x_substitutions > 0);
}
