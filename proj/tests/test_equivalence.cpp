#include <doctest.h>

#include "sde/equivalence.hpp"
#include "sde/parser.hpp"
#include "support.hpp"

using namespace sde;
using namespace sde::testing;

namespace {

StreamAutomaton figure_one() {
  // x0 -0-> x1, x1 -1-> x2, x2 -0-> x1, x3 -0-> x3
  StreamAutomaton a;
  a.algebra = rationals();
  a.names = {"x0", "x1", "x2", "x3"};
  a.out = qs({0, 1, 0, 0});
  a.next = {1, 2, 1, 3};
  return a;
}

StreamAutomaton random_automaton(Gen& g, std::size_t n) {
  StreamAutomaton a;
  a.algebra = rationals();
  for (std::size_t i = 0; i < n; ++i) {
    a.names.push_back("q" + std::to_string(i));
    a.out.push_back(q(g.range(0, 1)));
    a.next.push_back(static_cast<std::size_t>(g.range(0, static_cast<long>(n) - 1)));
  }
  return a;
}

RatExpr monomial(const AlgebraPtr& Q, std::size_t k, long c) {
  std::vector<Elem> coeffs(k + 1, q(0));
  coeffs[k] = q(c);
  return RatExpr(Poly(Q, coeffs));
}

struct Fixture {
  std::shared_ptr<Engine> engine;
  NodeId a = 0;
  NodeId b = 0;
};

Fixture two_files(std::string_view left, const std::string& lv, std::string_view right, const std::string& rv) {
  SpecFile l = parse_spec(left);
  SpecFile r = parse_spec(right);
  Fixture f{Engine::create(l.system.algebra)};
  for (const auto& d : l.defs) f.engine->add_def(d);
  for (const auto& d : r.defs)
    if (!f.engine->has_op(d.name)) f.engine->add_def(d);
  f.engine->add_system(l.system, "A.");
  f.engine->add_system(r.system, "B.");
  f.a = f.engine->unknown("A." + lv);
  f.b = f.engine->unknown("B." + rv);
  return f;
}

const char* kFib = "algebra Q; s(0) = 0; s'(0) = 1; s'' = s' + s;";
const char* kFibClosed = "algebra Q; x0(0) = 0; x0' = x1; x1(0) = 1; x1' = x1 + x0;";

}  // namespace

TEST_CASE("rational equivalence") {
  auto Q = rationals();
  RatExpr fib = parse_ratexpr(Q, "(X)/(1 - X - X^2)");
  CHECK(equiv_rational(fib, parse_ratexpr(Q, "(2*X)/(2 - 2*X - 2*X^2)")).proved());
  CHECK(equiv_rational(parse_ratexpr(Q, "(1)/(1 - X)"), parse_ratexpr(Q, "(1 + X)/(1 - X^2)")).proved());
  EquivResult r = equiv_rational(parse_ratexpr(Q, "(1)/(1 - X)"), parse_ratexpr(Q, "(1)/(1 - 2*X + X^2)"));
  REQUIRE(r.refuted());
  CHECK(std::get<Refuted>(r.verdict).index == 1);
  CHECK(r.to_string() == "refuted at 1: 1 vs 2\n");
}

TEST_CASE("rational equivalence agrees with prefix comparison") {
  auto Q = rationals();
  Gen g(31);
  for (int i = 0; i < 500; ++i) {
    std::vector<Elem> den = g.elems(*Q, static_cast<std::size_t>(g.range(1, 4)), 4);
    if (Q->is_zero(den[0])) den[0] = q(1);
    RatExpr a = RatExpr::make(g.poly(Q, 4, 4), Poly(Q, den));
    RatExpr b = a;
    switch (g.range(0, 2)) {
      case 0: break;
      case 1: b = a + monomial(Q, static_cast<std::size_t>(g.range(0, 40)), g.range(1, 3)); break;
      default: b = RatExpr::make(g.poly(Q, 4, 4), Poly(Q, den)); break;
    }
    EquivResult r = equiv_rational(a, b);
    REQUIRE(!r.unknown());
    PrefixComparison p = bounded_eq(ratexpr_stream(a), ratexpr_stream(b), 128);
    REQUIRE(r.proved() == std::holds_alternative<Equal>(p));
    if (r.refuted()) {
      REQUIRE(std::get<Refuted>(r.verdict).index == std::get<Differ>(p).index);
      REQUIRE(std::get<Refuted>(r.verdict).a == std::get<Differ>(p).a);
    }
  }
}

TEST_CASE("finite bisimulation on a small automaton") {
  StreamAutomaton a = figure_one();
  EquivResult same = bisim_finite(a, 0, a, 2);
  REQUIRE(same.proved());
  const auto& rel = std::get<Proved>(same.verdict).certificate.relation;
  CHECK(std::find(rel.begin(), rel.end(), std::make_pair(std::string("x0"), std::string("x2"))) != rel.end());

  EquivResult diff = bisim_finite(a, 0, a, 3);
  REQUIRE(diff.refuted());
  const Refuted& ref = std::get<Refuted>(diff.verdict);
  CHECK(ref.index == 1);
  CHECK(ref.a == q(1));
  CHECK(ref.b == q(0));

  for (std::size_t s = 0; s < a.names.size(); ++s) CHECK(bisim_finite(a, s, a, s).proved());
}

TEST_CASE("finite bisimulation agrees with prefix comparison") {
  Gen g(12);
  for (int i = 0; i < 300; ++i) {
    StreamAutomaton a1 = random_automaton(g, static_cast<std::size_t>(g.range(1, 6)));
    StreamAutomaton a2 = random_automaton(g, static_cast<std::size_t>(g.range(1, 6)));
    std::size_t s1 = static_cast<std::size_t>(g.range(0, static_cast<long>(a1.names.size()) - 1));
    std::size_t s2 = static_cast<std::size_t>(g.range(0, static_cast<long>(a2.names.size()) - 1));
    EquivResult r = bisim_finite(a1, s1, a2, s2);
    PrefixComparison p = bounded_eq(automaton_stream(a1, s1), automaton_stream(a2, s2), a1.names.size() * a2.names.size());
    REQUIRE(r.proved() == std::holds_alternative<Equal>(p));
    if (r.refuted()) REQUIRE(std::get<Refuted>(r.verdict).index == std::get<Differ>(p).index);
  }
}

TEST_CASE("commutativity of sum is proved with one pair") {
  auto Q = rationals();
  auto e = Engine::create(Q);
  Gen g(4);
  NodeId s = e->leaf(g.stream(Q, 10));
  NodeId t = e->leaf(g.stream(Q, 10));
  EquivResult r = equiv_up_to(e, e->app("+", {s, t}), e->app("+", {t, s}));
  REQUIRE(r.proved());
  const Certificate& c = std::get<Proved>(r.verdict).certificate;
  CHECK(c.relation.size() == 1);
  REQUIRE(c.up_to);
  CHECK(verify_certificate(*e, *c.up_to));
}

TEST_CASE("fibonacci forms are bisimilar up to congruence") {
  Fixture f = two_files(kFib, "s", kFibClosed, "x0");
  EquivResult r = equiv_up_to(f.engine, f.a, f.b);
  REQUIRE(r.proved());
  const Certificate& c = std::get<Proved>(r.verdict).certificate;
  CHECK(c.relation.size() == 2);
  CHECK_FALSE(c.user_signature);
  REQUIRE(c.up_to);
  std::string why;
  CHECK(verify_certificate(*f.engine, *c.up_to, &why));

  SUBCASE("a tampered certificate is rejected") {
    UpToCertificate bad = *c.up_to;
    bad.relation.pop_back();
    bad.steps.pop_back();
    CHECK_FALSE(verify_certificate(*f.engine, bad, &why));
    CHECK_FALSE(why.empty());
  }
  SUBCASE("a relation with a wrong pair is rejected") {
    UpToCertificate bad = *c.up_to;
    std::swap(bad.relation[0].first, bad.relation[1].first);
    CHECK_FALSE(verify_certificate(*f.engine, bad));
  }
  SUBCASE("dropping + from the signature breaks the proof") {
    UpToCertificate bad = *c.up_to;
    bad.ops = {"*"};
    CHECK_FALSE(verify_certificate(*f.engine, bad));
  }
}

TEST_CASE("different streams are refuted at the first difference") {
  Fixture f = two_files("algebra Q; o(0) = 1; o' = o;", "o", "algebra Q; o(0) = 1; o' = o; n(0) = 1; n' = n + o;", "n");
  EquivResult r = equiv_up_to(f.engine, f.a, f.b);
  REQUIRE(r.refuted());
  CHECK(std::get<Refuted>(r.verdict).index == 1);
  CHECK(r.to_string() == "refuted at 1: 1 vs 2\n");
}

TEST_CASE("user operators set the signature flag") {
  const char* with_max =
      "algebra Q;"
      "def plus(x, y) { out = x(0) + y(0); deriv = plus(x', y'); }"
      "a(0) = 1; a' = plus(a, a);";
  Fixture f = two_files(with_max, "a", with_max, "a");
  EquivResult r = equiv_up_to(f.engine, f.a, f.b);
  REQUIRE(r.proved());
  CHECK(std::get<Proved>(r.verdict).certificate.user_signature);
  CHECK(r.to_string().rfind("proved (up to user signature)", 0) == 0);

  Fixture plain = two_files(kFib, "s", kFib, "s");
  EquivResult p = equiv_up_to(plain.engine, plain.a, plain.b);
  REQUIRE(p.proved());
  CHECK_FALSE(std::get<Proved>(p.verdict).certificate.user_signature);
}

TEST_CASE("non-productive terms are unknown") {
  Fixture f = two_files("algebra Q; s(0) = 0; s' = even(s);", "s", kFib, "s");
  EquivResult r = equiv_up_to(f.engine, f.a, f.b);
  CHECK_FALSE(r.proved());
}

TEST_CASE("pair budget") {
  Fixture f = two_files(kFib, "s", kFibClosed, "x0");
  EquivResult r = equiv_up_to(f.engine, f.a, f.b, {}, 1);
  REQUIRE(r.unknown());
  CHECK(std::get<Unknown>(r.verdict).explored == 1);
}
