// One PASS/FAIL line per acceptance criterion. Arithmetic is exact, so every
// comparison has tolerance 0; each criterion must also finish within 5 s.
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sde/automatic.hpp"
#include "sde/engine.hpp"
#include "sde/equivalence.hpp"
#include "sde/parser.hpp"
#include "sde/solve.hpp"
#include "support.hpp"

using namespace sde;
using namespace sde::testing;

namespace {

constexpr double kTimeLimit = 5.0;

// Criteria made of several suites are timed per suite.
double g_slowest_suite = 0;

template <class F>
void timed_suite(F f) {
  auto start = std::chrono::steady_clock::now();
  f();
  g_slowest_suite = std::max(g_slowest_suite, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

SpecFile load(const std::string& file) {
  std::ifstream in(std::string(SDE_CORPUS_DIR) + "/" + file);
  if (!in) throw Failure{"cannot read " + file};
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

Stream corpus_stream(const std::string& file, const std::string& var) { return solve_spec(load(file)).at(var); }

void expect_prefix(const std::string& file, const std::string& var, std::size_t n, const std::string& golden) {
  std::string got = show(corpus_stream(file, var), n);
  expect(got == golden, file + ": got " + got);
}

std::string closed(const std::string& file, const std::string& var) {
  for (const auto& [v, r] : closed_forms(load(file)))
    if (v == var) return r.to_string();
  throw Failure{file + ": no closed form for " + var};
}

void golden_prefixes() {
  expect_prefix("catalan.sde", "c", 9, "1, 1, 2, 5, 14, 42, 132, 429, 1430");
  expect_prefix("schroder.sde", "s", 9, "1, 2, 6, 22, 90, 394, 1806, 8558, 41586");
  expect_prefix("hamming.sde", "g", 12, "1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16");
  expect_prefix("thue_morse_cf.sde", "tau", 8, "0, 1, 1, 0, 1, 0, 0, 1");
  expect_prefix("thue_morse_eo.sde", "TM", 8, "0, 1, 1, 0, 1, 0, 0, 1");
  expect(same_prefix(corpus_stream("thue_morse_cf.sde", "tau"), corpus_stream("thue_morse_eo.sde", "TM"), 64),
         "Thue-Morse routes differ within 64");
  expect_prefix("factorials.sde", "f", 6, "1, 1, 2, 6, 24, 120");
  expect_prefix("a000831.sde", "s", 6, "1, 2, 4, 16, 80, 512");
  auto Q = rationals();
  Stream pow2 = corpus_stream("delta_powers.sde", "x");
  Stream exp = corpus_stream("ddx_exp.sde", "x");
  mpz_class fact = 1;
  for (long n = 0; n < 16; ++n) {
    if (n > 0) fact *= n;
    expect(pow2.at(static_cast<std::size_t>(n)) == Elem(mpq_class(mpz_class(1) << static_cast<unsigned>(n))), "delta powers");
    expect(exp.at(static_cast<std::size_t>(n)) == Elem(mpq_class(mpz_class(1), fact)), "ddx exp");
  }
}

void closed_forms_criterion() {
  auto Q = rationals();
  auto same = [&](const std::string& file, const std::string& var, const std::string& expr) {
    std::string got = closed(file, var);
    expect(parse_ratexpr(Q, got) == parse_ratexpr(Q, expr), file + "#" + var + ": got " + got);
  };
  same("fib.sde", "s", "(X)/(1 - X - X^2)");
  same("nats.sde", "o", "(1)/(1 - X)");
  // The corpus naturals start at 0, so they are X times the shifted ones.
  same("nats.sde", "n", "(X)/(1 - 2*X + X^2)");
  same("powers.sde", "p1", "(1)/(1 - 2*X + X^2)");
  same("alternating.sde", "s", "(X)/(1 + X^2)");
  same("powers.sde", "p2", "(1 + X)/(1 - 3*X + 3*X^2 - X^3)");
  same("powers.sde", "p3", "(1 + 4*X + X^2)/(1 - 4*X + 6*X^2 - 4*X^3 + X^4)");
}

LinearSystem random_linear(Gen& g, const AlgebraPtr& alg, std::size_t n) {
  LinearSystem sys;
  sys.algebra = alg;
  for (std::size_t i = 0; i < n; ++i) {
    sys.vars.push_back("x" + std::to_string(i));
    sys.heads.push_back(g.elem(*alg, 3));
    std::vector<Elem> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back(g.coin(0.4) ? q(0) : g.elem(*alg, 2));
    sys.m.push_back(row);
  }
  return sys;
}

void round_trips() {
  auto Q = rationals();
  Gen g(2718);
  for (int i = 0; i < 100; ++i) {
    std::vector<Elem> den = g.elems(*Q, static_cast<std::size_t>(g.range(1, 7)), 5);
    if (Q->is_zero(den[0])) den[0] = q(1);
    RatExpr r = RatExpr::make(g.poly(Q, 6, 5), Poly(Q, den));
    expect(solve_linear_matrix(rational_to_linear(r))[0] == r, "round trip of " + r.to_string());
  }
  for (int i = 0; i < 100; ++i) {
    LinearSystem sys = random_linear(g, Q, static_cast<std::size_t>(g.range(1, 5)));
    std::vector<RatExpr> forms = solve_linear_matrix(sys);
    Solution sol = solve_linear_coinductive(sys);
    for (std::size_t v = 0; v < sys.vars.size(); ++v)
      expect(same_prefix(ratexpr_stream(forms[v]), sol.at(sys.vars[v]), 64), "matrix vs coinductive");
  }
}

void catalan_identity() {
  auto Q = rationals();
  Stream root = sqrt_stream(poly_stream(parse_poly(Q, "1 - 4*X")));
  Stream closed = conv_mul(constant(Q, q(2)), conv_inv(sum(constant(Q, q(1)), root)));
  SpecFile spec = load("catalan.sde");
  spec.system.algebra = Q;
  expect(same_prefix(closed, solve_spec(spec).at("c"), 32), "2/(1 + sqrt(1 - 4X)) differs from Catalan");
}

void binary_rationals() {
  Stream b = binary_rational_stream(mpq_class(17, 5));
  std::string got;
  for (std::size_t i = 0; i < 20; ++i) got += b.algebra()->print(b.at(i));
  expect(got == "10111001100110011001", "B(17/5) = " + got);
  auto p = detect_eventually_periodic(b, 64);
  expect(std::holds_alternative<Periodic>(p), "B(17/5) not periodic");
  expect(std::get<Periodic>(p).n - std::get<Periodic>(p).k == 4, "period is not 4");
}

void property_suites() {
  Gen g(99);
  auto Q = rationals();
  const auto algebras = all_algebras();
  timed_suite([&] {
    for (int i = 0; i < 10000; ++i) {
      const AlgebraPtr& alg = algebras[static_cast<std::size_t>(i) % algebras.size()];
      Stream s = g.stream(alg, 16);
      Stream rebuilt = sum(constant(alg, s.head()), conv_mul(x_stream(alg), s.tail()));
      for (std::size_t k = 0; k < 16; ++k) expect(rebuilt.at(k) == s.at(k), "fundamental theorem");
    }
  });
  timed_suite([&] {
    for (int i = 0; i < 10000; ++i) {
      Stream a = g.stream(Q, 8, 5), b = g.stream(Q, 8, 5), c = g.stream(Q, 8, 5);
      bool ok = true;
      switch (i % 5) {
        case 0: ok = same_prefix(sum(a, b), sum(b, a), 32) && same_prefix(sum(a, neg(a)), zeros(Q), 32); break;
        case 1: ok = same_prefix(sum(sum(a, b), c), sum(a, sum(b, c)), 32); break;
        case 2: ok = same_prefix(conv_mul(a, b), conv_mul(b, a), 32); break;
        case 3: ok = same_prefix(conv_mul(conv_mul(a, b), c), conv_mul(a, conv_mul(b, c)), 32); break;
        case 4: ok = same_prefix(conv_mul(a, sum(b, c)), sum(conv_mul(a, b), conv_mul(a, c)), 32); break;
      }
      expect(ok, "ring law");
    }
  });
  timed_suite([&] {
    for (int i = 0; i < 10000; ++i) {
      const AlgebraPtr& alg = algebras[static_cast<std::size_t>(i) % algebras.size()];
      std::vector<Elem> a = g.elems(*alg, 16, 6), b = g.elems(*alg, 16, 6);
      std::vector<Elem> got = take(conv_mul(from_prefix(alg, a), from_prefix(alg, b)), 16);
      for (std::size_t n = 0; n < 16; ++n) {
        Elem acc = alg->zero();
        for (std::size_t k = 0; k <= n; ++k) acc = alg->add(acc, alg->mul(a[k], b[n - k]));
        expect(got[n] == acc, "convolution oracle");
      }
    }
  });
  timed_suite([&] {
    for (int i = 0; i < 10000; ++i) {
      Stream s = g.stream(Q, 32);
      bool ok = i % 2 == 0 ? same_prefix(s.tail(), sum(delta(s), s), 31)
                           : same_prefix(s.tail(), hadamard(ddx(s), nats_inv(Q)), 31);
      expect(ok, "tail identities");
    }
  });
  timed_suite([&] {
    for (int i = 0; i < 10000; ++i) {
      const std::size_t d = static_cast<std::size_t>(g.range(0, 6));
      std::vector<Elem> coeffs = g.elems(*Q, d + 1, 5);
      if (Q->is_zero(coeffs[d])) coeffs[d] = q(1);
      Stream it = generate(Q, [coeffs](std::size_t n) {
        mpq_class acc = 0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * static_cast<long>(n) + coeffs[k].value();
        return Elem(acc);
      });
      for (std::size_t k = 0; k <= d; ++k) it = delta(it);
      expect(same_prefix(it, zeros(Q), 8), "delta nilpotency");
    }
  });
  timed_suite([&] {
    for (int i = 0; i < 10000; ++i) {
      const AlgebraPtr& alg = algebras[static_cast<std::size_t>(i) % algebras.size()];
      Stream s = g.stream(alg, 64), t = g.stream(alg, 64);
      bool ok = same_prefix(zip(even(s), odd(s)), s, 64) && same_prefix(even(zip(s, t)), s, 64) &&
                same_prefix(odd(zip(s, t)), t, 64);
      expect(ok, "zip/even/odd");
    }
  });
}

void negative_cases() {
  expect(error_kind([] { load("bad_order.sde"); }) == ErrorKind::SyntaxError, "self-derivative accepted");
  try {
    take(corpus_stream("nonproductive.sde", "s"), 5);
    throw Failure{"non-productive spec produced 5 elements"};
  } catch (const Error& e) {
    expect(e.kind() == ErrorKind::NonProductive, "non-productive raised " + std::string(to_string(e.kind())));
  }
  expect(error_kind([] { take(corpus_stream("merge_bool.sde", "g"), 3); }) == ErrorKind::UnorderedAlgebra,
         "merge over Bool");
  auto Q = rationals();
  expect(error_kind([&] { take(conv_inv(x_stream(Q)), 3); }) == ErrorKind::HeadNotInvertible, "inverse of X");
}

void equivalence() {
  SpecFile l = load("fib.sde");
  SpecFile r = load("fib_closed.sde");
  auto e = Engine::create(l.system.algebra);
  e->add_system(l.system, "A.");
  e->add_system(r.system, "B.");
  EquivResult res = equiv_up_to(e, e->unknown("A.s"), e->unknown("B.x0"));
  expect(res.proved(), "Fibonacci: " + res.to_string());
  const Certificate& c = std::get<Proved>(res.verdict).certificate;
  expect(c.up_to && verify_certificate(*e, *c.up_to), "certificate does not verify");

  auto Q = rationals();
  auto f = Engine::create(Q);
  EquivResult ones_nats = equiv_up_to(f, f->leaf(ones(Q)), f->leaf(nats(Q)));
  expect(ones_nats.refuted() && std::get<Refuted>(ones_nats.verdict).index == 1, "ones vs nats: " + ones_nats.to_string());
}

void syntactic_traces() {
  auto Q = rationals();
  auto engine = Engine::create(Q);
  Stream sigma = from_prefix(Q, qs({2}));
  Stream tau = ones(Q);
  Stream delta = from_prefix(Q, qs({1}));
  NodeId s = engine->leaf(sigma);
  NodeId sum_td = engine->app(op::kAdd, {engine->leaf(tau), engine->leaf(delta)});
  NodeId t = engine->app(op::kMul, {s, sum_td});
  expect(engine->output(t) == q(4), "first output");
  NodeId next = engine->app(
      op::kAdd, {engine->app(op::kMul, {engine->leaf(sigma.tail()), sum_td}),
                 engine->app(op::kMul, {engine->constant(q(2)),
                                        engine->app(op::kAdd, {engine->leaf(tau.tail()), engine->leaf(delta.tail())})})});
  expect(engine->next(t) == next, "first next state: " + engine->show(engine->next(t)));
  NodeId five = engine->app(op::kMul, {engine->constant(q(5)), s});
  expect(engine->output(five) == q(10), "second output");
  NodeId next5 = engine->app(op::kAdd, {engine->app(op::kMul, {engine->constant(q(0)), s}),
                                        engine->app(op::kMul, {engine->constant(q(5)), engine->constant(q(0))})});
  expect(engine->next(five) == next5, "second next state: " + engine->show(engine->next(five)));
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)();
  };
  const Criterion criteria[] = {
      {"1 golden prefixes", golden_prefixes},
      {"2 closed forms", closed_forms_criterion},
      {"3 round trips", round_trips},
      {"4 catalan identity", catalan_identity},
      {"5 binary rationals", binary_rationals},
      {"6 property suites", property_suites},
      {"7 negative cases", negative_cases},
      {"8 equivalence", equivalence},
      {"9 syntactic automaton traces", syntactic_traces},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    g_slowest_suite = 0;
    auto start = std::chrono::steady_clock::now();
    std::string why;
    try {
      c.run();
    } catch (const Failure& f) {
      why = f.what;
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    double limited = g_slowest_suite > 0 ? g_slowest_suite : secs;
    if (why.empty() && limited > kTimeLimit) why = "over the time limit";
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (why.empty() ? "PASS" : "FAIL") << " criterion " << c.name << " (" << secs << " s)";
    if (g_slowest_suite > 0) line << " slowest suite " << g_slowest_suite << " s";
    if (!why.empty()) line << ": " << why;
    std::cout << line.str() << std::endl;
    if (!why.empty()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
