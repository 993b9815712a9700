#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sde/algebra.hpp"
#include "sde/error.hpp"
#include "sde/calculus.hpp"
#include "sde/poly.hpp"
#include "sde/stream.hpp"

namespace sde::testing {

inline Elem q(long num, long den = 1) { return Elem(mpq_class(num, den)); }

inline std::vector<Elem> qs(std::initializer_list<long> xs) {
  std::vector<Elem> out;
  for (long x : xs) out.push_back(q(x));
  return out;
}

// Kind of the error raised by f, or nullopt when it returns normally.
inline std::optional<ErrorKind> error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline bool same_prefix(const Stream& a, const Stream& b, std::size_t n, std::size_t budget = 100 * kDefaultBudget) {
  return std::holds_alternative<Equal>(bounded_eq(a, b, n, budget));
}

inline std::string show(const Stream& s, std::size_t n, std::size_t budget = kDefaultBudget) {
  return format_prefix(*s.algebra(), take(s, n, budget));
}

// Hand-rolled generators for property tests; seeded for reproducibility.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Elem elem(const Algebra& alg, long bound = 9) {
    const std::string n = alg.name();
    if (n == "Q") return alg.from_rational(mpq_class(range(-bound, bound), range(1, 4)));
    if (n == "Z") return alg.from_long(range(-bound, bound));
    if (n == "Nat") return alg.from_long(range(0, bound));
    if (n == "Bool") return alg.from_long(range(0, 1));
    if (n == "Tropical") return coin(0.1) ? Elem::infinity() : alg.from_long(range(-bound, bound));
    return alg.from_long(range(0, 1000));
  }

  std::vector<Elem> elems(const Algebra& alg, std::size_t n, long bound = 9) {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(elem(alg, bound));
    return out;
  }

  Stream stream(const AlgebraPtr& alg, std::size_t n, long bound = 9) { return from_prefix(alg, elems(*alg, n, bound)); }

  Poly poly(const AlgebraPtr& alg, std::size_t max_degree, long bound = 9) {
    return Poly(alg, elems(*alg, static_cast<std::size_t>(range(0, static_cast<long>(max_degree))) + 1, bound));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<AlgebraPtr> all_algebras() {
  return {rationals(), integers(), naturals(), booleans(), tropical(), prime_field(2), prime_field(7)};
}

}  // namespace sde::testing
