#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sde/calculus.hpp"
#include "sde/poly.hpp"
#include "sde/term.hpp"

namespace sde {

// Streams of a solved system, keyed by (flattened) variable name, with the
// declaration order preserved.
struct Solution {
  std::vector<std::string> vars;
  std::map<std::string, Stream> streams;

  const Stream& at(const std::string& var) const;
};

// Finite stream automaton: state i outputs out[i] and steps to next[i].
struct StreamAutomaton {
  AlgebraPtr algebra;
  std::vector<std::string> names;
  std::vector<Elem> out;
  std::vector<std::size_t> next;

  std::size_t index(const std::string& name) const;
};

StreamAutomaton to_automaton(const EquationSystem& sys);
Stream automaton_stream(const StreamAutomaton& a, std::size_t state);
Solution solve_simple(const EquationSystem& sys);

struct Periodic {
  std::size_t k;
  std::size_t n;
};
struct UnknownPeriod {};
using Periodicity = std::variant<Periodic, UnknownPeriod>;

// Finds k < n with sigma^(k) = sigma^(n). Exact when the stream exposes state
// keys (automata, rational expressions); otherwise compares a prefix of
// length bound and only reports periods seen at least twice.
Periodicity detect_eventually_periodic(const Stream& s, std::size_t bound);

// x_i' = sum_j m[i][j] x_j with x_i(0) = heads[i].
struct LinearSystem {
  AlgebraPtr algebra;
  std::vector<std::string> vars;
  std::vector<Elem> heads;
  std::vector<std::vector<Elem>> m;
};

LinearSystem to_linear(const EquationSystem& sys);
EquationSystem to_equations(const LinearSystem& sys);
// Solves (I - X M) x = heads; fields only.
std::vector<RatExpr> solve_linear_matrix(const LinearSystem& sys);
// Unfolds coefficient-vector states; works over any semiring.
Solution solve_linear_coinductive(const LinearSystem& sys);
// Companion system of minimal dimension whose first variable is r.
LinearSystem rational_to_linear(const RatExpr& r);

// Commutative monomial over letter ids, kept sorted.
using Monomial = std::vector<std::uint32_t>;
using CfPolynomial = std::map<Monomial, Elem>;

// Letters are the variables followed, when used, by the letter X.
struct ContextFreeSystem {
  AlgebraPtr algebra;
  std::vector<std::string> vars;
  std::vector<Elem> heads;
  std::vector<CfPolynomial> rhs;
  bool uses_x = false;

  std::uint32_t x_letter() const { return static_cast<std::uint32_t>(vars.size()); }
};

ContextFreeSystem to_context_free(const EquationSystem& sys);
// Coefficient recurrence from the fundamental theorem; quadratic per element.
Solution solve_context_free(const ContextFreeSystem& sys);
// The automaton whose states are polynomials over the unknowns. States grow
// quickly, so this serves as an independent check at moderate depth.
Solution solve_context_free_automaton(const ContextFreeSystem& sys);
std::string to_string(const ContextFreeSystem& sys, const CfPolynomial& p);

// Delta_o needs the binary operation and a right inverse: op(a, inverse(a, c)) = c.
struct DeltaOSpec {
  BinaryOp op;
  BinaryOp inverse;
};

Solution solve_nonstd(const EquationSystem& sys, DerivKind kind, const std::optional<DeltaOSpec>& delta_o = {});

// Evaluates a term built from built-in operators with the native calculus.
Stream native_eval(const Term& t, const AlgebraPtr& alg, const std::function<Stream(const std::string&)>& lookup);

}  // namespace sde
