#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "sde/stream.hpp"
#include "sde/term.hpp"

namespace sde {

// Finite 2-stream automaton: state q outputs out[q] and has successors
// d0[q] (even) and d1[q] (odd).
struct TwoAutomaton {
  AlgebraPtr algebra;
  std::vector<std::string> names;
  std::vector<Elem> out;
  std::vector<std::size_t> d0;
  std::vector<std::size_t> d1;
  bool zero_consistent = false;

  std::size_t size() const { return out.size(); }
  std::size_t index(const std::string& name) const;
  // True when o(d0(q)) = o(q) for every state.
  bool check_zero_consistent() const;
  // One line per state: "q: out=<a> 0-><q> 1-><q>".
  std::string dump() const;
};

// One state per variable; raises NotZeroConsistent.
TwoAutomaton compile_evenodd(const EquationSystem& sys);

// Bits of n, least significant first; bbin(0) is empty.
std::vector<int> bbin(std::uint64_t n);

Elem value_at(const TwoAutomaton& aut, std::size_t q, std::uint64_t n);
// Requires a zero-consistent automaton.
Stream stream_of(const TwoAutomaton& aut, std::size_t q);

struct KernelFinite {
  TwoAutomaton automaton;
  bool exact = false;
};
struct KernelUnknown {
  std::size_t explored = 0;
  std::string reason;
};
using KernelResult = std::variant<KernelFinite, KernelUnknown>;

// Explores the closure of s under even and odd. Exact when s was produced by
// stream_of; otherwise states are identified by prefixes of length `prefix`.
KernelResult kernel2(const Stream& s, std::size_t max_states = 32, std::size_t prefix = 32,
                     std::size_t budget = 100000);

// Bits of the 2-adic expansion of q; the denominator must be odd.
std::vector<int> binary_encode_rational(const mpq_class& q, std::size_t n);
// The same bits as a stream over Z whose state keys are the rational states.
Stream binary_rational_stream(const mpq_class& q);
// The rational state reached after k steps.
mpq_class binary_rational_state(const mpq_class& q, std::size_t k);

}  // namespace sde
