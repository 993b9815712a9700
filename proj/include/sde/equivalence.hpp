#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sde/engine.hpp"
#include "sde/poly.hpp"
#include "sde/solvers.hpp"

namespace sde {

// Why a derivative pair lies in the closure of the relation.
struct Justification {
  enum class Kind { Identical, InRelation, Congruence, SumMatch };
  Kind kind = Kind::Identical;
  NodeId left = 0;
  NodeId right = 0;
  std::size_t relation_index = 0;  // InRelation
  std::vector<Justification> kids;  // Congruence: per argument; SumMatch: per left summand
  std::vector<std::size_t> matching;  // SumMatch: left summand i pairs with right summand matching[i]
};

struct UpToCertificate {
  std::vector<std::pair<NodeId, NodeId>> relation;
  std::vector<Justification> steps;  // steps[i] discharges the derivatives of relation[i]
  std::set<std::string> ops;
};

struct Certificate {
  std::vector<std::pair<std::string, std::string>> relation;
  std::vector<std::string> trace;
  // Set when the closure used operators outside the built-in calculus.
  bool user_signature = false;
  std::optional<UpToCertificate> up_to;
};

struct Proved {
  Certificate certificate;
};
struct Refuted {
  std::size_t index = 0;
  Elem a;
  Elem b;
};
struct Unknown {
  std::size_t explored = 0;
  std::string reason;
};

struct EquivResult {
  AlgebraPtr algebra;
  std::variant<Proved, Refuted, Unknown> verdict;

  bool proved() const { return std::holds_alternative<Proved>(verdict); }
  bool refuted() const { return std::holds_alternative<Refuted>(verdict); }
  bool unknown() const { return std::holds_alternative<Unknown>(verdict); }
  // "proved", "refuted at <i>: <a> vs <b>" or "unknown: <reason>" followed by
  // the certificate pairs, one per line.
  std::string to_string() const;
};

// Never Unknown.
EquivResult equiv_rational(const RatExpr& a, const RatExpr& b);

EquivResult bisim_finite(const StreamAutomaton& a1, std::size_t s1, const StreamAutomaton& a2, std::size_t s2);

inline constexpr std::size_t kDefaultPairBudget = 2000;

// Bisimulation up to the congruence generated by `ops` (all declared
// operators when empty). Sums are matched modulo associativity and
// commutativity.
EquivResult equiv_up_to(const std::shared_ptr<Engine>& engine, NodeId a, NodeId b,
                        const std::set<std::string>& ops = {}, std::size_t budget = kDefaultPairBudget);

// Re-checks a certificate against the definition of a bisimulation up to
// congruence, using only outputs and derivatives from the engine.
bool verify_certificate(Engine& engine, const UpToCertificate& cert, std::string* why = nullptr);

}  // namespace sde
