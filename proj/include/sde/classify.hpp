#pragma once

#include <string>
#include <vector>

#include "sde/term.hpp"

namespace sde {

enum class SystemKind { Simple, Linear, ContextFree, NonStd, EvenOdd, General };

std::string to_string(SystemKind kind);
std::string to_string(DerivKind kind);

struct Classification {
  SystemKind kind = SystemKind::Simple;
  DerivKind nonstd = DerivKind::Tail;  // meaningful for NonStd
};

// Most specific kind that describes every equation of the system.
Classification classify(const EquationSystem& sys);

bool is_simple_rhs(const Term& t);
bool is_linear_rhs(const Term& t);
bool is_polynomial_rhs(const Term& t);
// A term built from literals, negation and products of literals.
bool is_scalar_term(const Term& t);

enum class GsosViolationKind { HigherDVar, DerivativeOfTerm, NonHeadGuard, NonExhaustiveGuards };

std::string to_string(GsosViolationKind kind);

struct GsosViolation {
  GsosViolationKind kind;
  std::string detail;
};

struct GsosCheck {
  std::vector<GsosViolation> violations;
  // No argument appears underived in any derivative clause.
  bool sos = false;
  bool ok() const { return violations.empty(); }
};

GsosCheck validate_gsos(const GsosDef& def);

struct ZeroConsistency {
  bool ok = true;
  std::string state;  // first offending variable
};

// For even/odd systems: the head of even(v)'s target must equal v(0).
ZeroConsistency check_zero_consistency(const EquationSystem& sys);

}  // namespace sde
