#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sde/algebra.hpp"
#include "sde/error.hpp"
#include "sde/stream.hpp"

namespace sde {

// Expressions over the heads a1..ak of a definition's arguments.
struct HeadExpr;
using HeadExprPtr = std::shared_ptr<const HeadExpr>;

struct HeadExpr {
  enum class Kind { Literal, Head, Add, Sub, Mul, Div, Neg, Inv, Sqrt, NonHeadRef };
  Kind kind = Kind::Literal;
  Elem literal;                 // Literal
  std::size_t param = 0;        // Head, NonHeadRef
  std::string name;             // Head, NonHeadRef: parameter name
  std::size_t order = 0;        // NonHeadRef: primes on the reference
  std::vector<HeadExprPtr> args;
};

HeadExprPtr hx_literal(const Elem& e);
HeadExprPtr hx_head(std::size_t param, std::string name);
HeadExprPtr hx_op(HeadExpr::Kind kind, std::vector<HeadExprPtr> args);

struct Guard;
using GuardPtr = std::shared_ptr<const Guard>;

struct Guard {
  enum class Kind { Otherwise, Eq, Ne, Lt, Le, And, Or, Not };
  Kind kind = Kind::Otherwise;
  HeadExprPtr lhs, rhs;         // comparisons
  std::vector<GuardPtr> parts;  // And, Or, Not
};

GuardPtr guard_otherwise();
GuardPtr guard_cmp(Guard::Kind kind, HeadExprPtr lhs, HeadExprPtr rhs);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Stream terms. Ref covers unknowns of a system and, inside a definition,
// parameters x_i (order 0), y_i (order 1) and higher derivatives (order >= 2).
struct Term {
  enum class Kind { Const, Ref, App, DerivOf, Leaf };
  Kind kind = Kind::Const;
  HeadExprPtr value;                 // Const: the stream [value]
  std::string name;                  // Ref: variable; App: operator symbol
  std::size_t order = 0;             // Ref
  std::optional<std::size_t> param;  // Ref inside a definition
  std::vector<TermPtr> args;         // App, DerivOf
  std::optional<Stream> leaf;        // Leaf: an opaque stream value
};

TermPtr t_const(HeadExprPtr value);
TermPtr t_literal(const Elem& e);
TermPtr t_ref(std::string name, std::size_t order = 0, std::optional<std::size_t> param = std::nullopt);
TermPtr t_app(std::string op, std::vector<TermPtr> args);
TermPtr t_deriv_of(TermPtr t);
TermPtr t_leaf(const Stream& s);

// Built-in operator symbols of the surface language.
namespace op {
inline constexpr const char* kAdd = "+";
inline constexpr const char* kMul = "*";
inline constexpr const char* kNeg = "-";
inline constexpr const char* kInv = "inv";
inline constexpr const char* kX = "X";
inline constexpr const char* kShuffle = "shuffle";
inline constexpr const char* kHadamard = "hadamard";
inline constexpr const char* kSqrt = "sqrt";
inline constexpr const char* kEven = "even";
inline constexpr const char* kOdd = "odd";
inline constexpr const char* kZip = "zip";
inline constexpr const char* kMerge = "merge";
inline constexpr const char* kDelta = "delta";
inline constexpr const char* kDdx = "ddx";
}  // namespace op

// Arity of a built-in operator, or nullopt for unknown names.
std::optional<std::size_t> builtin_arity(const std::string& name);

struct OutClause {
  GuardPtr guard;
  HeadExprPtr out;
};

struct DerivClause {
  GuardPtr guard;
  TermPtr deriv;
};

struct GsosDef {
  std::string name;
  std::vector<std::string> params;
  std::vector<OutClause> out_clauses;
  std::vector<DerivClause> deriv_clauses;
  SourceSpan span;
};

enum class DerivKind { Tail, Delta, Ddx, DeltaO };

struct Equation {
  std::string var;
  Elem head;
  bool even_odd = false;
  DerivKind deriv = DerivKind::Tail;
  TermPtr rhs;              // derivative equations
  std::string even_target;  // even/odd equations
  std::string odd_target;
  SourceSpan span;
};

// Equations after flattening: one first-order equation per variable, in
// declaration order.
struct EquationSystem {
  AlgebraPtr algebra;
  std::vector<Equation> equations;

  const Equation* find(const std::string& var) const;
  std::vector<std::string> variables() const;
};

struct SpecFile {
  AlgebraPtr algebra;
  std::vector<GsosDef> defs;
  EquationSystem system;

  const GsosDef* find_def(const std::string& name) const;
};

// Head expression evaluation over argument heads.
Elem eval_head(const Algebra& alg, const HeadExpr& e, const std::vector<Elem>& heads);
bool eval_guard(const Algebra& alg, const Guard& g, const std::vector<Elem>& heads);

std::string to_string(const Algebra& alg, const HeadExpr& e);
std::string to_string(const Algebra& alg, const Guard& g);
std::string to_string(const Algebra& alg, const Term& t);
std::string to_string(const Algebra& alg, const GsosDef& d);
std::string to_string(const SpecFile& spec);

bool same_head(const HeadExpr& a, const HeadExpr& b);
bool same_guard(const Guard& a, const Guard& b);
bool same_term(const Term& a, const Term& b);
bool same_def(const GsosDef& a, const GsosDef& b);
bool same_spec(const SpecFile& a, const SpecFile& b);

// Name of the k-th derivative of v after flattening ("v" for k = 0).
std::string flattened_name(const std::string& v, std::size_t k);

}  // namespace sde
