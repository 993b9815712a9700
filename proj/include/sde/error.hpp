#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sde {

enum class ErrorKind {
  AlgebraMismatch,
  UnsupportedOp,
  DenominatorHeadZero,
  SingularMatrix,
  BudgetExhausted,
  NonProductive,
  HeadNotInvertible,
  NoExactSqrt,
  UnorderedAlgebra,
  SyntaxError,
  UnknownSymbol,
  ArityMismatch,
  MissingInitialValue,
  NotZeroConsistent,
  EvenDenominator,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

struct SourceSpan {
  std::size_t line = 0;
  std::size_t column = 0;
};

// Every failure raised by the library carries a kind so callers (and the CLI
// exit-code mapping) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<std::size_t>& index() const noexcept { return index_; }
  const std::optional<SourceSpan>& span() const noexcept { return span_; }

  Error& with_index(std::size_t index);
  Error& with_span(SourceSpan span);

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
  std::optional<SourceSpan> span_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace sde
