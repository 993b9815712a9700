#include "sde/error.hpp"

namespace sde {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::UnsupportedOp: return "UnsupportedOp";
    case ErrorKind::DenominatorHeadZero: return "DenominatorHeadZero";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::NonProductive: return "NonProductive";
    case ErrorKind::HeadNotInvertible: return "HeadNotInvertible";
    case ErrorKind::NoExactSqrt: return "NoExactSqrt";
    case ErrorKind::UnorderedAlgebra: return "UnorderedAlgebra";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::MissingInitialValue: return "MissingInitialValue";
    case ErrorKind::NotZeroConsistent: return "NotZeroConsistent";
    case ErrorKind::EvenDenominator: return "EvenDenominator";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

Error& Error::with_index(std::size_t index) {
  index_ = index;
  return *this;
}

Error& Error::with_span(SourceSpan span) {
  span_ = span;
  return *this;
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace sde
