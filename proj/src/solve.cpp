#include "sde/solve.hpp"

#include "sde/automatic.hpp"
#include "sde/engine.hpp"
#include "sde/error.hpp"

namespace sde {

Solution solve_spec(const SpecFile& spec, const std::optional<DeltaOSpec>& delta_o) {
  const EquationSystem& sys = spec.system;
  Classification c = classify(sys);
  if (c.kind == SystemKind::EvenOdd) {
    TwoAutomaton aut = compile_evenodd(sys);
    Solution s;
    s.vars = sys.variables();
    for (std::size_t q = 0; q < aut.size(); ++q) s.streams.emplace(aut.names[q], stream_of(aut, q));
    return s;
  }
  if (!spec.defs.empty()) return solve_system_with_defs(spec);
  switch (c.kind) {
    case SystemKind::Simple: return solve_simple(sys);
    case SystemKind::Linear: return solve_linear_coinductive(to_linear(sys));
    case SystemKind::ContextFree: return solve_context_free(to_context_free(sys));
    case SystemKind::NonStd: return solve_nonstd(sys, c.nonstd, delta_o);
    default: return solve_system_with_defs(spec);
  }
}

std::vector<std::pair<std::string, RatExpr>> closed_forms(const SpecFile& spec) {
  if (!spec.defs.empty()) fail(ErrorKind::UnsupportedOp, "closed forms need a linear system without definitions");
  Classification c = classify(spec.system);
  if (c.kind != SystemKind::Simple && c.kind != SystemKind::Linear)
    fail(ErrorKind::UnsupportedOp, "closed forms exist for linear systems only, got " + to_string(c.kind));
  LinearSystem lin = to_linear(spec.system);
  std::vector<RatExpr> forms = solve_linear_matrix(lin);
  std::vector<std::pair<std::string, RatExpr>> out;
  for (std::size_t i = 0; i < lin.vars.size(); ++i) out.emplace_back(lin.vars[i], forms[i]);
  return out;
}

}  // namespace sde
