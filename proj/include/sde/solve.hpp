#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sde/classify.hpp"
#include "sde/solvers.hpp"

namespace sde {

// Solves a parsed file with the most specific method for its class.
// Files that declare operators go through the syntactic engine.
Solution solve_spec(const SpecFile& spec, const std::optional<DeltaOSpec>& delta_o = {});

// Closed forms of every variable of a simple or linear system over a field.
std::vector<std::pair<std::string, RatExpr>> closed_forms(const SpecFile& spec);

}  // namespace sde
