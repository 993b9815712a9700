#pragma once

#include <string_view>

#include "sde/term.hpp"

namespace sde {

// Parses a specification file. Higher-order equations are flattened into
// first-order ones over fresh variables v#1, v#2, ... When algebra_override is
// set it replaces the file's algebra directive.
SpecFile parse_spec(std::string_view text, const AlgebraPtr& algebra_override = nullptr);

// Parses a standalone stream term whose identifiers refer to the unknowns and
// definitions of context.
TermPtr parse_term(std::string_view text, const SpecFile& context);

}  // namespace sde
