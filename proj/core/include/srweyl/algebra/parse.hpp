#pragma once

#include <span>
#include <string>
#include <string_view>

#include "srweyl/algebra/poly.hpp"

namespace srweyl::algebra {

/// Parses a polynomial expression over the named variables.
///
/// Grammar: sums and differences of products; factors are rational or decimal
/// literals, variable names, parenthesised expressions, and powers with a
/// non-negative integer exponent (`^` or `**`). Division is allowed only by a
/// nonzero constant. Errors carry the 1-based column of the offending token.
Poly parse_poly(std::string_view text, std::span<const std::string> names);

}  // namespace srweyl::algebra
