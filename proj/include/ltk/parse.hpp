#pragma once

#include "ltk/intpoly.hpp"

#include <string>

namespace ltk {

// Strict polynomial grammar for CLI input: integer coefficients, `x`, `^`,
// `*`, `+`, `-` and whitespace only. Throws InvalidInput with the exact
// error position.
IntPoly parse_poly(const std::string& text);

std::string poly_to_text(const IntPoly& f);

} // namespace ltk
