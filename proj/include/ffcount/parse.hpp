#pragma once

#include "ffcount/mpoly.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ffcount {

// Reads an infix expression such as "y - x^2 - t*x" or "(1/2)*a0^2" over the given
// variables. Integer exponents only; "^-1" is accepted and produces a negative exponent.
RatPoly parse_poly(std::string_view text, const std::vector<std::string>& vars);

}  // namespace ffcount
