#pragma once

#include "ffcount/mpoly.hpp"
#include "ffcount/rfunt.hpp"
#include "ffcount/upoly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ffcount {

// Exact quotient a / b when b divides a in Q[vars]; nullopt otherwise.
std::optional<RatPoly> divide_exact(const RatPoly& a, const RatPoly& b);

// prem_var(a, b) = lc(b)^(deg a - deg b + 1) * a mod b as polynomials in var.
RatPoly pseudo_remainder(const RatPoly& a, const RatPoly& b, std::size_t var);

// gcd of the coefficients of a viewed as a polynomial in var.
RatPoly content(const RatPoly& a, std::size_t var);

// gcd in Q[vars], normalized so the lex-leading coefficient is 1. gcd(0, 0) = 0.
RatPoly gcd(const RatPoly& a, const RatPoly& b);

// Resultant with respect to var via a fraction-free Sylvester determinant.
RatPoly resultant(const RatPoly& a, const RatPoly& b, std::size_t var);

// Fraction-free (Bareiss) determinant of a square matrix of polynomials.
RatPoly determinant(std::vector<std::vector<RatPoly>> m, const std::vector<std::string>& vars);

// Square root when a is a perfect square in Q[vars].
std::optional<RatPoly> sqrt_exact(const RatPoly& a);

// Square-free decomposition of a polynomial primitive in var: pairs (factor, multiplicity).
std::vector<std::pair<RatPoly, int>> squarefree_in(const RatPoly& a, std::size_t var);

// Content of a in Q[t] when a is seen as a polynomial in the other variables.
UPoly t_content(const RatPoly& a, std::size_t t_index);
RatPoly divide_by_t_poly(const RatPoly& a, const UPoly& c, std::size_t t_index);

// Scale so the lex-leading coefficient is 1.
RatPoly normalize_leading(const RatPoly& a);

// Embed a polynomial in t into a polynomial ring where t has index t_index.
RatPoly from_upoly(const UPoly& p, const std::vector<std::string>& vars, std::size_t t_index);

// Conversions between polynomials over Q(t) in `vars` and polynomials over Q in vars + [t].
// to_t_poly clears denominators (multiplies by the lcm of all denominators).
RatPoly to_t_poly(const MPoly<RFunT>& p, const std::string& t_name = "t");
MPoly<RFunT> from_t_poly(const RatPoly& p, std::size_t t_index);

}  // namespace ffcount
