#pragma once

#include "ffcount/curve.hpp"
#include "ffcount/mpoly.hpp"
#include "ffcount/rfunt.hpp"
#include "ffcount/tseries.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ffcount {

// Exponent vectors of total degree <= d in nvars variables, graded then descending lex
// (1, x, y, x^2, xy, y^2, ...).
std::vector<Monomial> monomial_basis(std::size_t nvars, int d);
// Exponent vectors of total degree exactly k, descending lex.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, int k);
// C(d + nvars, nvars); throws InvalidArgument when it does not fit in int64.
std::int64_t monomial_count(std::size_t nvars, int d);

// Parameters of a Weierstrass split used by the order bound.
struct SplitData {
  int n = 0;
  int m = 0;
  int nu = 1;
};

struct DetReport {
  UPoly value;  // exact determinant
  bool vanished = false;
  std::optional<long> ord;              // ord_t(value) when nonzero
  std::optional<long> ord_lower_bound;  // greedy bound, when split data was supplied
  long deg_upper_bound = 0;
  int truncation = 0;  // requested series precision M (0: none)

  TSeries series() const;
};

// Fraction-free determinant over Q[t].
UPoly determinant_qt(std::vector<std::vector<UPoly>> m);

// det(f_i(p_j)) for functions over coordinates + t. deg_upper_bound is the sum over rows
// of the largest entry degree.
DetReport interp_det(const std::vector<RatPoly>& f_list, const std::vector<PolyCurve>& curves, int truncation = 0,
                     std::optional<SplitData> split = std::nullopt);

// interp_det on the monomials of degree <= d in g_0..g_m. deg_upper_bound = mu * d * r with
// r the largest t-degree of g_k(p_j).
DetReport poly_interp_det(const std::vector<RatPoly>& g, int d, const std::vector<PolyCurve>& curves,
                          int truncation = 0, std::optional<SplitData> split = std::nullopt);

// nu^(n-m) * C(k+m-1, m-1); for m = 0 this is nu^n at k = 0 and 0 otherwise.
std::int64_t capacity(int nu, int k, int n, int m);

// Sum of orders when mu columns fill orders 0, 1, 2, ... up to capacity. nullopt when mu
// exceeds the total capacity (only possible for m = 0).
std::optional<std::int64_t> greedy_order_bound(int n, int m, int nu, std::int64_t mu);

// Least d with greedy_order_bound(n, m, nu, mu(d)) > mu(d) * d * r, mu(d) = C(d+m+1, m+1).
int select_degree(int n, int m, int nu, int r);

// Default names for g-coordinates: the variable itself when g_k is a bare variable,
// "g<k>" otherwise.
std::vector<std::string> g_names(const std::vector<RatPoly>& g);

// A nonzero polynomial P of degree <= d over Q(t) in the g-coordinates vanishing on every
// curve, taken from the first dependent column in graded order. Coefficients are primitive
// in Q[t] with the first nonzero one monic. Throws EmptyInput, NoKernel.
MPoly<RFunT> select_hypersurface(const std::vector<PolyCurve>& curves, const std::vector<RatPoly>& g, int d,
                                 std::optional<std::vector<std::string>> names = std::nullopt);

}  // namespace ffcount
