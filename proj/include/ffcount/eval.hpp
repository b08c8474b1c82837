#pragma once

#include "ffcount/curve.hpp"
#include "ffcount/mpoly.hpp"
#include "ffcount/rfunt.hpp"
#include "ffcount/tseries.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ffcount {

// Variable list for functions on the ambient space: the coordinates followed by "t".
std::vector<std::string> ambient_vars(std::vector<std::string> coords);

// F(values..., t): values has one entry per non-t variable of F (t must be the last
// variable). When trunc is set all products are truncated modulo t^trunc.
UPoly eval_upoly(const RatPoly& f, const std::vector<UPoly>& values, std::optional<int> trunc = std::nullopt);

// Evaluation of a polynomial over Q(t) (no t variable) at polynomial values.
RFunT eval_rfunt(const MPoly<RFunT>& f, const std::vector<UPoly>& values);

// Exact polynomial F(p_1(t), ..., p_n(t), t).
UPoly eval_exact(const RatPoly& f, const PolyCurve& p);

// F(p(t), t) as a series modulo t^M. The exact flag is set when
// deg_x F * (r - 1) + deg_t F < M, in which case the series is the exact polynomial.
TSeries eval_at_curve(const RatPoly& f, const PolyCurve& p, int m);

}  // namespace ffcount
