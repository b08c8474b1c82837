#include "ffcount/eval.hpp"

#include "ffcount/errors.hpp"

#include <algorithm>

namespace ffcount {

std::vector<std::string> ambient_vars(std::vector<std::string> coords) {
  coords.emplace_back("t");
  return coords;
}

namespace {

void require_t_last(const RatPoly& f, std::size_t n_values) {
  if (f.nvars() != n_values + 1)
    throw Error(ErrorCode::ArityMismatch, "function has " + std::to_string(f.nvars()) +
                                              " variables, expected " + std::to_string(n_values) + " coordinates plus t");
  if (f.vars().back() != "t") throw Error(ErrorCode::ArityMismatch, "last variable must be t");
}

}  // namespace

UPoly eval_upoly(const RatPoly& f, const std::vector<UPoly>& values, std::optional<int> trunc) {
  require_t_last(f, values.size());
  f.require_polynomial();
  const std::size_t n = values.size();
  std::vector<std::vector<UPoly>> powers(n, std::vector<UPoly>{UPoly::constant(Rat(1))});
  auto mul = [&](const UPoly& a, const UPoly& b) { return trunc ? mul_truncated(a, b, *trunc) : a * b; };
  auto power = [&](std::size_t i, int e) -> const UPoly& {
    auto& cache = powers[i];
    while (static_cast<int>(cache.size()) <= e) cache.push_back(mul(cache.back(), values[i]));
    return cache[static_cast<std::size_t>(e)];
  };
  UPoly acc;
  for (const auto& [m, c] : f.terms()) {
    const int te = m[n];
    if (trunc && te >= *trunc) continue;
    UPoly term = UPoly::monomial(c, te);
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i)
      if (m[i] > 0) term = mul(term, power(i, m[i]));
    acc += term;
  }
  return acc;
}

RFunT eval_rfunt(const MPoly<RFunT>& f, const std::vector<UPoly>& values) {
  std::vector<RFunT> v(values.begin(), values.end());
  return f.evaluate<RFunT>(v, [](const RFunT& c) { return c; }, RFunT(Rat(1)));
}

UPoly eval_exact(const RatPoly& f, const PolyCurve& p) { return eval_upoly(f, p.components()); }

TSeries eval_at_curve(const RatPoly& f, const PolyCurve& p, int m) {
  require_t_last(f, p.size());
  f.require_polynomial();
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "truncation must be positive");
  std::vector<std::size_t> coords(p.size());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = i;
  const int deg_x = std::max(0, f.total_degree(coords));
  const int deg_t = std::max(0, f.degree(p.size()));
  const bool exact = static_cast<long>(deg_x) * (p.r() - 1) + deg_t < m;
  UPoly value = eval_upoly(f, p.components(), m);
  return TSeries::from_poly(value, m, exact);
}

}  // namespace ffcount
