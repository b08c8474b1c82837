#include "ffcount/weier.hpp"

#include "ffcount/errors.hpp"
#include "ffcount/mpoly_algo.hpp"
#include "ffcount/parallel.hpp"

#include <algorithm>

namespace ffcount {

namespace {

std::size_t coordinate_count(const std::vector<RatPoly>& f_list) {
  if (f_list.empty()) throw Error(ErrorCode::EmptyInput, "no equations");
  const auto& vars = f_list.front().vars();
  if (vars.empty() || vars.back() != "t") throw Error(ErrorCode::ArityMismatch, "last variable must be t");
  for (const auto& f : f_list) {
    if (f.vars() != vars) throw Error(ErrorCode::ArityMismatch, "equations use different variable lists");
    f.require_polynomial();
  }
  return vars.size() - 1;
}

// Eliminate w[0..k-2] from the equations by iterated resultants, leaving one polynomial
// in z, w[k-1] and t.
RatPoly eliminate(std::vector<RatPoly> eqs, const std::vector<std::size_t>& w) {
  for (std::size_t s = 0; s + 1 < w.size(); ++s) {
    std::vector<RatPoly> next;
    for (std::size_t i = 1; i < eqs.size(); ++i) next.push_back(resultant(eqs[0], eqs[i], w[s]));
    eqs = std::move(next);
  }
  return eqs.front();
}

void combinations(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::string to_string(WeierstrassSplit::Certificate c) {
  switch (c) {
    case WeierstrassSplit::Certificate::ResultantDegree: return "resultant-degree";
    case WeierstrassSplit::Certificate::UserSupplied: return "user-supplied";
    case WeierstrassSplit::Certificate::BezoutFallback: return "bezout-fallback";
  }
  return "?";
}

WeierstrassSplit estimate_e(const std::vector<RatPoly>& f_list, const std::vector<std::size_t>& z_indices,
                            std::optional<int> user_nu) {
  const std::size_t n = coordinate_count(f_list);
  WeierstrassSplit out;
  std::vector<bool> in_z(n, false);
  for (std::size_t z : z_indices) {
    if (z >= n || in_z[z]) throw Error(ErrorCode::InvalidArgument, "bad z index " + std::to_string(z));
    in_z[z] = true;
  }
  out.z_indices = z_indices;
  for (std::size_t i = 0; i < n; ++i)
    if (!in_z[i]) out.w_indices.push_back(i);
  if (out.w_indices.empty()) throw Error(ErrorCode::InvalidArgument, "no w-variables");

  out.bezout_bound = 1;
  for (const auto& f : f_list) out.bezout_bound *= std::max(0, f.total_degree(out.w_indices));

  if (user_nu) {
    if (*user_nu < 1) throw Error(ErrorCode::InvalidArgument, "nu must be positive");
    out.nu = *user_nu;
    out.certificate = WeierstrassSplit::Certificate::UserSupplied;
    return out;
  }
  const bool square = f_list.size() == out.w_indices.size();
  if (!square)
    throw Error(ErrorCode::Unsupported, std::to_string(f_list.size()) + " equations for " +
                                            std::to_string(out.w_indices.size()) + " w-variables; supply nu");
  if (n > 3) {
    if (out.bezout_bound < 1) throw Error(ErrorCode::NotFinite, "some equation is free of the w-variables");
    out.nu = static_cast<int>(out.bezout_bound);
    out.certificate = WeierstrassSplit::Certificate::BezoutFallback;
    return out;
  }

  const std::size_t t_index = n;
  const std::size_t w_last = out.w_indices.back();
  RatPoly e = eliminate(f_list, out.w_indices);
  if (e.is_zero()) throw Error(ErrorCode::NotFinite, "eliminant vanishes identically");
  e = normalize_leading(divide_by_t_poly(e, t_content(e, t_index), t_index));
  const int deg = e.degree(w_last);
  if (deg < 1)
    throw Error(ErrorCode::NotFinite, "eliminant does not involve " + e.vars()[w_last]);
  const RatPoly g = gcd(e, e.derivative(w_last));
  out.degenerate = g.degree(w_last) > 0;
  out.nu = deg;
  out.eliminant = std::move(e);
  return out;
}

RatPoly apply_change(const RatPoly& f, std::size_t i, std::size_t j, int c) {
  std::vector<RatPoly> values;
  for (std::size_t k = 0; k < f.nvars(); ++k) values.push_back(RatPoly::variable(f.vars(), k));
  values[i] += RatPoly::variable(f.vars(), j) * Rat(c);
  return f.evaluate<RatPoly>(
      values, [&](const Rat& x) { return RatPoly::constant(f.vars(), x); }, RatPoly::constant(f.vars(), Rat(1)));
}

WeierstrassSplit find_split(const std::vector<RatPoly>& f_list, int m) {
  const std::size_t n = coordinate_count(f_list);
  if (m < 0 || static_cast<std::size_t>(m) >= n) throw Error(ErrorCode::InvalidArgument, "need 0 <= m < n");
  std::vector<std::vector<std::size_t>> parts;
  std::vector<std::size_t> cur;
  combinations(n, static_cast<std::size_t>(m), 0, cur, parts);

  auto try_all = [&](const std::vector<RatPoly>& eqs) -> std::optional<WeierstrassSplit> {
    auto results = parallel_map(parts.size(), [&](std::size_t k) -> std::optional<WeierstrassSplit> {
      try {
        return estimate_e(eqs, parts[k]);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NotFinite || e.code() == ErrorCode::Unsupported) return std::nullopt;
        throw;
      }
    });
    for (auto& r : results)
      if (r) return r;
    return std::nullopt;
  };

  if (auto s = try_all(f_list)) return *s;
  for (int c : {1, -1, 2})
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        std::vector<RatPoly> changed;
        for (const auto& f : f_list) changed.push_back(apply_change(f, i, j, c));
        if (auto s = try_all(changed)) {
          s->change = std::make_tuple(i, j, c);
          return *s;
        }
      }
  throw Error(ErrorCode::Unsupported, "no coordinate split gives a finite projection");
}

}  // namespace ffcount
