#include "ffcount/ansatz.hpp"

#include "ffcount/errors.hpp"
#include "ffcount/eval.hpp"
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

// Inverse of a square rational matrix; nullopt when singular.
std::optional<std::vector<std::vector<Rat>>> invert(std::vector<std::vector<Rat>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Rat s = 1 / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a[i][c]) == 0) continue;
      const Rat f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

std::vector<UPoly> constants(const std::vector<Rat>& v) {
  std::vector<UPoly> out;
  out.reserve(v.size());
  for (const Rat& x : v) out.push_back(UPoly::constant(x));
  return out;
}

}  // namespace

CoefficientSystem extract_coefficient_system(const std::vector<RatPoly>& f_list, int r) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be at least 1");
  const std::size_t n = coordinate_count(f_list);
  const auto& vars = f_list.front().vars();

  CoefficientSystem sys;
  sys.r = r;
  sys.n = n;
  for (std::size_t j = 0; j < n; ++j)
    for (int l = 0; l < r; ++l) sys.unknowns.push_back(vars[j] + "_" + std::to_string(l));

  std::vector<std::string> ring = sys.unknowns;
  ring.emplace_back("t");
  const std::size_t t_index = ring.size() - 1;
  RatPoly t = RatPoly::variable(ring, t_index);
  std::vector<RatPoly> values;
  for (std::size_t j = 0; j < n; ++j) {
    RatPoly xj(ring);
    RatPoly tl = RatPoly::constant(ring, Rat(1));
    for (int l = 0; l < r; ++l) {
      xj += RatPoly::variable(ring, j * static_cast<std::size_t>(r) + static_cast<std::size_t>(l)) * tl;
      tl *= t;
    }
    values.push_back(std::move(xj));
  }
  values.push_back(t);

  for (std::size_t i = 0; i < f_list.size(); ++i) {
    RatPoly sub = f_list[i].evaluate<RatPoly>(
        values, [&](const Rat& c) { return RatPoly::constant(ring, c); }, RatPoly::constant(ring, Rat(1)));
    std::map<int, RatPoly> by_power;
    for (const auto& [m, c] : sub.terms()) {
      auto [it, _] = by_power.try_emplace(m[t_index], RatPoly(sys.unknowns));
      it->second.add_term(Monomial(m.begin(), m.end() - 1), c);
    }
    for (auto& [k, eq] : by_power) {
      if (eq.is_zero()) continue;
      sys.equations.push_back(std::move(eq));
      sys.origin.emplace_back(i, k);
    }
  }
  return sys;
}

std::vector<Rat> coefficient_vector(const PolyCurve& p) {
  std::vector<Rat> out;
  for (std::size_t j = 0; j < p.size(); ++j)
    for (int l = 0; l < p.r(); ++l) out.push_back(p[j].coeff(l));
  return out;
}

SystemAnalysis analyze_system(const CoefficientSystem& sys) {
  SystemAnalysis out;
  if (sys.unknowns.size() != 1) return out;
  UPoly g;
  for (const auto& eq : sys.equations) {
    std::vector<Rat> c(static_cast<std::size_t>(std::max(0, eq.degree(0) + 1)));
    for (const auto& [m, x] : eq.terms()) c[static_cast<std::size_t>(m[0])] = x;
    g = gcd(g, UPoly(std::move(c)));
  }
  if (g.is_zero()) {
    out.kind = SystemAnalysis::Kind::PositiveDimensional;
  } else if (g.degree() == 0) {
    out.kind = SystemAnalysis::Kind::Inconsistent;
  } else {
    out.kind = SystemAnalysis::Kind::ZeroDimensional;
    out.rational_solutions = rational_roots(g);
  }
  return out;
}

std::string to_string(const LiftStatus& s) {
  switch (s.kind) {
    case LiftStatus::Kind::PolynomialWitnessed: return "PolynomialWitnessed(" + std::to_string(s.bound) + ")";
    case LiftStatus::Kind::NonPolynomialToOrder: return "NonPolynomialToOrder(" + std::to_string(s.bound) + ")";
    case LiftStatus::Kind::Singular: return "Singular";
  }
  return "?";
}

std::optional<PolyCurve> LiftResult::polynomial() const {
  if (status.kind != LiftStatus::Kind::PolynomialWitnessed) return std::nullopt;
  std::vector<TPoly> comps;
  for (const auto& s : curve) comps.push_back(s.to_poly().truncated(status.bound));
  return PolyCurve(std::move(comps), status.bound);
}

LiftResult hensel_lift(const std::vector<RatPoly>& f_list, const std::vector<Rat>& fiber_point, int m,
                       std::optional<int> r) {
  const std::size_t n = coordinate_count(f_list);
  if (f_list.size() != n)
    throw Error(ErrorCode::ShapeMismatch, "system is not square: " + std::to_string(f_list.size()) + " equations in " +
                                              std::to_string(n) + " unknowns");
  if (fiber_point.size() != n) throw Error(ErrorCode::ArityMismatch, "fiber point has wrong length");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "M must be positive");
  if (r && *r < 1) throw Error(ErrorCode::InvalidArgument, "r must be at least 1");

  std::vector<UPoly> x = constants(fiber_point);
  for (const auto& f : f_list)
    if (sgn(eval_upoly(f, x, 1).coeff(0)) != 0) throw Error(ErrorCode::NotOnFiber, "F(x0, 0) != 0");

  std::vector<std::vector<RatPoly>> jac(n);
  std::vector<std::vector<Rat>> j0(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      jac[i].push_back(f_list[i].derivative(j));
      j0[i][j] = eval_upoly(jac[i][j], x, 1).coeff(0);
    }
  auto j0_inv = invert(j0);
  if (!j0_inv) throw Error(ErrorCode::Singular, "Jacobian at the fiber point is not invertible");

  // Newton step from precision p to q <= 2p: J(x) delta = F(x), where delta = O(t^p), so
  // only J mod t^(q-p) is needed and delta is solved degree by degree with J0^{-1}.
  for (int p = 1; p < m;) {
    const int q = std::min(2 * p, m);
    std::vector<UPoly> residual(n);
    for (std::size_t i = 0; i < n; ++i) residual[i] = eval_upoly(f_list[i], x, q);
    std::vector<std::vector<UPoly>> jser(n, std::vector<UPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) jser[i][j] = eval_upoly(jac[i][j], x, q - p);

    std::vector<std::vector<Rat>> delta(n, std::vector<Rat>(static_cast<std::size_t>(q)));
    for (int s = p; s < q; ++s) {
      std::vector<Rat> rhs(n);
      for (std::size_t i = 0; i < n; ++i) {
        rhs[i] = residual[i].coeff(s);
        for (std::size_t j = 0; j < n; ++j)
          for (int l = 1; l <= s - p; ++l) rhs[i] -= jser[i][j].coeff(l) * delta[j][static_cast<std::size_t>(s - l)];
      }
      for (std::size_t j = 0; j < n; ++j) {
        Rat v;
        for (std::size_t i = 0; i < n; ++i) v += (*j0_inv)[j][i] * rhs[i];
        delta[j][static_cast<std::size_t>(s)] = v;
      }
    }
    for (std::size_t j = 0; j < n; ++j) x[j] -= UPoly(std::move(delta[j]));
    p = q;
  }

  LiftResult out;
  int deg = -1;
  for (const auto& c : x) {
    out.curve.push_back(TSeries::from_poly(c, m));
    deg = std::max(deg, c.degree());
  }
  const int witnessed = std::max(deg + 1, 1);
  if (r) {
    if (witnessed <= *r)
      out.status = {LiftStatus::Kind::PolynomialWitnessed, *r};
    else
      out.status = {LiftStatus::Kind::NonPolynomialToOrder, m};
  } else if (witnessed < m) {
    out.status = {LiftStatus::Kind::PolynomialWitnessed, witnessed};
  } else {
    out.status = {LiftStatus::Kind::NonPolynomialToOrder, m};
  }
  return out;
}

Enumeration enumerate_lift(const std::vector<RatPoly>& f_list, int r, const std::vector<std::vector<Rat>>& fiber_points,
                           int guard) {
  if (fiber_points.empty()) throw Error(ErrorCode::EmptyInput, "no fiber points");
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be at least 1");
  if (guard < 0) throw Error(ErrorCode::InvalidArgument, "guard must be nonnegative");
  coordinate_count(f_list);
  const int m = r + guard;

  struct Outcome {
    std::optional<FoundCurve> found;
    std::string reason;
  };
  auto outcomes = parallel_map(fiber_points.size(), [&](std::size_t k) -> Outcome {
    try {
      LiftResult lift = hensel_lift(f_list, fiber_points[k], m, r);
      auto poly = lift.polynomial();
      if (!poly) return {std::nullopt, to_string(lift.status)};
      for (const auto& f : f_list)
        if (!eval_exact(f, *poly).is_zero()) return {std::nullopt, "truncated lift is not an exact solution"};
      return {FoundCurve{*poly, lift.status}, {}};
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Singular || e.code() == ErrorCode::NotOnFiber) return {std::nullopt, e.what()};
      throw;
    }
  });

  Enumeration out;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (outcomes[k].found)
      out.curves.push_back(std::move(*outcomes[k].found));
    else
      out.rejected.push_back({fiber_points[k], outcomes[k].reason});
  }
  return out;
}

Enumeration enumerate_grid(const std::vector<RatPoly>& f_list, int r, const CandidateGrid& grid) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be at least 1");
  const std::size_t n = coordinate_count(f_list);
  const auto& vars = f_list.front().vars();

  std::vector<bool> is_free(n, false);
  std::vector<std::size_t> free_index;
  for (const auto& name : grid.free) {
    auto it = std::find(vars.begin(), vars.begin() + static_cast<long>(n), name);
    if (it == vars.begin() + static_cast<long>(n))
      throw Error(ErrorCode::InvalidArgument, "free coordinate '" + name + "' is not a coordinate");
    const auto idx = static_cast<std::size_t>(it - vars.begin());
    if (is_free[idx]) throw Error(ErrorCode::InvalidArgument, "free coordinate '" + name + "' listed twice");
    is_free[idx] = true;
    free_index.push_back(idx);
  }

  // Solving equation per dependent coordinate: y = -(F - c y) / c.
  struct Solver {
    std::size_t coord;
    RatPoly rest;
    Rat c;
  };
  std::vector<Solver> solvers;
  for (std::size_t d = 0; d < n; ++d) {
    if (is_free[d]) continue;
    bool found = false;
    for (const auto& f : f_list) {
      if (f.degree(d) != 1) continue;
      bool clean = true;
      for (std::size_t o = 0; o < n; ++o)
        if (o != d && !is_free[o] && f.involves(o)) clean = false;
      if (!clean) continue;
      auto parts = f.collect(d);
      auto c = parts.at(1).constant_value();
      if (!c) continue;
      RatPoly rest = parts.count(0) ? parts.at(0) : RatPoly(vars);
      solvers.push_back({d, std::move(rest), *c});
      found = true;
      break;
    }
    if (!found)
      throw Error(ErrorCode::InvalidArgument,
                  "coordinate '" + vars[d] + "' is not determined by an equation c*" + vars[d] + " + g(free, t)");
  }

  // One axis per (free coordinate, power of t).
  std::vector<std::vector<Rat>> axes;
  for (std::size_t idx : free_index) {
    auto it = grid.coeffs.find(vars[idx]);
    std::vector<std::vector<Rat>> lists = it == grid.coeffs.end() ? std::vector<std::vector<Rat>>{} : it->second;
    if (static_cast<int>(lists.size()) > r)
      throw Error(ErrorCode::InvalidArgument, "candidates for '" + vars[idx] + "' go beyond degree r - 1");
    lists.resize(static_cast<std::size_t>(r), std::vector<Rat>{Rat(0)});
    for (auto& l : lists) {
      if (l.empty()) throw Error(ErrorCode::EmptyInput, "empty candidate list for '" + vars[idx] + "'");
      axes.push_back(l);
    }
  }
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.size();

  struct Outcome {
    std::vector<Rat> seed;
    std::optional<PolyCurve> curve;
    std::string reason;
  };
  auto outcomes = parallel_map(total, [&](std::size_t code) -> Outcome {
    Outcome o;
    std::vector<std::size_t> digit(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      digit[a] = code % axes[a].size();
      code /= axes[a].size();
    }
    std::vector<UPoly> x(n);
    std::size_t a = 0;
    for (std::size_t idx : free_index) {
      std::vector<Rat> c(static_cast<std::size_t>(r));
      for (int l = 0; l < r; ++l, ++a) {
        c[static_cast<std::size_t>(l)] = axes[a][digit[a]];
        o.seed.push_back(c[static_cast<std::size_t>(l)]);
      }
      x[idx] = UPoly(std::move(c));
    }
    for (const auto& s : solvers) x[s.coord] = eval_upoly(s.rest, x) * (Rat(-1) / s.c);
    for (std::size_t d = 0; d < n; ++d)
      if (x[d].degree() >= r) {
        o.reason = "coordinate '" + vars[d] + "' has degree " + std::to_string(x[d].degree()) + " >= r";
        return o;
      }
    PolyCurve p(x, r);
    for (std::size_t i = 0; i < f_list.size(); ++i)
      if (!eval_exact(f_list[i], p).is_zero()) {
        o.reason = "equation " + std::to_string(i) + " does not vanish";
        return o;
      }
    o.curve = std::move(p);
    return o;
  });

  Enumeration out;
  for (auto& o : outcomes) {
    if (o.curve)
      out.curves.push_back({std::move(*o.curve), {LiftStatus::Kind::PolynomialWitnessed, r}});
    else
      out.rejected.push_back({std::move(o.seed), std::move(o.reason)});
  }
  return out;
}

}  // namespace ffcount
