#include "ffcount/mpoly_algo.hpp"

#include "ffcount/errors.hpp"

#include <algorithm>

namespace ffcount {

namespace {

bool divides(const Monomial& small, const Monomial& big) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] > big[i]) return false;
  return true;
}

Monomial difference(const Monomial& big, const Monomial& small) {
  Monomial d(big.size());
  for (std::size_t i = 0; i < big.size(); ++i) d[i] = big[i] - small[i];
  return d;
}

RatPoly one_like(const RatPoly& a) { return RatPoly::constant(a.vars(), Rat(1)); }

// Variable of smallest positive degree, preferring ones both arguments involve; keeps
// pseudo-remainder sequences short.
std::optional<std::size_t> main_variable(const RatPoly& a, const RatPoly& b) {
  std::optional<std::size_t> best;
  auto key = [&](std::size_t v) {
    const bool shared = a.involves(v) && b.involves(v);
    return std::pair{shared ? 0 : 1, std::max(a.degree(v), b.degree(v))};
  };
  for (std::size_t v = 0; v < a.nvars(); ++v)
    if ((a.involves(v) || b.involves(v)) && (!best || key(v) < key(*best))) best = v;
  return best;
}

RatPoly leading_coeff_in(const RatPoly& a, std::size_t var, int deg) {
  RatPoly c(a.vars());
  for (const auto& [m, x] : a.terms())
    if (m[var] == deg) {
      Monomial r = m;
      r[var] = 0;
      c.add_term(r, x);
    }
  return c;
}

RatPoly primitive_part(const RatPoly& a, std::size_t var) {
  RatPoly c = content(a, var);
  return *divide_exact(a, c);
}

// Image of a in Q[v] after substituting integers for the other variables.
UPoly univariate_image(const RatPoly& a, std::size_t v, const std::vector<Rat>& point) {
  std::vector<Rat> c(static_cast<std::size_t>(a.degree(v)) + 1);
  for (const auto& [m, x] : a.terms()) {
    Rat term = x;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != v)
        for (int e = 0; e < m[i]; ++e) term *= point[i];
    c[static_cast<std::size_t>(m[v])] += term;
  }
  return UPoly(std::move(c));
}

// True when a and b have no common factor of positive degree in v: the images at a point
// keeping both v-degrees are coprime, and a common factor would survive there.
bool coprime_in(const RatPoly& a, const RatPoly& b, std::size_t v) {
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<Rat> point(a.nvars());
    for (std::size_t i = 0; i < point.size(); ++i) point[i] = Rat(static_cast<long>(3 + 5 * i + 11 * attempt));
    UPoly ia = univariate_image(a, v, point);
    UPoly ib = univariate_image(b, v, point);
    if (ia.degree() != a.degree(v) || ib.degree() != b.degree(v)) continue;
    return gcd(ia, ib).degree() == 0;
  }
  return false;
}

}  // namespace

std::optional<RatPoly> divide_exact(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by the zero polynomial");
  a.require_polynomial();
  b.require_polynomial();
  RatPoly q(a.vars());
  RatPoly r = a;
  const auto& [mb, cb] = b.leading_term();
  while (!r.is_zero()) {
    auto [mr, cr] = r.leading_term();
    if (!divides(mb, mr)) return std::nullopt;
    RatPoly t = RatPoly::term(a.vars(), difference(mr, mb), cr / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

RatPoly pseudo_remainder(const RatPoly& a, const RatPoly& b, std::size_t var) {
  int db = b.degree(var);
  if (db < 0) throw Error(ErrorCode::InvalidArgument, "pseudo-division by zero");
  RatPoly lcb = leading_coeff_in(b, var, db);
  RatPoly r = a;
  while (!r.is_zero() && r.degree(var) >= db) {
    int dr = r.degree(var);
    RatPoly lcr = leading_coeff_in(r, var, dr);
    Monomial shift(a.nvars(), 0);
    shift[var] = dr - db;
    r = lcb * r - lcr * RatPoly::term(a.vars(), shift, Rat(1)) * b;
  }
  return r;
}

RatPoly content(const RatPoly& a, std::size_t var) {
  RatPoly g(a.vars());
  for (auto& [e, c] : a.collect(var)) {
    g = gcd(g, c);
    if (auto k = g.constant_value(); k && !is_zero(*k)) return one_like(a);
  }
  return g;
}

RatPoly normalize_leading(const RatPoly& a) {
  if (a.is_zero()) return a;
  return a * (1 / a.leading_term().second);
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero()) return normalize_leading(b);
  if (b.is_zero()) return normalize_leading(a);
  auto v = main_variable(a, b);
  if (!v) return one_like(a);
  if (!a.involves(*v)) return gcd(a, content(b, *v));
  if (!b.involves(*v)) return gcd(content(a, *v), b);
  RatPoly ca = content(a, *v);
  RatPoly cb = content(b, *v);
  RatPoly c = gcd(ca, cb);
  RatPoly pa = *divide_exact(a, ca);
  RatPoly pb = *divide_exact(b, cb);
  if (coprime_in(pa, pb, *v)) return normalize_leading(c);
  if (pa.degree(*v) < pb.degree(*v)) std::swap(pa, pb);
  RatPoly g(a.vars());
  while (true) {
    RatPoly r = pseudo_remainder(pa, pb, *v);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (!r.involves(*v)) {
      g = one_like(a);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, *v);
  }
  return normalize_leading(c * primitive_part(g, *v));
}

RatPoly determinant(std::vector<std::vector<RatPoly>> m, const std::vector<std::string>& vars) {
  const std::size_t n = m.size();
  if (n == 0) return RatPoly::constant(vars, Rat(1));
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  int sign = 1;
  RatPoly prev = RatPoly::constant(vars, Rat(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k].is_zero()) ++p;
    if (p == n) return RatPoly(vars);
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        RatPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = *divide_exact(num, prev);
      }
      m[i][k] = RatPoly(vars);
    }
    prev = m[k][k];
  }
  RatPoly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

RatPoly resultant(const RatPoly& a, const RatPoly& b, std::size_t var) {
  if (a.is_zero() || b.is_zero()) return RatPoly(a.vars());
  const int da = a.degree(var);
  const int db = b.degree(var);
  if (da == 0) return a.pow(static_cast<unsigned>(db));
  if (db == 0) return b.pow(static_cast<unsigned>(da));
  auto ca = a.collect(var);
  auto cb = b.collect(var);
  const std::size_t n = static_cast<std::size_t>(da + db);
  std::vector<std::vector<RatPoly>> s(n, std::vector<RatPoly>(n, RatPoly(a.vars())));
  for (int row = 0; row < db; ++row)
    for (auto& [e, c] : ca) s[row][static_cast<std::size_t>(row + da - e)] = c;
  for (int row = 0; row < da; ++row)
    for (auto& [e, c] : cb) s[static_cast<std::size_t>(db + row)][static_cast<std::size_t>(row + db - e)] = c;
  return determinant(std::move(s), a.vars());
}

std::optional<RatPoly> sqrt_exact(const RatPoly& a) {
  if (a.is_zero()) return a;
  a.require_polynomial();
  const auto& [m0, c0] = a.leading_term();
  Monomial half(m0.size());
  for (std::size_t i = 0; i < m0.size(); ++i) {
    if (m0[i] % 2 != 0) return std::nullopt;
    half[i] = m0[i] / 2;
  }
  if (sgn(c0) < 0 || !mpz_perfect_square_p(c0.get_num().get_mpz_t()) ||
      !mpz_perfect_square_p(c0.get_den().get_mpz_t()))
    return std::nullopt;
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), c0.get_num().get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), c0.get_den().get_mpz_t());
  const Rat lead_coeff(sn, sd);
  RatPoly s = RatPoly::term(a.vars(), half, lead_coeff);
  RatPoly rem = a - s * s;
  for (std::size_t iter = 0; !rem.is_zero(); ++iter) {
    if (iter > 4 * a.size() + 64) return std::nullopt;
    auto [mr, cr] = rem.leading_term();
    if (!divides(half, mr)) return std::nullopt;
    Monomial qm = difference(mr, half);
    if (!(qm < half)) return std::nullopt;
    RatPoly q = RatPoly::term(a.vars(), qm, cr / (2 * lead_coeff));
    rem -= (s * Rat(2) + q) * q;
    s += q;
  }
  return s;
}

std::vector<std::pair<RatPoly, int>> squarefree_in(const RatPoly& a, std::size_t var) {
  std::vector<std::pair<RatPoly, int>> out;
  if (!a.involves(var)) return out;
  RatPoly fp = a.derivative(var);
  RatPoly b = gcd(a, fp);
  RatPoly c = *divide_exact(a, b);
  RatPoly d = *divide_exact(fp, b) - c.derivative(var);
  for (int i = 1; c.involves(var); ++i) {
    RatPoly g = gcd(c, d);
    if (g.involves(var)) out.emplace_back(normalize_leading(g), i);
    c = *divide_exact(c, g);
    d = *divide_exact(d, g) - c.derivative(var);
  }
  return out;
}

namespace {

// Group terms by their non-t monomial; values are polynomials in t.
std::map<Monomial, UPoly> t_groups(const RatPoly& a, std::size_t t_index) {
  std::map<Monomial, std::vector<Rat>> acc;
  for (const auto& [m, c] : a.terms()) {
    Monomial rest = m;
    rest[t_index] = 0;
    auto& v = acc[rest];
    if (static_cast<int>(v.size()) <= m[t_index]) v.resize(static_cast<std::size_t>(m[t_index]) + 1);
    v[static_cast<std::size_t>(m[t_index])] = c;
  }
  std::map<Monomial, UPoly> out;
  for (auto& [k, v] : acc) out.emplace(k, UPoly(std::move(v)));
  return out;
}

}  // namespace

UPoly t_content(const RatPoly& a, std::size_t t_index) {
  UPoly g;
  for (const auto& [m, p] : t_groups(a, t_index)) {
    g = gcd(g, p);
    if (g.degree() == 0) break;
  }
  return g;
}

RatPoly divide_by_t_poly(const RatPoly& a, const UPoly& c, std::size_t t_index) {
  RatPoly r(a.vars());
  for (const auto& [m, p] : t_groups(a, t_index)) {
    auto [q, rem] = divmod(p, c);
    if (!rem.is_zero()) throw Error(ErrorCode::InvalidArgument, "t-polynomial does not divide");
    for (int k = 0; k <= q.degree(); ++k) {
      Monomial mm = m;
      mm[t_index] = k;
      r.add_term(mm, q.coeff(k));
    }
  }
  return r;
}

RatPoly from_upoly(const UPoly& p, const std::vector<std::string>& vars, std::size_t t_index) {
  RatPoly r(vars);
  for (int k = 0; k <= p.degree(); ++k) {
    Monomial m(vars.size(), 0);
    m[t_index] = k;
    r.add_term(m, p.coeff(k));
  }
  return r;
}

RatPoly to_t_poly(const MPoly<RFunT>& p, const std::string& t_name) {
  std::vector<std::string> vars = p.vars();
  vars.push_back(t_name);
  UPoly l = UPoly::constant(Rat(1));
  for (const auto& [m, c] : p.terms()) l = divmod(l * c.den(), gcd(l, c.den())).first;
  RatPoly r(vars);
  for (const auto& [m, c] : p.terms()) {
    UPoly scaled = c.num() * divmod(l, c.den()).first;
    for (int k = 0; k <= scaled.degree(); ++k) {
      Monomial mm = m;
      mm.push_back(k);
      r.add_term(mm, scaled.coeff(k));
    }
  }
  return r;
}

MPoly<RFunT> from_t_poly(const RatPoly& p, std::size_t t_index) {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < p.nvars(); ++i)
    if (i != t_index) vars.push_back(p.vars()[i]);
  MPoly<RFunT> r(vars);
  for (const auto& [m, c] : t_groups(p, t_index)) {
    Monomial mm;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != t_index) mm.push_back(m[i]);
    r.add_term(mm, RFunT(c));
  }
  return r;
}

}  // namespace ffcount
