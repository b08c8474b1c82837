#include "ffcount/interp.hpp"

#include "ffcount/errors.hpp"
#include "ffcount/eval.hpp"
#include "ffcount/parallel.hpp"

#include <algorithm>

namespace ffcount {

namespace {

std::int64_t to_int64(const Integer& z, const char* what) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " overflows 64 bits");
  return z.get_si();
}

Integer int_pow(long base, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
  return r;
}

Integer capacity_z(int nu, long k, int n, int m) {
  if (m == 0) return k == 0 ? int_pow(nu, static_cast<unsigned long>(n)) : Integer(0);
  return int_pow(nu, static_cast<unsigned long>(n - m)) * binomial(k + m - 1, m - 1);
}

std::optional<Integer> greedy_z(int n, int m, int nu, const Integer& mu) {
  if (m == 0) {
    if (mu > capacity_z(nu, 0, n, 0)) return std::nullopt;
    return Integer(0);
  }
  if (m == 1) {
    // Constant capacity c per order: q full orders then a partial one.
    const Integer c = capacity_z(nu, 0, n, 1);
    const Integer q = mu / c;
    const Integer rem = mu % c;
    return c * q * (q - 1) / 2 + rem * q;
  }
  Integer remaining = mu, sum = 0;
  for (long k = 0; remaining > 0; ++k) {
    Integer take = capacity_z(nu, k, n, m);
    if (take > remaining) take = remaining;
    sum += take * k;
    remaining -= take;
  }
  return sum;
}

void check_split_params(int n, int m, int nu) {
  if (n < 1 || m < 0 || m > n || nu < 1)
    throw Error(ErrorCode::InvalidArgument, "need n >= 1, 0 <= m <= n, nu >= 1");
}

// g_k(p_j) for every curve and map.
std::vector<std::vector<UPoly>> g_values(const std::vector<RatPoly>& g, const std::vector<PolyCurve>& curves) {
  return parallel_map(curves.size(), [&](std::size_t j) {
    std::vector<UPoly> row;
    for (const auto& gk : g) row.push_back(eval_exact(gk, curves[j]));
    return row;
  });
}

UPoly monomial_value(const std::vector<UPoly>& gv, const Monomial& e) {
  UPoly v = UPoly::constant(Rat(1));
  for (std::size_t k = 0; k < e.size(); ++k)
    for (int i = 0; i < e[k]; ++i) v *= gv[k];
  return v;
}

DetReport finish(UPoly value, int truncation) {
  DetReport rep;
  rep.vanished = value.is_zero();
  if (!rep.vanished) rep.ord = value.valuation();
  rep.value = std::move(value);
  rep.truncation = truncation;
  return rep;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int k) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (k == 0) out.emplace_back();
    return out;
  }
  for (int e = k; e >= 0; --e)
    for (auto& rest : monomials_of_degree(nvars - 1, k - e)) {
      Monomial m{e};
      m.insert(m.end(), rest.begin(), rest.end());
      out.push_back(std::move(m));
    }
  return out;
}

std::vector<Monomial> monomial_basis(std::size_t nvars, int d) {
  std::vector<Monomial> out;
  for (int k = 0; k <= d; ++k) {
    auto part = monomials_of_degree(nvars, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::int64_t monomial_count(std::size_t nvars, int d) {
  if (d < 0) return 0;
  return to_int64(binomial(d + static_cast<long>(nvars), static_cast<long>(nvars)), "monomial count");
}

TSeries DetReport::series() const {
  if (truncation <= 0) return TSeries::from_poly(value, std::max(value.degree() + 1, 1), true);
  return TSeries::from_poly(value, truncation, value.degree() < truncation);
}

UPoly determinant_qt(std::vector<std::vector<UPoly>> m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  if (n == 0) return UPoly::constant(Rat(1));
  bool negate = false;
  UPoly prev = UPoly::constant(Rat(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k].is_zero()) ++p;
    if (p == n) return UPoly();
    if (p != k) {
      std::swap(m[p], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = divmod(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev).first;
      m[i][k] = UPoly();
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

DetReport interp_det(const std::vector<RatPoly>& f_list, const std::vector<PolyCurve>& curves, int truncation,
                     std::optional<SplitData> split) {
  if (f_list.empty()) throw Error(ErrorCode::EmptyInput, "no functions");
  if (f_list.size() != curves.size())
    throw Error(ErrorCode::ShapeMismatch, std::to_string(f_list.size()) + " functions but " +
                                              std::to_string(curves.size()) + " curves");
  auto rows = parallel_map(f_list.size(), [&](std::size_t i) {
    std::vector<UPoly> row;
    for (const auto& p : curves) row.push_back(eval_exact(f_list[i], p));
    return row;
  });
  long bound = 0;
  for (const auto& row : rows) {
    int mx = 0;
    for (const auto& e : row) mx = std::max(mx, e.degree());
    bound += mx;
  }
  DetReport rep = finish(determinant_qt(std::move(rows)), truncation);
  rep.deg_upper_bound = bound;
  if (split) {
    auto g = greedy_order_bound(split->n, split->m, split->nu, static_cast<std::int64_t>(f_list.size()));
    if (g) rep.ord_lower_bound = *g;
  }
  return rep;
}

DetReport poly_interp_det(const std::vector<RatPoly>& g, int d, const std::vector<PolyCurve>& curves, int truncation,
                          std::optional<SplitData> split) {
  if (g.empty()) throw Error(ErrorCode::EmptyInput, "no g maps");
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "d must be nonnegative");
  const auto basis = monomial_basis(g.size(), d);
  const auto mu = static_cast<std::int64_t>(basis.size());
  if (static_cast<std::int64_t>(curves.size()) != mu)
    throw Error(ErrorCode::ShapeMismatch, "need mu = " + std::to_string(mu) + " curves, got " +
                                              std::to_string(curves.size()));
  const auto gv = g_values(g, curves);
  int r = 0;
  for (const auto& row : gv)
    for (const auto& v : row) r = std::max(r, v.degree());
  auto rows = parallel_map(basis.size(), [&](std::size_t i) {
    std::vector<UPoly> row;
    for (const auto& gj : gv) row.push_back(monomial_value(gj, basis[i]));
    return row;
  });
  DetReport rep = finish(determinant_qt(std::move(rows)), truncation);
  rep.deg_upper_bound = mu * d * r;
  if (split) {
    auto b = greedy_order_bound(split->n, split->m, split->nu, mu);
    if (b) rep.ord_lower_bound = *b;
  }
  return rep;
}

std::int64_t capacity(int nu, int k, int n, int m) {
  check_split_params(n, m, nu);
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be nonnegative");
  return to_int64(capacity_z(nu, k, n, m), "capacity");
}

std::optional<std::int64_t> greedy_order_bound(int n, int m, int nu, std::int64_t mu) {
  check_split_params(n, m, nu);
  if (mu < 1) throw Error(ErrorCode::InvalidArgument, "mu must be positive");
  auto g = greedy_z(n, m, nu, Integer(static_cast<long>(mu)));
  if (!g) return std::nullopt;
  return to_int64(*g, "order bound");
}

int select_degree(int n, int m, int nu, int r) {
  check_split_params(n, m, nu);
  if (m == n) throw Error(ErrorCode::InvalidArgument, "need m < n");
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  if (m == 0) return static_cast<int>(to_int64(int_pow(nu, static_cast<unsigned long>(n)), "degree"));
  constexpr int limit = 1 << 24;
  for (int d = 1; d < limit; ++d) {
    const Integer mu = binomial(d + m + 1, m + 1);
    if (*greedy_z(n, m, nu, mu) > mu * d * r) return d;
  }
  throw Error(ErrorCode::InvalidArgument, "degree search exceeded 2^24");
}

std::vector<std::string> g_names(const std::vector<RatPoly>& g) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < g.size(); ++k) {
    std::string name = "g" + std::to_string(k);
    if (g[k].size() == 1) {
      const auto& [m, c] = *g[k].terms().begin();
      if (c == 1 && total_degree(m) == 1)
        for (std::size_t i = 0; i < m.size(); ++i)
          if (m[i] == 1 && g[k].vars()[i] != "t") name = g[k].vars()[i];
    }
    out.push_back(std::move(name));
  }
  return out;
}

MPoly<RFunT> select_hypersurface(const std::vector<PolyCurve>& curves, const std::vector<RatPoly>& g, int d,
                                 std::optional<std::vector<std::string>> names) {
  if (curves.empty()) throw Error(ErrorCode::EmptyInput, "no curves");
  if (g.empty()) throw Error(ErrorCode::EmptyInput, "no g maps");
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be at least 1");
  std::vector<std::string> gn = names ? *names : g_names(g);
  if (gn.size() != g.size()) throw Error(ErrorCode::ArityMismatch, "wrong number of g names");
  const auto gv = g_values(g, curves);
  const std::size_t rows = curves.size();

  // Fraction-free elimination applied one column at a time. Step k keeps its pivot, the
  // multipliers below it and the finished upper part of its column; rows are permuted in
  // place through perm.
  struct Step {
    UPoly pivot;
    std::vector<UPoly> mult;  // indexed by position, meaningful below k
    std::vector<UPoly> upper;  // positions 0..k of the pivot column
    std::size_t column;
  };
  std::vector<Step> steps;
  std::vector<std::size_t> perm(rows);
  for (std::size_t i = 0; i < rows; ++i) perm[i] = i;
  std::vector<Monomial> seen;
  const UPoly one = UPoly::constant(Rat(1));

  for (int k = 0; k <= d; ++k) {
    for (const Monomial& mono : monomials_of_degree(g.size(), k)) {
      const std::size_t c = seen.size();
      seen.push_back(mono);
      std::vector<UPoly> w(rows);
      for (std::size_t i = 0; i < rows; ++i) w[i] = monomial_value(gv[perm[i]], mono);
      for (std::size_t s = 0; s < steps.size(); ++s) {
        const UPoly& prev = s == 0 ? one : steps[s - 1].pivot;
        for (std::size_t i = s + 1; i < rows; ++i)
          w[i] = divmod(steps[s].pivot * w[i] - steps[s].mult[i] * w[s], prev).first;
      }
      const std::size_t rank = steps.size();
      std::size_t q = rank;
      while (q < rows && w[q].is_zero()) ++q;
      if (q < rows) {
        if (q != rank) {
          std::swap(perm[q], perm[rank]);
          std::swap(w[q], w[rank]);
          for (auto& st : steps) std::swap(st.mult[q], st.mult[rank]);
        }
        steps.push_back({w[rank], w, std::vector<UPoly>(w.begin(), w.begin() + static_cast<long>(rank) + 1), c});
        continue;
      }

      // Dependent column: back-substitute U y = det * b with det the leading minor.
      const UPoly det = rank == 0 ? one : steps[rank - 1].pivot;
      std::vector<UPoly> y(rank);
      for (std::size_t j = rank; j-- > 0;) {
        UPoly acc = det * w[j];
        for (std::size_t l = j + 1; l < rank; ++l) acc -= steps[l].upper[j] * y[l];
        y[j] = divmod(acc, steps[j].pivot).first;
      }
      std::vector<UPoly> e(c + 1);
      for (std::size_t j = 0; j < rank; ++j) e[steps[j].column] = y[j];
      e[c] = -det;

      UPoly h;
      for (const auto& x : e) h = gcd(h, x);
      std::size_t first = 0;
      while (e[first].is_zero()) ++first;
      const UPoly lead = divmod(e[first], h).first;
      const Rat scale = 1 / lead.leading();
      MPoly<RFunT> out(gn);
      for (std::size_t j = 0; j < e.size(); ++j)
        if (!e[j].is_zero()) out.add_term(seen[j], RFunT(divmod(e[j], h).first * scale));
      return out;
    }
  }
  throw Error(ErrorCode::NoKernel, "evaluation matrix has full column rank " + std::to_string(seen.size()) +
                                       "; increase d");
}

}  // namespace ffcount
