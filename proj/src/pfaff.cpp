#include "ffcount/pfaff.hpp"

#include "ffcount/errors.hpp"
#include "ffcount/interp.hpp"
#include "ffcount/parallel.hpp"

#include <algorithm>
#include <tuple>

namespace ffcount {

namespace {

RatPoly mul_trunc(const RatPoly& a, const RatPoly& b, int bound) {
  RatPoly r(a.vars());
  Monomial m(a.nvars());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      int deg = 0;
      for (std::size_t i = 0; i < m.size(); ++i) deg += m[i] = ma[i] + mb[i];
      if (deg < bound) r.add_term(m, ca * cb);
    }
  return r;
}

// P(x, phi(x)) modulo total degree bound.
RatPoly compose(const RatPoly& p, const std::vector<RatPoly>& phi, const std::vector<std::string>& x_names, int bound) {
  const std::size_t n = x_names.size();
  std::vector<std::vector<RatPoly>> powers(p.nvars());
  for (std::size_t v = 0; v < p.nvars(); ++v)
    powers[v].push_back(RatPoly::constant(x_names, Rat(1)));
  auto power = [&](std::size_t v, int e) -> const RatPoly& {
    auto& cache = powers[v];
    const RatPoly base = v < n ? RatPoly::variable(x_names, v) : phi[v - n];
    while (static_cast<int>(cache.size()) <= e) cache.push_back(mul_trunc(cache.back(), base, bound));
    return cache[static_cast<std::size_t>(e)];
  };
  RatPoly acc(x_names);
  for (const auto& [m, c] : p.terms()) {
    RatPoly term = RatPoly::constant(x_names, c);
    for (std::size_t v = 0; v < m.size() && !term.is_zero(); ++v)
      if (m[v] > 0) term = mul_trunc(term, power(v, m[v]), bound);
    acc += term;
  }
  return acc;
}

Integer ipow(long base, long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

std::string to_string(ChainKind k) { return k == ChainKind::Pfaffian ? "Pfaffian" : "Noetherian"; }

bool is_triangular(const Chain& chain) {
  for (const auto& row : chain.P)
    for (std::size_t j = 0; j < row.size(); ++j)
      for (std::size_t k = j + 1; k < chain.phi_names.size(); ++k)
        if (row[j].involves(chain.x_names.size() + k)) return false;
  return true;
}

ChainReport verify_chain(const Chain& c) {
  if (c.trunc < 2) throw Error(ErrorCode::TruncationTooLow, "witness truncation must be at least 2");
  const auto n = static_cast<std::size_t>(c.n);
  const auto ell = static_cast<std::size_t>(c.ell);
  if (c.x_names.size() != n || c.phi_names.size() != ell || c.phi.size() != ell || c.P.size() != n)
    throw Error(ErrorCode::ShapeMismatch, "chain tables do not match n and ell");
  std::vector<std::string> pvars = c.x_names;
  pvars.insert(pvars.end(), c.phi_names.begin(), c.phi_names.end());
  for (const auto& row : c.P) {
    if (row.size() != ell) throw Error(ErrorCode::ShapeMismatch, "P row has wrong length");
    for (const auto& p : row)
      if (p.vars() != pvars) throw Error(ErrorCode::ArityMismatch, "P entries must be over x and phi");
  }
  for (const auto& f : c.phi)
    if (f.vars() != c.x_names) throw Error(ErrorCode::ArityMismatch, "witnesses must be over x");

  ChainReport rep;
  rep.compared_below = c.trunc - 1;
  rep.triangular = is_triangular(c);
  rep.pfaffian_eligible = rep.triangular;
  rep.degree_ok = true;
  for (const auto& row : c.P)
    for (const auto& p : row) rep.degree_ok = rep.degree_ok && p.total_degree() <= c.alpha;

  std::vector<RatPoly> phi;
  for (const auto& f : c.phi) phi.push_back(f.truncated_total_degree(c.trunc));
  const int bound = c.trunc - 1;

  auto found = parallel_map(n * ell, [&](std::size_t idx) -> std::optional<ChainMismatch> {
    const std::size_t i = idx / ell, j = idx % ell;
    const RatPoly lhs = phi[j].derivative(i).truncated_total_degree(bound);
    const RatPoly rhs = compose(c.P[i][j], phi, c.x_names, bound);
    std::optional<ChainMismatch> best;
    for (const RatPoly* side : {&lhs, &rhs})
      for (const auto& [m, x] : side->terms()) {
        Rat l = lhs.coefficient(m), r = rhs.coefficient(m);
        if (l == r) continue;
        ChainMismatch mm{total_degree(m), i, j, m, l, r};
        if (!best || std::tie(mm.degree, mm.exponent) < std::tie(best->degree, best->exponent)) best = mm;
      }
    return best;
  });
  for (const auto& f : found) {
    if (!f) continue;
    const auto& b = rep.first_mismatch;
    if (!b || std::tie(f->degree, f->i, f->j, f->exponent) < std::tie(b->degree, b->i, b->j, b->exponent))
      rep.first_mismatch = f;
  }
  rep.identities_hold = !rep.first_mismatch;
  rep.pass = rep.identities_hold && rep.degree_ok && (c.kind != ChainKind::Pfaffian || rep.triangular);
  return rep;
}

Budget multiplicity_budget(long beta, int n, int ell, ChainKind kind, bool t_algebraic, std::optional<long> exponent) {
  if (beta < 1 || n < 0 || ell < 0) throw Error(ErrorCode::InvalidArgument, "need beta >= 1, n >= 0, ell >= 0");
  Budget b;
  if (kind == ChainKind::Pfaffian) {
    b.exponent = n + ell;
    b.value = ipow(beta, b.exponent);
    b.normalized_constant = true;
    b.note = "beta^(n+ell), constant normalized to 1";
  } else if (t_algebraic) {
    b.exponent = exponent.value_or(n + ell + 2);
    if (b.exponent < 0) throw Error(ErrorCode::InvalidArgument, "exponent must be nonnegative");
    b.value = ipow(beta, b.exponent);
    b.normalized_constant = true;
    b.heuristic = true;
    b.note = "beta^E with placeholder exponent E";
  } else {
    b.note = "unavailable: Noetherian chain without algebraic dependence on t";
  }
  return b;
}

WilkieBudget wilkie_budget(long beta, int r, int n, int ell, ChainKind kind, bool t_algebraic,
                           std::optional<long> exponent) {
  if (r < 1 || n < 1) throw Error(ErrorCode::InvalidArgument, "need r >= 1, n >= 1");
  WilkieBudget w;
  w.multiplicity = multiplicity_budget(beta, n, ell, kind, t_algebraic, exponent);
  if (!w.multiplicity.value) throw Error(ErrorCode::Unsupported, w.multiplicity.note);
  if (!w.multiplicity.value->fits_sint_p())
    throw Error(ErrorCode::InvalidArgument, "multiplicity budget too large for degree selection");
  w.nu = static_cast<int>(w.multiplicity.value->get_si());
  w.block_count_bound = 1;
  for (int k = n; k >= 1; --k) {
    const int d = select_degree(n, k - 1, w.nu, r);
    w.per_level_degrees.push_back(d);
    w.block_count_bound *= d;
  }
  w.block_degree_bound = w.block_count_bound;
  return w;
}

}  // namespace ffcount
