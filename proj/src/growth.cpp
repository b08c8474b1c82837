#include "ffcount/growth.hpp"

#include "ffcount/errors.hpp"
#include "ffcount/parallel.hpp"

#include <set>

namespace ffcount {

namespace {

unsigned long as_ulong(const Integer& v, const char* what) {
  if (sgn(v) < 0 || !v.fits_ulong_p()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " out of range");
  return v.get_ui();
}

}  // namespace

bool GrowthSpec::monotone() const {
  for (std::size_t i = 1; i < N.size(); ++i)
    if (!(N[i - 1] < N[i])) return false;
  return true;
}

void validate(const GrowthSpec& spec) {
  if (spec.depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be positive");
  if (static_cast<std::size_t>(spec.depth) > spec.N.size())
    throw Error(ErrorCode::InvalidArgument, "depth exceeds the length of N");
  if (spec.trunc != 0 && spec.trunc <= spec.depth)
    throw Error(ErrorCode::InvalidArgument, "truncation must exceed depth");
  for (const Integer& n : spec.N)
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "N entries must be positive");
}

// j^k * k! * C(j - 1, k), which is zero for 1 <= j <= k.
Integer growth_factor(const Integer& k, const Integer& j) {
  const unsigned long kk = as_ulong(k, "k");
  if (j >= 1 && j <= k) return 0;
  Integer pw, fact, bin;
  mpz_pow_ui(pw.get_mpz_t(), j.get_mpz_t(), kk);
  mpz_fac_ui(fact.get_mpz_t(), kk);
  mpz_bin_ui(bin.get_mpz_t(), Integer(j - 1).get_mpz_t(), kk);
  return pw * fact * bin;
}

UPoly growth_value(const GrowthSpec& spec, const Integer& j) {
  std::vector<Rat> c(static_cast<std::size_t>(spec.depth) + 1);
  for (int i = 1; i <= spec.depth; ++i) c[static_cast<std::size_t>(i)] = Rat(growth_factor(spec.N[i - 1], j));
  return UPoly(std::move(c));
}

RatPoly build_growth_series(const GrowthSpec& spec) {
  validate(spec);
  const std::vector<std::string> vars{"x", "t"};
  const RatPoly x = RatPoly::variable(vars, 0);
  RatPoly f(vars);
  for (int i = 1; i <= spec.depth; ++i) {
    const unsigned long k = as_ulong(spec.N[i - 1], "N_i");
    RatPoly p = x.pow(static_cast<unsigned>(k));
    for (unsigned long l = 1; l <= k; ++l) p = p * (x - RatPoly::constant(vars, Rat(static_cast<long>(l))));
    f += p * RatPoly::term(vars, {0, i}, Rat(1));
  }
  return f;
}

GrowthTable verify_growth(const GrowthSpec& spec, int i_max, bool keep_values) {
  validate(spec);
  if (i_max < 1 || i_max > spec.depth) throw Error(ErrorCode::InvalidArgument, "i_max must lie in 1..depth");
  GrowthTable table;
  table.monotone = spec.monotone();
  table.pass = table.monotone;
  for (int i = 1; i <= i_max; ++i) {
    const unsigned long count = as_ulong(spec.N[i - 1], "N_i");
    auto rows = parallel_map(count, [&](std::size_t idx) {
      GrowthRow row;
      row.i = i;
      row.j = Integer(static_cast<unsigned long>(idx + 1));
      UPoly v = growth_value(spec, row.j);
      row.deg_t = v.degree();
      row.pass = row.deg_t < i;
      if (keep_values) row.value = std::move(v);
      return row;
    });
    GrowthLevel level;
    level.i = i;
    level.n_i = spec.N[i - 1];
    level.witnesses = 0;
    for (auto& r : rows) {
      if (r.pass) level.witnesses += 1;
      table.rows.push_back(std::move(r));
    }
    level.pass = level.witnesses >= level.n_i;
    table.pass = table.pass && level.pass;
    table.levels.push_back(level);
  }
  return table;
}

GapCertificate check_support_gaps(const std::vector<Integer>& N, int d_max) {
  GapCertificate cert;
  cert.pass = true;
  const int len = static_cast<int>(N.size());
  for (int d = 1; d <= d_max; ++d) {
    int last_fail = 0;
    for (int i = 2; i <= len; ++i)
      if (!(N[i - 1] > 2 * d * N[i - 2])) last_fail = i;
    GapEntry e;
    e.d = d;
    if (last_fail == 0) {
      e.i0 = 1;
    } else if (last_fail < len) {
      e.i0 = last_fail + 1;
    } else {
      cert.pass = false;
    }
    cert.entries.push_back(e);
  }
  return cert;
}

std::vector<int> x_support(const RatPoly& f) {
  std::set<int> s;
  for (const auto& [m, c] : f.terms()) s.insert(m[0]);
  return {s.begin(), s.end()};
}

}  // namespace ffcount
