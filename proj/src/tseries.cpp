#include "ffcount/tseries.hpp"

#include "ffcount/errors.hpp"

#include <algorithm>
#include <limits>

namespace ffcount {

namespace {

constexpr long kUnbounded = std::numeric_limits<long>::max() / 4;

long effective_trunc(const TSeries& s) { return s.exact() ? kUnbounded : s.trunc(); }

// Coefficients of a over [lo, hi), zero outside the stored window.
std::vector<Rat> window(const TSeries& a, long lo, long hi) {
  std::vector<Rat> out(static_cast<std::size_t>(hi - lo));
  for (long k = std::max(lo, a.offset()); k < std::min(hi, a.trunc()); ++k)
    out[static_cast<std::size_t>(k - lo)] = a.coeffs()[static_cast<std::size_t>(k - a.offset())];
  return out;
}

}  // namespace

TSeries::TSeries(long offset, std::vector<Rat> coeffs, long trunc, bool exact)
    : offset_(offset), coeffs_(std::move(coeffs)), trunc_(trunc), exact_(exact) {
  if (trunc_ <= offset_) throw Error(ErrorCode::InvalidArgument, "series truncation must exceed its offset");
  if (static_cast<long>(coeffs_.size()) != trunc_ - offset_)
    throw Error(ErrorCode::InvalidArgument, "series coefficient count must equal trunc - offset");
}

TSeries TSeries::from_poly(const UPoly& p, long trunc, bool exact) {
  if (exact && p.degree() >= trunc)
    throw Error(ErrorCode::InvalidArgument, "exact series needs trunc > degree");
  std::vector<Rat> c(static_cast<std::size_t>(std::max(trunc, 1L)));
  for (int k = 0; k <= p.degree() && k < trunc; ++k) c[k] = p.coeff(k);
  return TSeries(0, std::move(c), std::max(trunc, 1L), exact);
}

TSeries TSeries::zero(long trunc, bool exact) { return from_poly(UPoly(), trunc, exact); }

Rat TSeries::coeff(long k) const {
  if (k < offset_) return Rat(0);
  if (k >= trunc_) {
    if (exact_) return Rat(0);
    throw Error(ErrorCode::InvalidArgument, "coefficient beyond the known truncation");
  }
  return coeffs_[static_cast<std::size_t>(k - offset_)];
}

UPoly TSeries::to_poly() const {
  for (long k = offset_; k < 0 && k < trunc_; ++k)
    if (sgn(coeff(k)) != 0) throw Error(ErrorCode::InvalidArgument, "series has a pole at t = 0");
  std::vector<Rat> c;
  for (long k = 0; k < trunc_; ++k) c.push_back(coeff(k));
  return UPoly(std::move(c));
}

Ord ord_t(const TSeries& s) {
  for (std::size_t i = 0; i < s.coeffs().size(); ++i)
    if (sgn(s.coeffs()[i]) != 0) return Ord::finite(s.offset() + static_cast<long>(i));
  return s.exact() ? Ord::infinite() : Ord::at_least(s.trunc());
}

namespace {

TSeries add_sub(const TSeries& a, const TSeries& b, int sign) {
  long offset = std::min(a.offset(), b.offset());
  bool exact = a.exact() && b.exact();
  long trunc = exact ? std::max(a.trunc(), b.trunc()) : std::min(effective_trunc(a), effective_trunc(b));
  auto x = window(a, offset, trunc);
  auto y = window(b, offset, trunc);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += sign * y[i];
  return TSeries(offset, std::move(x), trunc, exact);
}

}  // namespace

TSeries operator+(const TSeries& a, const TSeries& b) { return add_sub(a, b, 1); }
TSeries operator-(const TSeries& a, const TSeries& b) { return add_sub(a, b, -1); }

TSeries operator*(const TSeries& a, const TSeries& b) {
  long offset = a.offset() + b.offset();
  bool exact = a.exact() && b.exact();
  long trunc;
  if (exact) {
    trunc = a.trunc() + b.trunc() - 1;
  } else {
    trunc = std::min(effective_trunc(a) + b.offset(), effective_trunc(b) + a.offset());
  }
  std::vector<Rat> c(static_cast<std::size_t>(trunc - offset));
  // Only the stored windows contribute; exact operands vanish beyond their trunc.
  long a_hi = std::min(a.trunc(), trunc - b.offset());
  long b_hi = std::min(b.trunc(), trunc - a.offset());
  for (long i = a.offset(); i < a_hi; ++i) {
    const Rat& ai = a.coeffs()[static_cast<std::size_t>(i - a.offset())];
    if (sgn(ai) == 0) continue;
    for (long j = b.offset(); j < b_hi && i + j < trunc; ++j)
      c[static_cast<std::size_t>(i + j - offset)] += ai * b.coeffs()[static_cast<std::size_t>(j - b.offset())];
  }
  return TSeries(offset, std::move(c), trunc, exact);
}

TSeries TSeries::operator-() const {
  TSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

TSeries series_arith(const TSeries& a, const TSeries& b, SeriesOp op) {
  switch (op) {
    case SeriesOp::Add: return a + b;
    case SeriesOp::Sub: return a - b;
    case SeriesOp::Mul: return a * b;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown series operation");
}

TSeries invert_unit(const TSeries& a) {
  Ord o = ord_t(a);
  if (!o.is_finite() || o.value != 0)
    throw Error(ErrorCode::NotAUnit, "series is not a unit of Q[[t]] (order must be exactly 0)");
  long m = a.trunc();
  if (a.exact() && m == 1) {
    return TSeries(0, {1 / a.coeff(0)}, 1, true);
  }
  // Exact constants stay exact.
  bool constant = a.exact();
  for (long k = 1; constant && k < m; ++k) constant = sgn(a.coeff(k)) == 0;
  if (constant) {
    std::vector<Rat> c(static_cast<std::size_t>(m));
    c[0] = 1 / a.coeff(0);
    return TSeries(0, std::move(c), m, true);
  }
  std::vector<Rat> inv(static_cast<std::size_t>(m));
  Rat u0inv = 1 / a.coeff(0);
  inv[0] = u0inv;
  for (long n = 1; n < m; ++n) {
    Rat s(0);
    for (long k = 1; k <= n; ++k) s += a.coeff(k) * inv[static_cast<std::size_t>(n - k)];
    inv[static_cast<std::size_t>(n)] = -s * u0inv;
  }
  return TSeries(0, std::move(inv), m, false);
}

}  // namespace ffcount
