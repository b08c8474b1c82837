#include "ffcount/upoly.hpp"

#include "ffcount/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace ffcount {

UPoly::UPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const Rat& c) { return UPoly(std::vector<Rat>{c}); }

UPoly UPoly::monomial(const Rat& c, int power) {
  std::vector<Rat> v(static_cast<std::size_t>(power) + 1);
  v.back() = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

int UPoly::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (sgn(coeffs_[i]) != 0) return static_cast<int>(i);
  return -1;
}

Rat UPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rat(0);
  return coeffs_[k];
}

Rat UPoly::operator()(const Rat& x) const {
  Rat acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rat> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return UPoly(std::move(d));
}

UPoly UPoly::truncated(int n) const {
  if (n <= 0) return {};
  if (n >= static_cast<int>(coeffs_.size())) return *this;
  return UPoly(std::vector<Rat>(coeffs_.begin(), coeffs_.begin() + n));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  UPoly r = *this;
  Rat inv = 1 / leading();
  for (auto& c : r.coeffs_) c *= inv;
  return r;
}

UPoly UPoly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<Rat> v(static_cast<std::size_t>(k));
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return UPoly(std::move(v));
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const UPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rat> r(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(r);
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const Rat& c) {
  if (sgn(c) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

std::string UPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    if (!first) os << (sgn(coeffs_[i]) < 0 ? " - " : " + ");
    else if (sgn(coeffs_[i]) < 0) os << "-";
    first = false;
    Rat a = abs(coeffs_[i]);
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

UPoly mul_truncated(const UPoly& a, const UPoly& b, int n) {
  if (a.is_zero() || b.is_zero() || n <= 0) return {};
  int len = std::min(n, a.degree() + b.degree() + 1);
  std::vector<Rat> r(static_cast<std::size_t>(len));
  auto ac = a.coeffs();
  auto bc = b.coeffs();
  for (int i = 0; i < static_cast<int>(ac.size()) && i < len; ++i) {
    if (sgn(ac[i]) == 0) continue;
    for (int j = 0; j < static_cast<int>(bc.size()) && i + j < len; ++j) r[i + j] += ac[i] * bc[j];
  }
  return UPoly(std::move(r));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rat> rem(a.coeffs().begin(), a.coeffs().end());
  std::vector<Rat> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  Rat inv = 1 / b.leading();
  auto bc = b.coeffs();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Rat q = rem[k + b.degree()] * inv;
    quo[k] = q;
    if (sgn(q) == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) rem[k + j] -= q * bc[j];
  }
  rem.resize(static_cast<std::size_t>(b.degree()));
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

namespace {

using ZPoly = std::vector<Integer>;

// Integer multiple of a with coprime coefficients and positive leading coefficient.
ZPoly primitive_integer(const UPoly& a) {
  Integer den = 1;
  for (const Rat& c : a.coeffs()) den = lcm(den, c.get_den());
  ZPoly z;
  Integer g = 0;
  for (const Rat& c : a.coeffs()) {
    z.push_back(c.get_num() * (den / c.get_den()));
    g = gcd(g, z.back());
  }
  if (z.back() < 0) g = -g;
  for (auto& x : z) x /= g;
  return z;
}

void make_primitive(ZPoly& z) {
  Integer g = 0;
  for (const auto& x : z) g = gcd(g, x);
  if (z.back() < 0) g = -g;
  for (auto& x : z) x /= g;
}

// lc(b)^k * a mod b over Z.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const Integer lead = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& x : a) x *= b.back();
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= lead * b[j];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a))
    if (e & 1) r = mulmod(r, a);
  return r;
}

std::vector<std::uint64_t> reduce_mod(const ZPoly& z) {
  std::vector<std::uint64_t> out;
  for (const auto& x : z) out.push_back(mpz_fdiv_ui(x.get_mpz_t(), kPrime));
  return out;
}

// Degree of gcd modulo the prime; an upper bound for the true degree when the prime does
// not divide either leading coefficient.
int modular_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  auto trim = [](std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = powmod(b.back(), kPrime - 2);
    while (a.size() >= b.size()) {
      const std::uint64_t q = mulmod(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j)
        a[shift + j] = (a[shift + j] + kPrime - mulmod(q, b[j])) % kPrime;
      trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace

UPoly gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.is_zero() ? UPoly() : b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return UPoly::constant(Rat(1));
  ZPoly x = primitive_integer(a), y = primitive_integer(b);
  auto xm = reduce_mod(x), ym = reduce_mod(y);
  if (xm.back() != 0 && ym.back() != 0 && modular_gcd_degree(xm, ym) == 0) return UPoly::constant(Rat(1));
  if (x.size() < y.size()) std::swap(x, y);
  while (true) {
    ZPoly r = pseudo_rem(x, y);
    if (r.empty()) break;
    if (r.size() == 1) return UPoly::constant(Rat(1));
    make_primitive(r);
    x = std::move(y);
    y = std::move(r);
  }
  std::vector<Rat> c;
  for (const auto& v : y) c.emplace_back(v);
  return UPoly(std::move(c)).monic();
}

std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& a) {
  if (a.is_zero()) throw Error(ErrorCode::InvalidArgument, "square-free decomposition of zero");
  std::vector<std::pair<UPoly, int>> out;
  if (a.degree() == 0) return out;
  UPoly f = a.monic();
  UPoly fp = f.derivative();
  UPoly b = gcd(f, fp);
  UPoly c = divmod(f, b).first;
  UPoly d = divmod(fp, b).first - c.derivative();
  for (int i = 1; c.degree() > 0; ++i) {
    UPoly g = gcd(c, d);
    if (g.degree() > 0) out.emplace_back(g.monic(), i);
    c = divmod(c, g).first;
    d = divmod(d, g).first - c.derivative();
  }
  return out;
}

namespace {

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Rat> rational_roots(const UPoly& a) {
  std::vector<Rat> roots;
  if (a.degree() <= 0) return roots;
  // Factor out t^v: 0 is a root iff v > 0.
  int v = a.valuation();
  if (v > 0) roots.emplace_back(0);
  Integer lcm_den = 1;
  for (int i = v; i <= a.degree(); ++i) lcm_den = lcm(lcm_den, a.coeff(i).get_den());
  std::vector<Integer> z;
  for (int i = v; i <= a.degree(); ++i) z.push_back(Integer(a.coeff(i) * lcm_den));
  if (z.size() == 1) return roots;
  const Integer limit("1000000000000");
  if (abs(z.front()) > limit || abs(z.back()) > limit) return roots;
  UPoly reduced(std::vector<Rat>(a.coeffs().begin() + v, a.coeffs().end()));
  for (const Integer& p : divisors(z.front()))
    for (const Integer& q : divisors(z.back()))
      for (int s : {1, -1}) {
        Rat cand(p * s, q);
        cand.canonicalize();
        if (sgn(reduced(cand)) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace ffcount
