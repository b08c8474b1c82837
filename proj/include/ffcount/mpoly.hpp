#pragma once

#include "ffcount/errors.hpp"
#include "ffcount/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ffcount {

// Exponent vector, one entry per variable. Negative entries encode field inversion and are
// rejected by every polynomial-only operation.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

namespace detail {
template <class S>
bool scalar_is_zero(const S& s) {
  return is_zero(s);
}
}  // namespace detail

// Sparse multivariate polynomial over Scalar (Rat or RFunT) with named variables.
// Terms are kept in lexicographic exponent order; zero coefficients are never stored.
template <class Scalar>
class MPoly {
 public:
  using Terms = std::map<Monomial, Scalar>;

  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MPoly constant(std::vector<std::string> vars, const Scalar& c) {
    MPoly p(std::move(vars));
    p.add_term(Monomial(p.nvars(), 0), c);
    return p;
  }
  static MPoly variable(std::vector<std::string> vars, std::size_t index) {
    MPoly p(std::move(vars));
    Monomial m(p.nvars(), 0);
    m.at(index) = 1;
    p.add_term(m, Scalar(1));
    return p;
  }
  static MPoly term(std::vector<std::string> vars, Monomial m, const Scalar& c) {
    MPoly p(std::move(vars));
    p.add_term(std::move(m), c);
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  std::optional<std::size_t> var_index(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const Scalar& c) {
    if (m.size() != vars_.size())
      throw Error(ErrorCode::ArityMismatch, "monomial length does not match variable count");
    if (is_zero_scalar(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_scalar(it->second)) terms_.erase(it);
    }
  }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  // Scalar when the polynomial is constant, nullopt otherwise.
  std::optional<Scalar> constant_value() const {
    if (terms_.empty()) return Scalar(0);
    if (terms_.size() == 1 &&
        std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                    [](int e) { return e == 0; }))
      return terms_.begin()->second;
    return std::nullopt;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, ffcount::total_degree(m));
    return d;
  }
  // Total degree restricted to the given variables.
  int total_degree(const std::vector<std::size_t>& subset) const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (std::size_t i : subset) s += m[i];
      d = std::max(d, s);
    }
    return d;
  }
  int degree(std::size_t var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
  }
  bool involves(std::size_t var) const {
    for (const auto& [m, c] : terms_)
      if (m[var] != 0) return true;
    return false;
  }
  bool is_polynomial() const {
    for (const auto& [m, c] : terms_)
      for (int e : m)
        if (e < 0) return false;
    return true;
  }

  // Lex-largest term.
  const std::pair<const Monomial, Scalar>& leading_term() const { return *terms_.rbegin(); }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  MPoly& operator+=(const MPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly& operator*=(const Scalar& s) {
    if (is_zero_scalar(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check_compatible(b);
    MPoly r(a.vars_);
    Monomial m(a.nvars());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  friend MPoly operator*(MPoly a, const Scalar& s) { return a *= s; }
  friend MPoly operator*(const Scalar& s, MPoly a) { return a *= s; }
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  MPoly pow(unsigned e) const {
    MPoly result = constant(vars_, Scalar(1));
    MPoly base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  MPoly derivative(std::size_t var) const {
    MPoly r(vars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d = m;
      d[var] -= 1;
      r.add_term(d, c * Scalar(m[var]));
    }
    return r;
  }

  // Drop every term of total degree >= bound.
  MPoly truncated_total_degree(int bound) const {
    MPoly r(vars_);
    for (const auto& [m, c] : terms_)
      if (ffcount::total_degree(m) < bound) r.terms_.emplace(m, c);
    return r;
  }

  // Coefficients with respect to one variable; keys are its exponents and the values have
  // that exponent cleared (same variable list).
  std::map<int, MPoly> collect(std::size_t var) const {
    std::map<int, MPoly> out;
    for (const auto& [m, c] : terms_) {
      Monomial rest = m;
      rest[var] = 0;
      auto [it, inserted] = out.try_emplace(m[var], MPoly(vars_));
      it->second.terms_.emplace(std::move(rest), c);
    }
    return out;
  }

  // Re-express over a new variable list; mapping[i] is the new index of old variable i.
  MPoly remap(std::vector<std::string> new_vars, const std::vector<std::size_t>& mapping) const {
    MPoly r(std::move(new_vars));
    for (const auto& [m, c] : terms_) {
      Monomial nm(r.nvars(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) nm.at(mapping.at(i)) += m[i];
      r.add_term(nm, c);
    }
    return r;
  }

  // Generic ring evaluation: lift maps coefficients into R, values[i] is substituted for
  // variable i. Requires nonnegative exponents.
  template <class R, class Lift>
  R evaluate(const std::vector<R>& values, Lift lift, const R& one) const {
    if (values.size() != vars_.size())
      throw Error(ErrorCode::ArityMismatch, "evaluation point has wrong length");
    require_polynomial();
    std::vector<std::vector<R>> powers(vars_.size(), std::vector<R>{one});
    auto power = [&](std::size_t i, int e) -> const R& {
      auto& cache = powers[i];
      while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * values[i]);
      return cache[e];
    };
    R acc = lift(Scalar(0));
    for (const auto& [m, c] : terms_) {
      R term = lift(c);
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) term = term * power(i, m[i]);
      acc = acc + term;
    }
    return acc;
  }

  void require_polynomial() const {
    if (!is_polynomial())
      throw Error(ErrorCode::InversionPresent, "negative exponent (field inversion) in input");
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << "(" << scalar_string(it->second) << ")";
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (it->first[i] == 0) continue;
        os << "*" << vars_[i];
        if (it->first[i] != 1) os << "^" << it->first[i];
      }
    }
    return os.str();
  }

 private:
  static bool is_zero_scalar(const Scalar& s) { return detail::scalar_is_zero(s); }
  static std::string scalar_string(const Scalar& s) {
    if constexpr (std::is_same_v<Scalar, Rat>) {
      return s.get_str();
    } else {
      return s.to_string();
    }
  }
  void check_compatible(const MPoly& o) const {
    if (vars_ != o.vars_) throw Error(ErrorCode::ArityMismatch, "polynomials over different variables");
  }

  std::vector<std::string> vars_;
  Terms terms_;
};

using RatPoly = MPoly<Rat>;

}  // namespace ffcount
