#pragma once

#include "ffcount/rational.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ffcount {

// Dense polynomial in t over Q. Trailing zero coefficients are never stored,
// so the zero polynomial has an empty coefficient list and degree -1.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs);
  UPoly(std::initializer_list<Rat> coeffs) : UPoly(std::vector<Rat>(coeffs)) {}

  static UPoly constant(const Rat& c);
  static UPoly monomial(const Rat& c, int power);
  static UPoly t() { return monomial(Rat(1), 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  // Index of the lowest nonzero coefficient; -1 for the zero polynomial.
  int valuation() const;

  Rat coeff(int k) const;
  std::span<const Rat> coeffs() const { return coeffs_; }
  const Rat& leading() const { return coeffs_.back(); }

  Rat operator()(const Rat& x) const;
  UPoly derivative() const;
  UPoly truncated(int n) const;
  UPoly monic() const;
  UPoly shifted(int k) const;  // multiply by t^k, k >= 0

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o);
  UPoly& operator*=(const Rat& c);

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(UPoly a, const UPoly& b) { return a *= b; }
  friend UPoly operator*(UPoly a, const Rat& c) { return a *= c; }
  friend UPoly operator*(const Rat& c, UPoly a) { return a *= c; }
  UPoly operator-() const;

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(std::string_view var = "t") const;

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

UPoly mul_truncated(const UPoly& a, const UPoly& b, int n);

// Euclidean division; throws InvalidArgument on division by zero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);

// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);

// Yun decomposition of a nonzero polynomial: pairs (s_i, i) with a = c * prod s_i^i,
// the s_i monic, square-free and pairwise coprime. Constant factors are omitted.
std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& a);

// Rational roots by the rational root test; empty when coefficients are too large to
// enumerate divisors (|value| > 10^12 after clearing denominators).
std::vector<Rat> rational_roots(const UPoly& a);

}  // namespace ffcount
