#pragma once

#include "ffcount/upoly.hpp"

#include <string>

namespace ffcount {

// Element of Q(t): numerator / denominator with monic denominator and no common factor.
class RFunT {
 public:
  RFunT() : den_(UPoly::constant(Rat(1))) {}
  RFunT(const Rat& c) : num_(UPoly::constant(c)), den_(UPoly::constant(Rat(1))) {}  // NOLINT
  RFunT(const UPoly& p) : num_(p), den_(UPoly::constant(Rat(1))) {}                // NOLINT
  RFunT(UPoly num, UPoly den);

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  // Throws InvalidArgument when tau is a root of the denominator.
  Rat operator()(const Rat& tau) const;

  RFunT& operator+=(const RFunT& o);
  RFunT& operator-=(const RFunT& o);
  RFunT& operator*=(const RFunT& o);
  RFunT& operator/=(const RFunT& o);
  friend RFunT operator+(RFunT a, const RFunT& b) { return a += b; }
  friend RFunT operator-(RFunT a, const RFunT& b) { return a -= b; }
  friend RFunT operator*(RFunT a, const RFunT& b) { return a *= b; }
  friend RFunT operator/(RFunT a, const RFunT& b) { return a /= b; }
  RFunT operator-() const;
  friend bool operator==(const RFunT& a, const RFunT& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  void normalize();
  UPoly num_;
  UPoly den_;
};

inline bool is_zero(const RFunT& x) { return x.is_zero(); }

}  // namespace ffcount
