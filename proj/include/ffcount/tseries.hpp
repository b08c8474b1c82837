#pragma once

#include "ffcount/upoly.hpp"

#include <vector>

namespace ffcount {

// t-adic order with truncation awareness.
struct Ord {
  enum class Kind { Finite, Infinite, AtLeast };
  Kind kind = Kind::Finite;
  long value = 0;  // order for Finite, known bound M for AtLeast

  static Ord finite(long v) { return {Kind::Finite, v}; }
  static Ord infinite() { return {Kind::Infinite, 0}; }
  static Ord at_least(long m) { return {Kind::AtLeast, m}; }

  bool is_finite() const { return kind == Kind::Finite; }
  friend bool operator==(const Ord&, const Ord&) = default;
};

// Truncated Laurent series sum_{k >= offset} c_k t^k known modulo t^trunc.
// coeffs()[i] is the coefficient of t^(offset + i); there are trunc - offset of them.
// An exact series is a Laurent polynomial: every coefficient at index >= trunc is zero.
class TSeries {
 public:
  TSeries(long offset, std::vector<Rat> coeffs, long trunc, bool exact = false);

  // Polynomial p viewed modulo t^trunc (offset 0). When exact is set, trunc must exceed deg p.
  static TSeries from_poly(const UPoly& p, long trunc, bool exact = false);
  static TSeries zero(long trunc, bool exact = false);

  long offset() const { return offset_; }
  long trunc() const { return trunc_; }
  bool exact() const { return exact_; }
  std::span<const Rat> coeffs() const { return coeffs_; }

  // Coefficient of t^k. Beyond trunc this is zero for exact series and an error otherwise.
  Rat coeff(long k) const;

  // Known part as a polynomial (requires offset >= 0 or vanishing negative part).
  UPoly to_poly() const;

  friend TSeries operator+(const TSeries& a, const TSeries& b);
  friend TSeries operator-(const TSeries& a, const TSeries& b);
  friend TSeries operator*(const TSeries& a, const TSeries& b);
  TSeries operator-() const;

  bool operator==(const TSeries&) const = default;

 private:
  long offset_;
  std::vector<Rat> coeffs_;
  long trunc_;
  bool exact_;
};

Ord ord_t(const TSeries& s);

enum class SeriesOp { Add, Sub, Mul };
TSeries series_arith(const TSeries& a, const TSeries& b, SeriesOp op);

// Inverse of a unit of Q[[t]] modulo t^trunc(a). Throws NotAUnit unless ord_t(a) == 0.
TSeries invert_unit(const TSeries& a);

}  // namespace ffcount
