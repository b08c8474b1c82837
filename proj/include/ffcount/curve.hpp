#pragma once

#include "ffcount/upoly.hpp"

#include <vector>

namespace ffcount {

// An element of O_K(r): a polynomial in t of degree < r.
using TPoly = UPoly;

// n-tuple of polynomials in t, each of degree < r.
class PolyCurve {
 public:
  PolyCurve() = default;
  // Throws InvalidArgument when some component has degree >= r.
  PolyCurve(std::vector<TPoly> components, int r);

  int r() const { return r_; }
  std::size_t size() const { return components_.size(); }
  const TPoly& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<TPoly>& components() const { return components_; }
  // Largest component degree (-1 when all components vanish).
  int degree() const;

  friend bool operator==(const PolyCurve& a, const PolyCurve& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<TPoly> components_;
  int r_ = 1;
};

// Smallest r with every component of degree < r (at least 1).
PolyCurve make_curve(std::vector<TPoly> components);

}  // namespace ffcount
