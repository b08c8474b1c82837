#include "ffcount/curve.hpp"

#include "ffcount/errors.hpp"

#include <algorithm>

namespace ffcount {

PolyCurve::PolyCurve(std::vector<TPoly> components, int r) : components_(std::move(components)), r_(r) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "degree bound r must be positive");
  for (const auto& c : components_)
    if (c.degree() >= r)
      throw Error(ErrorCode::InvalidArgument,
                  "curve component " + c.to_string() + " has degree >= r = " + std::to_string(r));
}

int PolyCurve::degree() const {
  int d = -1;
  for (const auto& c : components_) d = std::max(d, c.degree());
  return d;
}

PolyCurve make_curve(std::vector<TPoly> components) {
  int d = -1;
  for (const auto& c : components) d = std::max(d, c.degree());
  return PolyCurve(std::move(components), std::max(1, d + 1));
}

}  // namespace ffcount
