#pragma once

#include "ffcount/mpoly.hpp"

#include <optional>
#include <tuple>
#include <string>
#include <vector>

namespace ffcount {

struct WeierstrassSplit {
  enum class Certificate { ResultantDegree, UserSupplied, BezoutFallback };

  std::vector<std::size_t> z_indices;
  std::vector<std::size_t> w_indices;
  int nu = 1;
  Certificate certificate = Certificate::ResultantDegree;
  // Square-free part of the eliminant has lower w-degree than the eliminant.
  bool degenerate = false;
  // Product of the total w-degrees of the equations.
  long bezout_bound = 0;
  // Eliminant in z, the last w-variable and t, after t-content removal (resultant case).
  std::optional<RatPoly> eliminant;
  // Coordinate change x_i -> x_i + c * x_j applied before splitting, as (i, j, c).
  std::optional<std::tuple<std::size_t, std::size_t, int>> change;
};

std::string to_string(WeierstrassSplit::Certificate c);

// Fiber degree of the projection to (z, t) for equations over coordinates + t.
// Supported: one equation with a single w-variable, or as many equations as w-variables
// with n <= 3 (iterated resultants). Other square systems fall back to the Bezout product;
// anything else needs user_nu. Throws NotFinite, Unsupported.
WeierstrassSplit estimate_e(const std::vector<RatPoly>& f_list, const std::vector<std::size_t>& z_indices,
                            std::optional<int> user_nu = std::nullopt);

// First coordinate partition with m z-variables that passes estimate_e, then the same
// after each change in a fixed list of elementary unimodular substitutions.
WeierstrassSplit find_split(const std::vector<RatPoly>& f_list, int m);

// f with x_i replaced by x_i + c * x_j.
RatPoly apply_change(const RatPoly& f, std::size_t i, std::size_t j, int c);

}  // namespace ffcount
