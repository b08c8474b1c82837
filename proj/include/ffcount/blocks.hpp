#pragma once

#include "ffcount/curve.hpp"
#include "ffcount/mpoly.hpp"
#include "ffcount/rfunt.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ffcount {

struct SplitFactor {
  RatPoly poly;  // over the two coordinates and t, primitive over Q[t]
  int multiplicity = 1;
  bool possibly_reducible = false;
};

struct ComponentSplit {
  UPoly t_content;  // removed before splitting (flat part only)
  std::vector<SplitFactor> factors;
};

// Square-free coprime splitting of a plane curve over Q(t). Linear primitive factors and
// factors found by root lifting or perfect-square discriminants are certified; the rest
// are flagged possibly reducible. Throws UnsupportedArity unless there are two variables.
ComponentSplit component_split(const MPoly<RFunT>& p);
// Same for a polynomial over (x, y, t) with t last.
ComponentSplit component_split(const RatPoly& p);

struct CutStep {
  int dim = 0;  // dimension of the node that was cut
  std::vector<std::string> g;
  int d_selected = 0;
  int d_used = 0;  // > d_selected when no kernel existed at the selected degree
  RatPoly hypersurface;
  std::string dominance;
  std::size_t factor_index = 0;
  std::size_t factor_count = 0;
  bool possibly_reducible = false;
  UPoly t_content;
};

struct Block {
  std::vector<RatPoly> generators;  // over coordinates and t
  int dim = 0;
  int degree = 1;
  std::vector<PolyCurve> absorbed;
  std::vector<CutStep> provenance;
};

struct CutResult {
  RatPoly hypersurface;  // over coordinates and t
  std::vector<std::string> g;
  int d_selected = 0;
  int d_used = 0;
  std::string dominance;
};

// Hypersurface through every curve, not containing W. W is A^n (no generators) or a plane
// curve given by one generator; coords names the coordinates. Throws EmptyInput,
// DominanceNotCertified.
CutResult cut_step(const std::vector<PolyCurve>& curves, const std::vector<std::string>& coords,
                   const std::vector<RatPoly>& w_generators, int k, int r, int nu, std::uint64_t seed);

struct DecomposeOptions {
  int nu = 1;
  bool algebraic = true;  // X given by f_list exactly; enables the X' = W' test
  std::uint64_t seed = 0;
  std::vector<std::string> coords;  // taken from f_list when empty, else x, y
};

// Block decomposition for n <= 2 covering every given curve. Throws Unsupported for n > 2.
std::vector<Block> decompose(const std::vector<RatPoly>& f_list, const std::vector<PolyCurve>& curves, int r,
                             const DecomposeOptions& options);

}  // namespace ffcount
