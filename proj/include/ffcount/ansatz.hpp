#pragma once

#include "ffcount/curve.hpp"
#include "ffcount/mpoly.hpp"
#include "ffcount/tseries.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ffcount {

// Polynomial conditions on the coefficients a_{j,l} of a curve x_j = sum_l a_{j,l} t^l.
// Unknowns are named "<coordinate>_<l>" and ordered coordinate-major.
struct CoefficientSystem {
  std::vector<std::string> unknowns;
  std::vector<RatPoly> equations;
  // (index into the input list, power of t) for every equation.
  std::vector<std::pair<std::size_t, int>> origin;
  int r = 1;
  std::size_t n = 0;
};

// Inputs are polynomials over coordinates + t (t last).
CoefficientSystem extract_coefficient_system(const std::vector<RatPoly>& f_list, int r);

// Values of the unknowns for a curve, in CoefficientSystem order.
std::vector<Rat> coefficient_vector(const PolyCurve& p);

struct SystemAnalysis {
  enum class Kind { ZeroDimensional, PositiveDimensional, Inconsistent, Undetermined };
  Kind kind = Kind::Undetermined;
  std::vector<Rat> rational_solutions;  // only for a single unknown
};

// Decides dimension only for single-unknown systems.
SystemAnalysis analyze_system(const CoefficientSystem& sys);

struct LiftStatus {
  enum class Kind { PolynomialWitnessed, NonPolynomialToOrder, Singular };
  Kind kind = Kind::Singular;
  int bound = 0;  // r for PolynomialWitnessed, M for NonPolynomialToOrder

  friend bool operator==(const LiftStatus&, const LiftStatus&) = default;
};

std::string to_string(const LiftStatus& s);

struct LiftResult {
  std::vector<TSeries> curve;  // one series per coordinate, known mod t^M
  LiftStatus status;

  // The witnessed polynomial curve (PolynomialWitnessed only).
  std::optional<PolyCurve> polynomial() const;
};

// Newton lifting of a fiber point of a square system to a series solution mod t^M.
// With r given, the status reports whether coefficients r..M-1 vanish. Without r the
// smallest witnessed degree bound is reported when it is below M.
// Throws NotOnFiber, Singular.
LiftResult hensel_lift(const std::vector<RatPoly>& f_list, const std::vector<Rat>& fiber_point, int m,
                       std::optional<int> r = std::nullopt);

struct FoundCurve {
  PolyCurve curve;
  LiftStatus status;
};

struct RejectedCandidate {
  std::vector<Rat> seed;  // fiber point, or the free coefficients in grid mode
  std::string reason;
};

struct Enumeration {
  std::vector<FoundCurve> curves;
  std::vector<RejectedCandidate> rejected;
};

// Lift mode: every fiber point is lifted to order r + guard.
Enumeration enumerate_lift(const std::vector<RatPoly>& f_list, int r, const std::vector<std::vector<Rat>>& fiber_points,
                           int guard = 8);

// Grid mode. For each free coordinate, coeffs[name][l] lists candidate values of the
// coefficient of t^l (missing l means 0). Every other coordinate must be determined by an
// equation c * y + g = 0 with c a nonzero constant and g free of non-free coordinates.
struct CandidateGrid {
  std::vector<std::string> free;
  std::map<std::string, std::vector<std::vector<Rat>>> coeffs;
};

Enumeration enumerate_grid(const std::vector<RatPoly>& f_list, int r, const CandidateGrid& grid);

}  // namespace ffcount
