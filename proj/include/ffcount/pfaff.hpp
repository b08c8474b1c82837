#pragma once

#include "ffcount/mpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ffcount {

enum class ChainKind { Pfaffian, Noetherian };

std::string to_string(ChainKind k);

// dphi_j/dx_i = P[i][j](x, phi). P entries are polynomials over x_names + phi_names; the
// witnesses phi[j] are polynomials over x_names known modulo total degree trunc.
struct Chain {
  int n = 1;
  int ell = 0;
  int alpha = 1;
  ChainKind kind = ChainKind::Pfaffian;
  std::vector<std::string> x_names;
  std::vector<std::string> phi_names;
  std::vector<std::vector<RatPoly>> P;
  std::vector<RatPoly> phi;
  int trunc = 2;
};

struct ChainMismatch {
  int degree = 0;
  std::size_t i = 0;  // 0-based derivative direction
  std::size_t j = 0;  // 0-based chain function
  Monomial exponent;
  Rat lhs;  // coefficient of dphi_j/dx_i
  Rat rhs;  // coefficient of P_ij(x, phi)
};

struct ChainReport {
  bool identities_hold = false;
  bool triangular = false;
  bool degree_ok = false;  // every deg P_ij <= alpha
  // Pass: identities hold, degrees within alpha, and a Pfaffian tag is backed by triangularity.
  bool pass = false;
  bool pfaffian_eligible = false;
  int compared_below = 0;  // coefficients of total degree < compared_below were checked
  std::optional<ChainMismatch> first_mismatch;
};

// Throws TruncationTooLow when trunc < 2, ShapeMismatch on inconsistent tables.
ChainReport verify_chain(const Chain& chain);

// P_ij involves only phi_1..phi_j.
bool is_triangular(const Chain& chain);

struct Budget {
  std::optional<Integer> value;  // nullopt: unavailable
  bool normalized_constant = false;
  bool heuristic = false;
  long exponent = 0;
  std::string note;
};

// Pfaffian: beta^(n+ell) with the constant normalized to 1. Noetherian over Q(t):
// beta^E with E = exponent or n+ell+2 (heuristic). Noetherian otherwise: unavailable.
Budget multiplicity_budget(long beta, int n, int ell, ChainKind kind, bool t_algebraic,
                           std::optional<long> exponent = std::nullopt);

struct WilkieBudget {
  std::vector<int> per_level_degrees;  // d_k for k = n, n-1, ..., 1
  Integer block_count_bound;
  Integer block_degree_bound;
  int nu = 1;
  Budget multiplicity;
};

// Throws Unsupported when the multiplicity budget is unavailable.
WilkieBudget wilkie_budget(long beta, int r, int n, int ell, ChainKind kind = ChainKind::Pfaffian,
                           bool t_algebraic = true, std::optional<long> exponent = std::nullopt);

}  // namespace ffcount
