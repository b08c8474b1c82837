#pragma once

#include "ffcount/mpoly.hpp"
#include "ffcount/upoly.hpp"

#include <optional>
#include <vector>

namespace ffcount {

// f = sum_{i=1..depth} t^i P_{N_i}(x), P_k = x^k prod_{l=1..k} (x - l), kept in factored form.
struct GrowthSpec {
  std::vector<Integer> N;
  int depth = 0;
  int trunc = 0;  // M; 0 means depth + 1

  bool monotone() const;
};

// Throws InvalidArgument when depth > len(N), depth < 1, M <= depth or some N_i < 1.
void validate(const GrowthSpec& spec);

// P_k(j) exactly.
Integer growth_factor(const Integer& k, const Integer& j);

// f(j) as a polynomial in t.
UPoly growth_value(const GrowthSpec& spec, const Integer& j);

// Expanded f over (x, t). Intended for small N only.
RatPoly build_growth_series(const GrowthSpec& spec);

struct GrowthRow {
  int i = 0;
  Integer j;
  int deg_t = -1;  // degree of f(j), -1 for zero
  bool pass = false;
  std::optional<UPoly> value;
};

struct GrowthLevel {
  int i = 0;
  Integer n_i;
  Integer witnesses;  // #{j in 1..N_i : deg_t f(j) < i}
  bool pass = false;
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  std::vector<GrowthLevel> levels;
  bool monotone = true;
  bool pass = false;
};

// Checks deg_t f(j) < i for every j = 1..N_i, i <= i_max. Values are stored when keep_values.
// Non-monotone N makes the table fail. Throws InvalidArgument when i_max exceeds depth.
GrowthTable verify_growth(const GrowthSpec& spec, int i_max, bool keep_values = true);

struct GapEntry {
  int d = 0;
  std::optional<int> i0;  // 1-based; empty when the criterion fails at the last index
};

struct GapCertificate {
  std::vector<GapEntry> entries;
  bool pass = false;
};

// Least i0(d) with N_i > 2 d N_{i-1} for all i >= max(i0, 2), for d = 1..d_max.
GapCertificate check_support_gaps(const std::vector<Integer>& N, int d_max);

// Exponents of x occurring in f (x is variable 0).
std::vector<int> x_support(const RatPoly& f);

}  // namespace ffcount
