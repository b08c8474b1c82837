#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ffcount {

using Integer = mpz_class;
// Canonical (reduced, positive denominator) after every arithmetic operation.
using Rat = mpq_class;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

// Canonical n/d; d must be nonzero.
inline Rat make_rat(const Integer& n, const Integer& d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

// Accepts "n", "n/d", optional leading sign. Rejects zero denominators.
Rat parse_rat(std::string_view text);

// Always "num/den", e.g. "3/1", "-1/2".
std::string format_rat(const Rat& x);

// Small-integer helpers used by the combinatorial kernels.
Integer binomial(long n, long k);

}  // namespace ffcount
