#include "doctest.h"

#include "ffcount/errors.hpp"
#include "ffcount/eval.hpp"
#include "ffcount/weier.hpp"
#include "test_util.hpp"

using namespace ffcount;
using namespace ffcount::testing;

namespace {

// Degree in w of F(v*t0, w, t0): the number of fiber points with multiplicity over C.
int fiber_count(const RatPoly& f, const Rat& v, const Rat& t0) {
  std::vector<Rat> c;
  for (const auto& [m, x] : f.terms()) {
    Rat term = x;
    for (int k = 0; k < m[0]; ++k) term *= v * t0;
    for (int k = 0; k < m[2]; ++k) term *= t0;
    if (static_cast<int>(c.size()) <= m[1]) c.resize(static_cast<std::size_t>(m[1]) + 1);
    c[static_cast<std::size_t>(m[1])] += term;
  }
  return UPoly(std::move(c)).degree();
}

}  // namespace

TEST_CASE("estimate_e examples") {
  CHECK(estimate_e({P("y^2 - x^3 - t", {"x", "y"})}, {0}).nu == 2);
  CHECK(estimate_e({P("y - x^2", {"x", "y"})}, {0}).nu == 1);
  auto s = estimate_e({P("y^3 + t*y - x", {"x", "y"})}, {0});
  CHECK(s.nu == 3);
  CHECK(s.certificate == WeierstrassSplit::Certificate::ResultantDegree);
  CHECK(s.w_indices == std::vector<std::size_t>{1});
  CHECK_FALSE(s.degenerate);
  CHECK(s.bezout_bound == 3);
}

TEST_CASE("estimate_e failures and fallbacks") {
  CHECK_THROWS_WITH_AS(estimate_e({P("x^2", {"x", "y"})}, {0}), doctest::Contains("NotFinite"), Error);
  auto deg = estimate_e({P("x^2", {"x", "y"})}, {1});
  CHECK(deg.nu == 2);
  CHECK(deg.degenerate);
  CHECK_THROWS_WITH_AS(estimate_e({P("y - x", {"x", "y", "z"})}, {0}), doctest::Contains("Unsupported"), Error);
  auto user = estimate_e({P("y - x", {"x", "y", "z"})}, {0}, 4);
  CHECK(user.nu == 4);
  CHECK(user.certificate == WeierstrassSplit::Certificate::UserSupplied);
  // Flat part only: t * (y^2 - x) has the same nu as y^2 - x.
  auto flat = estimate_e({P("t*y^2 - t*x", {"x", "y"})}, {0});
  CHECK(flat.nu == 2);
  CHECK((*flat.eliminant == P("y^2 - x", {"x", "y"}) || *flat.eliminant == P("x - y^2", {"x", "y"})));
}

TEST_CASE("square systems by iterated resultants") {
  // Two quadrics in (w1, w2) over z: generic fiber of 4 points.
  std::vector<RatPoly> sys{P("u^2 + v - z", {"z", "u", "v"}), P("v^2 - u - t", {"z", "u", "v"})};
  auto s = estimate_e(sys, {0});
  CHECK(s.nu == 4);
  CHECK(s.bezout_bound == 4);
  CHECK(s.nu <= s.bezout_bound);
  // Permuting the equations and scaling them leaves nu unchanged.
  std::vector<RatPoly> perm{sys[1] * Rat(-3), sys[0] * Rat(1, 2)};
  CHECK(estimate_e(perm, {0}).nu == 4);
}

TEST_CASE("find_split examples") {
  auto a = find_split({P("x*y - t", {"x", "y"})}, 1);
  CHECK(a.z_indices == std::vector<std::size_t>{0});
  CHECK(a.nu == 1);
  auto b = find_split({P("x^2", {"x", "y"})}, 1);
  CHECK(b.z_indices == std::vector<std::size_t>{1});
  CHECK(b.degenerate);
  auto c = find_split({P("y - x^2", {"x", "y"})}, 1);
  CHECK(c.z_indices == std::vector<std::size_t>{0});
  CHECK(c.nu == 1);
  CHECK_FALSE(c.change.has_value());
}

TEST_CASE("coordinate changes") {
  CHECK(apply_change(P("x*y", {"x", "y"}), 0, 1, 2) == P("x*y + 2*y^2", {"x", "y"}));
  CHECK_THROWS_WITH_AS(find_split({P("t", {"x", "y"})}, 1), doctest::Contains("Unsupported"), Error);
}

TEST_CASE("fiber counts at random base points match nu") {
  std::mt19937_64 rng(41);
  const std::vector<std::string> vars = ambient_vars({"x", "y"});
  int checked = 0;
  for (int iter = 0; iter < 30; ++iter) {
    // Random hypersurface monic-ish in y.
    const int dy = 1 + static_cast<int>(rng() % 3);
    RatPoly f = RatPoly::term(vars, {0, dy, 0}, Rat(1 + static_cast<int>(rng() % 3)));
    for (int k = 0; k < 4; ++k) {
      Monomial m{static_cast<int>(rng() % 3), static_cast<int>(rng() % static_cast<unsigned>(dy)),
                 static_cast<int>(rng() % 2)};
      f.add_term(m, random_rat(rng));
    }
    WeierstrassSplit s;
    try {
      s = estimate_e({f}, {0});
    } catch (const Error&) {
      continue;
    }
    for (int p = 0; p < 10; ++p) {
      Rat v = random_rat(rng, 9, 4), t0 = make_rat(1, 2 + static_cast<long>(rng() % 7));
      CHECK(fiber_count(f, v, t0) == s.nu);
      ++checked;
    }
    CHECK(s.nu <= s.bezout_bound);
  }
  CHECK(checked >= 200);
}
