#include "ffcount/blocks.hpp"
#include "ffcount/errors.hpp"
#include "ffcount/mpoly_algo.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <random>

using namespace ffcount;
using namespace ffcount::testing;

namespace {

const std::vector<std::string> XY{"x", "y"};

RatPoly R(const char* s) { return P(s, XY); }

// p equals c * t_content * prod f^m for a nonzero rational c.
bool reconstructs(const RatPoly& p, const ComponentSplit& s) {
  RatPoly prod = from_upoly(s.t_content, p.vars(), 2);
  for (const auto& f : s.factors) prod = prod * f.poly.pow(static_cast<unsigned>(f.multiplicity));
  if (prod.is_zero()) return false;
  return normalize_leading(prod) == normalize_leading(p);
}

bool same_up_to_scalar(const RatPoly& a, const RatPoly& b) { return normalize_leading(a) == normalize_leading(b); }

bool has_factor(const ComponentSplit& s, const RatPoly& f) {
  for (const auto& g : s.factors)
    if (same_up_to_scalar(g.poly, f)) return true;
  return false;
}

PolyCurve C(std::vector<UPoly> comps, int r) { return PolyCurve(std::move(comps), r); }

// Curves (j, sum_k P_k(j) t^k) with P_k(j) = j^k prod_{l=1..k} (j - l).
std::vector<PolyCurve> growth_curves(int count, int depth) {
  std::vector<PolyCurve> out;
  for (int j = 1; j <= count; ++j) {
    std::vector<Rat> y(static_cast<std::size_t>(depth) + 1);
    for (int k = 1; k <= depth; ++k) {
      Integer v = 1;
      for (int e = 0; e < k; ++e) v *= j;
      for (int l = 1; l <= k; ++l) v *= j - l;
      y[static_cast<std::size_t>(k)] = Rat(v);
    }
    out.push_back(C({UPoly::constant(Rat(j)), UPoly(y)}, depth + 1));
  }
  return out;
}

void check_blocks(const std::vector<Block>& blocks, const std::vector<PolyCurve>& curves) {
  for (const auto& c : curves) {
    bool found = false;
    for (const auto& b : blocks)
      for (const auto& a : b.absorbed) found = found || a == c;
    CHECK(found);
  }
  for (const auto& b : blocks) {
    CHECK(b.dim == static_cast<int>(b.absorbed[0].size()) - static_cast<int>(b.generators.size()));
    for (const auto& g : b.generators)
      for (const auto& a : b.absorbed) CHECK(eval_exact(g, a).is_zero());
  }
}

}  // namespace

TEST_CASE("component_split examples") {
  SUBCASE("two graphs split by a square discriminant") {
    RatPoly p = R("(y - x^2)*(y - t*x)");
    auto s = component_split(p);
    REQUIRE(s.factors.size() == 2);
    CHECK(same_up_to_scalar(s.factors[0].poly, R("y - t*x")));
    CHECK(same_up_to_scalar(s.factors[1].poly, R("y - x^2")));
    for (const auto& f : s.factors) {
      CHECK_FALSE(f.possibly_reducible);
      CHECK(f.multiplicity == 1);
    }
    CHECK(reconstructs(p, s));
  }
  SUBCASE("non-square discriminant is flagged") {
    auto s = component_split(R("y^2 - t*x^2"));
    REQUIRE(s.factors.size() == 1);
    CHECK(s.factors[0].possibly_reducible);
  }
  SUBCASE("repeated factor keeps its multiplicity") {
    auto s = component_split(R("(y - x)^2"));
    REQUIRE(s.factors.size() == 1);
    CHECK(same_up_to_scalar(s.factors[0].poly, R("y - x")));
    CHECK(s.factors[0].multiplicity == 2);
  }
  SUBCASE("flat t-content is removed") {
    RatPoly p = R("t*(x - 1)*(x - 2)");
    auto s = component_split(p);
    CHECK(s.t_content == T({"0", "1"}));
    REQUIRE(s.factors.size() == 2);
    CHECK(has_factor(s, R("x - 2")));
    CHECK(has_factor(s, R("x - 1")));
    CHECK(reconstructs(p, s));
  }
  SUBCASE("moving roots are lifted from t = 0") {
    RatPoly p = R("(x - t)*(x - 1)*(x^2 - 2 - t)");
    auto s = component_split(p);
    REQUIRE(s.factors.size() == 3);
    CHECK(same_up_to_scalar(s.factors[0].poly, R("x - 1")));
    CHECK(same_up_to_scalar(s.factors[1].poly, R("x - t")));
    CHECK(same_up_to_scalar(s.factors[2].poly, R("x^2 - 2 - t")));
    CHECK(s.factors[2].possibly_reducible);
    CHECK(reconstructs(p, s));
  }
  SUBCASE("content in y and x separate") {
    RatPoly p = R("(x^2 + 1)*(y + t)*(x*y - t)");
    auto s = component_split(p);
    REQUIRE(s.factors.size() == 3);
    CHECK(reconstructs(p, s));
    int flagged = 0;
    for (const auto& f : s.factors) flagged += f.possibly_reducible;
    CHECK(flagged == 1);  // x^2 + 1 has no rational root
  }
  SUBCASE("MPoly over Q(t)") {
    MPoly<RFunT> p = from_t_poly(R("(y - x)*(y + x)"), 2);
    CHECK(component_split(p).factors.size() == 2);
  }
  CHECK_THROWS_AS(component_split(P("x + y + z", {"x", "y", "z"})), Error);
  try {
    component_split(P("x + y + z", {"x", "y", "z"}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedArity);
  }
}

TEST_CASE("component_split recovers random products of linear forms") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int count = 1 + static_cast<int>(rng() % 2);
    RatPoly p = R("1");
    std::vector<RatPoly> forms;
    for (int i = 0; i < count; ++i) {
      RatPoly f(ambient_vars(XY));
      do {
        Rat a = random_rat(rng), b = random_rat(rng);
        f = RatPoly::variable(f.vars(), 0) * a + RatPoly::variable(f.vars(), 1) * b +
            from_upoly(random_upoly(rng, 2), f.vars(), 2);
      } while (!f.involves(0) && !f.involves(1));
      forms.push_back(f);
      p = p * f;
    }
    p = p * from_upoly(random_upoly(rng, 2) + T({"1"}) * T({"1", "0", "1"}), p.vars(), 2);
    if (p.is_zero()) continue;
    auto s = component_split(p);
    CHECK(reconstructs(p, s));
    for (const auto& f : s.factors) CHECK_FALSE(f.possibly_reducible);
    // Each input form is, up to scalar and t-content, a power of one reported factor.
    for (const auto& form : forms) {
      UPoly c = t_content(form, 2);
      RatPoly prim = divide_by_t_poly(form, c, 2);
      bool hit = false;
      for (const auto& f : s.factors) hit = hit || same_up_to_scalar(f.poly, prim);
      CHECK(hit);
    }
  }
}

TEST_CASE("three lines are split or flagged, never lost") {
  RatPoly p = R("(y - x)*(y + x - t)*(2*y - 3*x + 1)");
  auto s = component_split(p);
  CHECK(reconstructs(p, s));
  for (const auto& f : s.factors)
    if (f.poly.total_degree({0, 1}) > 1) CHECK(f.possibly_reducible);
}

TEST_CASE("component_split reconstructs arbitrary products") {
  std::mt19937_64 rng(12);
  auto vars = ambient_vars(XY);
  for (int trial = 0; trial < 40; ++trial) {
    RatPoly p = R("1");
    for (int i = 0; i < 2; ++i) {
      RatPoly f(vars);
      for (int a = 0; a <= 2; ++a)
        for (int b = 0; a + b <= 2; ++b)
          if (rng() % 2) f.add_term({a, b, static_cast<int>(rng() % 2)}, random_rat(rng));
      if (f.is_zero()) f = R("x");
      p = p * f;
    }
    if (!p.involves(0) && !p.involves(1)) continue;
    CHECK(reconstructs(p, component_split(p)));
  }
}

TEST_CASE("cut_step on the plane") {
  std::vector<PolyCurve> curves;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 2; ++b) {
      UPoly x = T({std::to_string(a).c_str(), std::to_string(b).c_str()});
      curves.push_back(C({x, x * x + T({"0", "1"}) * x}, 3));
    }
  auto cut = cut_step(curves, XY, {}, 2, 3, 1, 7);
  CHECK(cut.g == XY);
  CHECK(cut.d_used >= cut.d_selected);
  CHECK(same_up_to_scalar(cut.hypersurface, R("x^2 + t*x - y")));

  SUBCASE("dominant coordinate on a plane curve") {
    auto on_line = cut_step(curves, XY, {R("x^2 + t*x - y")}, 1, 3, 1, 7);
    CHECK(on_line.g == std::vector<std::string>{"x"});
    for (const auto& c : curves) CHECK(eval_exact(on_line.hypersurface, c).is_zero());
    CHECK_FALSE(on_line.hypersurface.involves(1));
  }
  SUBCASE("vertical line projects to y") {
    std::vector<PolyCurve> vert{C({T({"1"}), T({"0", "1"})}, 2), C({T({"1"}), T({"2"})}, 2)};
    auto c = cut_step(vert, XY, {R("x - 1")}, 1, 2, 1, 3);
    CHECK(c.g == std::vector<std::string>{"y"});
  }
  SUBCASE("point-like generator is not dominant") {
    try {
      cut_step(curves, XY, {R("t")}, 1, 3, 1, 7);
      FAIL("expected DominanceNotCertified");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DominanceNotCertified);
    }
  }
  CHECK_THROWS_AS(cut_step({}, XY, {}, 2, 3, 1, 7), Error);
}

TEST_CASE("decompose the algebraic graph example") {
  std::vector<PolyCurve> curves;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 2; ++b) {
      UPoly x = T({std::to_string(a).c_str(), std::to_string(b).c_str()});
      curves.push_back(C({x, x * x + T({"0", "1"}) * x}, 3));
    }
  DecomposeOptions opt;
  opt.nu = 1;
  auto blocks = decompose({R("y - x^2 - t*x")}, curves, 3, opt);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].dim == 1);
  CHECK(blocks[0].degree == 2);
  CHECK(blocks[0].absorbed.size() == 6);
  REQUIRE(blocks[0].provenance.size() == 1);
  CHECK(blocks[0].provenance[0].dim == 2);
  check_blocks(blocks, curves);

  SUBCASE("X = A^2 is a block at once") {
    auto whole = decompose({R("0")}, curves, 3, opt);
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].dim == 2);
    CHECK(whole[0].provenance.empty());
  }
}

TEST_CASE("decompose the growth example into points") {
  auto curves = growth_curves(4, 2);
  DecomposeOptions opt;
  opt.nu = 4;
  opt.algebraic = false;
  auto blocks = decompose({}, curves, 3, opt);
  REQUIRE(blocks.size() == 4);
  for (const auto& b : blocks) {
    CHECK(b.dim == 0);
    CHECK(b.absorbed.size() == 1);
    REQUIRE(b.provenance.size() == 2);
    CHECK(b.provenance[1].g == std::vector<std::string>{"x"});
    CHECK(same_up_to_scalar(b.provenance[1].hypersurface, R("(x-1)*(x-2)*(x-3)*(x-4)")));
  }
  // The root cut is linear in y.
  CHECK(blocks[0].provenance[0].hypersurface.degree(1) == 1);
  check_blocks(blocks, curves);
}

TEST_CASE("decompose covers random curve sets") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<PolyCurve> curves;
    const int count = 1 + static_cast<int>(rng() % 5);
    const bool on_graph = rng() % 2;
    for (int i = 0; i < count; ++i) {
      UPoly x = random_upoly(rng, 1);
      UPoly y = on_graph ? x * x - T({"0", "1"}) : random_upoly(rng, 2);
      curves.push_back(C({x, y.truncated(3)}, 3));
    }
    DecomposeOptions opt;
    opt.nu = 1 + static_cast<int>(rng() % 2);
    opt.algebraic = false;
    opt.seed = rng();
    auto blocks = decompose({}, curves, 3, opt);
    check_blocks(blocks, curves);
    auto again = decompose({}, curves, 3, opt);
    REQUIRE(again.size() == blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) CHECK(again[i].generators == blocks[i].generators);
  }
}

TEST_CASE("decompose on the line and arity limits") {
  std::vector<PolyCurve> pts{C({T({"1"})}, 1), C({T({"2"})}, 1), C({T({"0", "1"})}, 2)};
  DecomposeOptions opt;
  opt.algebraic = false;
  auto blocks = decompose({}, pts, 2, opt);
  CHECK(blocks.size() == 3);
  check_blocks(blocks, pts);

  std::vector<PolyCurve> three{C({T({"1"}), T({"1"}), T({"1"})}, 1)};
  try {
    decompose({}, three, 1, opt);
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
}
