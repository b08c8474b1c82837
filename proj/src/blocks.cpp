#include "ffcount/blocks.hpp"

#include "ffcount/ansatz.hpp"
#include "ffcount/errors.hpp"
#include "ffcount/eval.hpp"
#include "ffcount/interp.hpp"
#include "ffcount/mpoly_algo.hpp"
#include "ffcount/parallel.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ffcount {

namespace {

constexpr std::size_t kT = 2;  // t index in the (x, y, t) layout

using Piece = std::pair<RatPoly, bool>;  // factor, possibly reducible

RatPoly primitive_in(const RatPoly& a, std::size_t var) { return *divide_exact(a, content(a, var)); }

RatPoly strip_t_content(const RatPoly& a) {
  UPoly c = t_content(a, kT);
  return c.degree() > 0 ? divide_by_t_poly(a, c, kT) : a;
}

bool involves_coords(const RatPoly& a) { return a.involves(0) || a.involves(1); }

// Factors a s linear in var from a perfect-square discriminant.
std::optional<std::pair<RatPoly, RatPoly>> split_quadratic(const RatPoly& s, std::size_t var) {
  auto c = s.collect(var);
  RatPoly zero(s.vars());
  const RatPoly a = c.count(2) ? c.at(2) : zero;
  const RatPoly b = c.count(1) ? c.at(1) : zero;
  const RatPoly cc = c.count(0) ? c.at(0) : zero;
  RatPoly disc = b * b - Rat(4) * a * cc;
  auto root = sqrt_exact(disc);
  if (!root) return std::nullopt;
  Monomial m(s.nvars(), 0);
  m[var] = 1;
  RatPoly lin = RatPoly::term(s.vars(), m, Rat(2)) * a + b - *root;
  RatPoly f1 = strip_t_content(primitive_in(lin, var));
  auto f2 = divide_exact(s, f1);
  if (!f2) return std::nullopt;
  return std::pair{f1, *f2};
}

// s involves var and possibly t only, is square-free and has no t-content.
std::vector<Piece> split_univariate(RatPoly s, std::size_t var) {
  std::vector<Piece> out;
  auto lc = s.collect(var).rbegin()->second;
  if (s.degree(var) > 1 && lc.constant_value() && s.involves(kT)) {
    const int deg_t = s.degree(kT);
    const std::vector<std::string> two{s.vars()[var], s.vars()[kT]};
    std::vector<std::size_t> map(3, 0);
    map[kT] = 1;
    RatPoly s2 = s.remap(two, map);
    std::vector<Rat> fiber;
    for (int e = 0; e <= s.degree(var); ++e) {
      Monomial m(3, 0);
      m[var] = e;
      fiber.push_back(s.coefficient(m));
    }
    for (const Rat& rho : rational_roots(UPoly(fiber))) {
      if (s.degree(var) <= 1) break;
      try {
        LiftResult lift = hensel_lift({s2}, {rho}, deg_t + 9, deg_t + 1);
        auto poly = lift.polynomial();
        if (!poly) continue;
        RatPoly h = RatPoly::variable(s.vars(), var) - from_upoly((*poly)[0], s.vars(), kT);
        if (auto q = divide_exact(s, h)) {
          out.emplace_back(h, false);
          s = *q;
        }
      } catch (const Error&) {
      }
    }
  } else if (s.degree(var) > 1 && lc.constant_value()) {
    std::vector<Rat> coeffs;
    for (int e = 0; e <= s.degree(var); ++e) {
      Monomial m(3, 0);
      m[var] = e;
      coeffs.push_back(s.coefficient(m));
    }
    for (const Rat& rho : rational_roots(UPoly(coeffs))) {
      RatPoly h = RatPoly::variable(s.vars(), var) - RatPoly::constant(s.vars(), rho);
      if (auto q = divide_exact(s, h)) {
        out.emplace_back(h, false);
        s = *q;
      }
    }
  }
  const int deg = s.degree(var);
  if (deg <= 0) return out;
  if (deg == 1) {
    out.emplace_back(s, false);
  } else if (deg == 2) {
    if (auto pq = split_quadratic(s, var)) {
      out.emplace_back(pq->first, false);
      out.emplace_back(pq->second, false);
    } else {
      out.emplace_back(s, true);
    }
  } else {
    out.emplace_back(s, true);
  }
  return out;
}

// s involves both coordinates, is primitive in each and square-free.
std::vector<Piece> split_bivariate(const RatPoly& s) {
  for (std::size_t var : {std::size_t{1}, std::size_t{0}}) {
    if (s.degree(var) == 1) return {{s, false}};
  }
  for (std::size_t var : {std::size_t{1}, std::size_t{0}}) {
    if (s.degree(var) != 2) continue;
    if (auto pq = split_quadratic(s, var)) return {{pq->first, false}, {pq->second, false}};
  }
  return {{s, true}};
}

void add_pieces(std::vector<SplitFactor>& out, std::vector<Piece> pieces, int mult) {
  for (auto& [f, flag] : pieces) out.push_back({normalize_leading(f), mult, flag});
}

// Square-free decomposition of a factor that involves only var (and t) or both coordinates.
void split_part(std::vector<SplitFactor>& out, const RatPoly& part) {
  if (!involves_coords(part)) return;
  const bool both = part.involves(0) && part.involves(1);
  const std::size_t var = part.involves(1) ? 1 : 0;
  for (auto& [s, mult] : squarefree_in(part, var)) {
    RatPoly f = strip_t_content(s);
    add_pieces(out, both ? split_bivariate(f) : split_univariate(f, var), mult);
  }
}

}  // namespace

ComponentSplit component_split(const RatPoly& p) {
  if (p.nvars() != 3)
    throw Error(ErrorCode::UnsupportedArity, "component splitting needs exactly two coordinates");
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "cannot split the zero polynomial");
  p.require_polynomial();
  ComponentSplit out;
  out.t_content = t_content(p, kT);
  RatPoly q = divide_by_t_poly(p, out.t_content, kT);
  RatPoly cy = content(q, 1);
  split_part(out.factors, cy);
  RatPoly rest = *divide_exact(q, cy);
  RatPoly cx = content(rest, 0);
  split_part(out.factors, cx);
  split_part(out.factors, *divide_exact(rest, cx));
  std::sort(out.factors.begin(), out.factors.end(), [](const SplitFactor& a, const SplitFactor& b) {
    const int da = a.poly.total_degree({0, 1}), db = b.poly.total_degree({0, 1});
    if (da != db) return da < db;
    return a.poly.to_string() < b.poly.to_string();
  });
  return out;
}

ComponentSplit component_split(const MPoly<RFunT>& p) {
  if (p.nvars() != 2)
    throw Error(ErrorCode::UnsupportedArity, "component splitting needs exactly two coordinates");
  return component_split(to_t_poly(p));
}

namespace {

// Splitting for one coordinate: embed as (x, y, t) with a dummy y.
ComponentSplit split_any(const RatPoly& p, std::size_t n) {
  if (n == 2) return component_split(p);
  std::vector<std::string> vars{p.vars()[0], p.vars()[0] + "'", p.vars()[1]};
  ComponentSplit s = component_split(p.remap(vars, {0, 2}));
  for (auto& f : s.factors) f.poly = f.poly.remap(p.vars(), {0, 0, 1});
  return s;
}

Rat random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-97, 97);
  std::uniform_int_distribution<int> den(1, 13);
  return make_rat(num(rng), den(rng));
}

// Q(c = v, t = t0) as a polynomial in the other coordinate is nonconstant for some
// sampled (v, t0). Nonconstancy at one point implies it on a dense open set.
bool dominance_certified(const RatPoly& q, std::size_t c, std::mt19937_64& rng, int samples) {
  const std::size_t other = 1 - c;
  for (int s = 0; s < samples; ++s) {
    const Rat v = random_point(rng), t0 = random_point(rng);
    std::map<int, Rat> by_power;
    for (const auto& [m, coef] : q.terms()) {
      Rat x = coef;
      for (int e = 0; e < m[c]; ++e) x *= v;
      for (int e = 0; e < m[kT]; ++e) x *= t0;
      by_power[m[other]] += x;
    }
    for (const auto& [e, x] : by_power)
      if (e > 0 && sgn(x) != 0) return true;
  }
  return false;
}

}  // namespace

CutResult cut_step(const std::vector<PolyCurve>& curves, const std::vector<std::string>& coords,
                   const std::vector<RatPoly>& w_generators, int k, int r, int nu, std::uint64_t seed) {
  if (curves.empty()) throw Error(ErrorCode::EmptyInput, "no curves to cut");
  const std::size_t n = coords.size();
  const auto vars = ambient_vars(coords);
  CutResult out;
  std::vector<std::size_t> chosen;
  if (w_generators.empty()) {
    for (std::size_t i = 0; i < n; ++i) chosen.push_back(i);
    out.dominance = "identity projection";
  } else {
    if (w_generators.size() != 1 || n != 2 || k != 1)
      throw Error(ErrorCode::Unsupported, "cuts are implemented for A^n and plane curves only");
    std::mt19937_64 rng(seed);
    const RatPoly& q = w_generators[0];
    for (std::size_t c = 0; c < 2 && chosen.empty(); ++c) {
      if (dominance_certified(q, c, rng, 10)) {
        chosen.push_back(c);
        std::ostringstream os;
        os << "projection to " << coords[c] << " certified at a sampled point (seed " << seed << ")";
        out.dominance = os.str();
      }
    }
    if (chosen.empty())
      throw Error(ErrorCode::DominanceNotCertified, "no coordinate projection of " + q.to_string() + " is dominant");
  }
  std::vector<RatPoly> g;
  std::vector<std::string> names;
  for (std::size_t c : chosen) {
    g.push_back(RatPoly::variable(vars, c));
    names.push_back(coords[c]);
  }
  out.g = names;
  out.d_selected = select_degree(static_cast<int>(n), k - 1, nu, r);
  const int d_cap = std::max(out.d_selected, static_cast<int>(curves.size())) + 1;
  std::optional<MPoly<RFunT>> p;
  for (int d = out.d_selected; d <= d_cap && !p; ++d) {
    try {
      p = select_hypersurface(curves, g, d, names);
      out.d_used = d;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoKernel) throw;
    }
  }
  if (!p) throw Error(ErrorCode::NoKernel, "no hypersurface through the curves");
  RatPoly pt = to_t_poly(*p);
  std::vector<std::size_t> mapping = chosen;
  mapping.push_back(n);
  out.hypersurface = pt.remap(vars, mapping);
  for (const RatPoly& w : w_generators)
    if (divide_exact(out.hypersurface, w))
      throw Error(ErrorCode::InvalidArgument, "selected hypersurface contains W");
  return out;
}

namespace {

struct Context {
  std::vector<RatPoly> f_list;
  std::vector<std::string> coords;
  std::vector<std::string> vars;
  int r = 1;
  DecomposeOptions options;
};

struct Node {
  std::vector<RatPoly> generators;
  int dim = 0;
  std::vector<PolyCurve> curves;
  std::vector<CutStep> path;
};

bool contains_x(const Context& ctx, const Node& node) {
  if (!ctx.options.algebraic) return false;
  for (const RatPoly& f : ctx.f_list) {
    if (node.generators.empty()) {
      if (!f.is_zero()) return false;
    } else if (!divide_exact(f, node.generators[0])) {
      return false;
    }
  }
  return true;
}

std::vector<Block> solve(const Context& ctx, Node node) {
  if (node.curves.empty()) return {};
  const std::size_t n = ctx.coords.size();
  if (node.dim == 0) {
    std::vector<Block> out;
    for (const PolyCurve& c : node.curves) {
      Block b;
      b.dim = 0;
      for (std::size_t i = 0; i < n; ++i)
        b.generators.push_back(RatPoly::variable(ctx.vars, i) - from_upoly(c[i], ctx.vars, n));
      b.absorbed = {c};
      b.provenance = node.path;
      out.push_back(std::move(b));
    }
    return out;
  }
  if (contains_x(ctx, node)) {
    Block b;
    b.dim = node.dim;
    b.generators = node.generators;
    std::vector<std::size_t> coord_idx;
    for (std::size_t i = 0; i < n; ++i) coord_idx.push_back(i);
    b.degree = node.generators.empty() ? 1 : node.generators[0].total_degree(coord_idx);
    b.absorbed = node.curves;
    b.provenance = node.path;
    return {b};
  }
  CutResult cut = cut_step(node.curves, ctx.coords, node.generators, node.dim, ctx.r, ctx.options.nu,
                           ctx.options.seed + node.path.size());
  ComponentSplit split = split_any(cut.hypersurface, n);
  std::vector<Node> children;
  std::vector<bool> covered(node.curves.size(), false);
  for (std::size_t j = 0; j < split.factors.size(); ++j) {
    const SplitFactor& f = split.factors[j];
    Node child;
    child.generators = node.generators;
    child.generators.push_back(f.poly);
    child.dim = node.dim - 1;
    for (std::size_t i = 0; i < node.curves.size(); ++i)
      if (eval_exact(f.poly, node.curves[i]).is_zero()) {
        child.curves.push_back(node.curves[i]);
        covered[i] = true;
      }
    CutStep step;
    step.dim = node.dim;
    step.g = cut.g;
    step.d_selected = cut.d_selected;
    step.d_used = cut.d_used;
    step.hypersurface = cut.hypersurface;
    step.dominance = cut.dominance;
    step.factor_index = j;
    step.factor_count = split.factors.size();
    step.possibly_reducible = f.possibly_reducible;
    step.t_content = split.t_content;
    child.path = node.path;
    child.path.push_back(std::move(step));
    children.push_back(std::move(child));
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end())
    throw Error(ErrorCode::InvalidArgument, "a curve escaped every component of the cut");
  auto parts = parallel_map(children.size(), [&](std::size_t j) { return solve(ctx, children[j]); });
  std::vector<Block> out;
  for (auto& p : parts)
    for (auto& b : p) out.push_back(std::move(b));
  return out;
}

}  // namespace

std::vector<Block> decompose(const std::vector<RatPoly>& f_list, const std::vector<PolyCurve>& curves, int r,
                             const DecomposeOptions& options) {
  if (curves.empty()) return {};
  Context ctx;
  ctx.options = options;
  ctx.r = r;
  ctx.f_list = f_list;
  const std::size_t n = curves[0].size();
  if (!options.coords.empty()) {
    ctx.coords = options.coords;
  } else if (!f_list.empty()) {
    ctx.coords.assign(f_list[0].vars().begin(), f_list[0].vars().end() - 1);
  } else {
    ctx.coords = n == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
  }
  if (ctx.coords.size() > 2 || n > 2) throw Error(ErrorCode::Unsupported, "decomposition is implemented for n <= 2");
  if (ctx.coords.size() != n) throw Error(ErrorCode::ArityMismatch, "curve length does not match coordinates");
  ctx.vars = ambient_vars(ctx.coords);
  for (const RatPoly& f : f_list)
    if (f.vars() != ctx.vars) throw Error(ErrorCode::ArityMismatch, "f_list variables do not match coordinates");
  Node root;
  root.dim = static_cast<int>(n);
  for (const PolyCurve& c : curves) {
    if (c.size() != n) throw Error(ErrorCode::ArityMismatch, "curves have different lengths");
    if (c.r() > r) throw Error(ErrorCode::InvalidArgument, "curve degree exceeds r");
    if (std::find(root.curves.begin(), root.curves.end(), c) == root.curves.end()) root.curves.push_back(c);
  }
  return solve(ctx, std::move(root));
}

}  // namespace ffcount
