#include "ffcount/cli.hpp"

#include "ffcount/ansatz.hpp"
#include "ffcount/blocks.hpp"
#include "ffcount/errors.hpp"
#include "ffcount/eval.hpp"
#include "ffcount/growth.hpp"
#include "ffcount/interp.hpp"
#include "ffcount/mpoly_algo.hpp"
#include "ffcount/pfaff.hpp"
#include "ffcount/weier.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

namespace ffcount {

namespace {

const char* const kVersion = "1.0.0";

struct TaskOutput {
  Json result = Json::object();
  bool pass = true;
  std::string csv;
};

using TaskFn = std::function<TaskOutput(const Json&, const Flags&)>;

constexpr long kMaxSmall = 1 << 20;

std::vector<std::string> coords_of(const Json& p) { return names_from_json(p["vars"], "/payload/vars"); }

int curve_r(const Json& p) {
  return p.contains("r") ? static_cast<int>(int_from_json(p["r"], "/payload/r", 1, kMaxSmall)) : 0;
}

// Curves with an explicit r, or each with its own minimal r when r is 0.
std::vector<PolyCurve> read_curves(const Json& j, std::size_t n, int r, const std::string& ptr) {
  if (r > 0) return curves_from_json(j, n, r, ptr);
  if (!j.is_array()) throw InputError(ptr, "expected a list of curves");
  std::vector<PolyCurve> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string cp = child(ptr, i);
    if (!j[i].is_array() || j[i].size() != n)
      throw InputError(cp, "expected a curve with " + std::to_string(n) + " components");
    std::vector<UPoly> comps;
    for (std::size_t k = 0; k < n; ++k) comps.push_back(upoly_from_json(j[i][k], child(cp, k)));
    out.push_back(make_curve(std::move(comps)));
  }
  return out;
}

Json poly_json(const RatPoly& p) { return Json{{"terms", to_json(p)}, {"text", p.to_string()}, {"vars", p.vars()}}; }

Json polys_json(const std::vector<RatPoly>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(poly_json(p));
  return out;
}

Json curves_json(const std::vector<PolyCurve>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

Json opt_json(const std::optional<long>& v) { return v ? Json(*v) : Json(nullptr); }

Json integer_json(const Integer& v) { return v.get_str(); }

std::string join_degrees(const PolyCurve& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ";" : "") + std::to_string(c[i].degree());
  return s;
}

const char* kind_name(LiftStatus::Kind k) {
  switch (k) {
    case LiftStatus::Kind::PolynomialWitnessed:
      return "PolynomialWitnessed";
    case LiftStatus::Kind::NonPolynomialToOrder:
      return "NonPolynomialToOrder";
    case LiftStatus::Kind::Singular:
      return "Singular";
  }
  return "Singular";
}

Json status_json(const LiftStatus& s) {
  return Json{{"kind", kind_name(s.kind)}, {"bound", s.bound}, {"text", to_string(s)}};
}

ChainKind chain_kind_from_json(const Json& j, const std::string& ptr) {
  const std::string s = string_from_json(j, ptr);
  if (s == "Pfaffian" || s == "pfaffian") return ChainKind::Pfaffian;
  if (s == "Noetherian" || s == "noetherian") return ChainKind::Noetherian;
  throw InputError(ptr, "kind must be Pfaffian or Noetherian");
}

Json budget_json(const Budget& b) {
  return Json{{"value", b.value ? integer_json(*b.value) : Json(nullptr)},
              {"normalized_constant", b.normalized_constant},
              {"heuristic", b.heuristic},
              {"exponent", b.exponent},
              {"note", b.note}};
}

Json wilkie_json(const WilkieBudget& w) {
  return Json{{"per_level_degrees", w.per_level_degrees},
              {"block_count_bound", integer_json(w.block_count_bound)},
              {"block_degree_bound", integer_json(w.block_degree_bound)},
              {"nu", w.nu},
              {"multiplicity", budget_json(w.multiplicity)}};
}

// ---- extract

TaskOutput task_extract(const Json& p, const Flags&) {
  check_keys(p, "/payload", {"vars", "equations", "r"});
  const auto vars = ambient_vars(coords_of(p));
  const auto f = polys_from_json(p["equations"], vars, "/payload/equations");
  const int r = static_cast<int>(int_from_json(p["r"], "/payload/r", 1, 64));
  auto sys = extract_coefficient_system(f, r);
  TaskOutput out;
  Json eqs = Json::array();
  for (std::size_t i = 0; i < sys.equations.size(); ++i)
    eqs.push_back(Json{{"poly", poly_json(sys.equations[i])},
                       {"origin", Json{{"equation", sys.origin[i].first}, {"t_power", sys.origin[i].second}}}});
  auto analysis = analyze_system(sys);
  static const char* kinds[] = {"ZeroDimensional", "PositiveDimensional", "Inconsistent", "Undetermined"};
  Json sols = Json::array();
  for (const Rat& s : analysis.rational_solutions) sols.push_back(to_json(s));
  out.result = Json{{"unknowns", sys.unknowns},
                    {"equations", eqs},
                    {"equation_count", sys.equations.size()},
                    {"n", sys.n},
                    {"r", sys.r},
                    {"analysis", Json{{"kind", kinds[static_cast<int>(analysis.kind)]}, {"rational_solutions", sols}}}};
  return out;
}

// ---- lift

TaskOutput task_lift(const Json& p, const Flags& flags) {
  check_keys(p, "/payload", {"vars", "equations", "fiber_point"}, {"M", "r"});
  const auto coords = coords_of(p);
  const auto vars = ambient_vars(coords);
  const auto f = polys_from_json(p["equations"], vars, "/payload/equations");
  if (!p["fiber_point"].is_array() || p["fiber_point"].size() != coords.size())
    throw InputError("/payload/fiber_point", "expected one value per coordinate");
  std::vector<Rat> point;
  for (std::size_t i = 0; i < coords.size(); ++i)
    point.push_back(rat_from_json(p["fiber_point"][i], child("/payload/fiber_point", i)));
  std::optional<int> r;
  if (p.contains("r")) r = curve_r(p);
  int m = flags.trunc.value_or(0);
  if (!flags.trunc) {
    if (!p.contains("M")) throw InputError("/payload/M", "missing M (or pass --trunc)");
    m = static_cast<int>(int_from_json(p["M"], "/payload/M", 1, 4096));
  }
  LiftResult lift = hensel_lift(f, point, m, r);
  Json series = Json::array();
  for (const auto& s : lift.curve) series.push_back(to_json(s));
  auto poly = lift.polynomial();
  TaskOutput out;
  out.result = Json{{"M", m},
                    {"status", status_json(lift.status)},
                    {"series", series},
                    {"polynomial", poly ? to_json(*poly) : Json(nullptr)}};
  return out;
}

// ---- enumerate

CandidateGrid grid_from_json(const Json& g, const std::vector<std::string>& coords, const std::string& ptr) {
  check_keys(g, ptr, {"free", "coeffs"});
  CandidateGrid grid;
  grid.free = names_from_json(g["free"], child(ptr, "free"));
  for (const auto& name : grid.free)
    if (std::find(coords.begin(), coords.end(), name) == coords.end())
      throw InputError(child(ptr, "free"), "unknown coordinate '" + name + "'");
  const Json& c = g["coeffs"];
  const std::string cp = child(ptr, "coeffs");
  if (!c.is_object()) throw InputError(cp, "expected an object keyed by coordinate");
  for (const auto& [name, lists] : c.items()) {
    const std::string np = child(cp, name);
    if (std::find(grid.free.begin(), grid.free.end(), name) == grid.free.end())
      throw InputError(np, "not a free coordinate");
    if (!lists.is_array()) throw InputError(np, "expected one candidate list per power of t");
    auto& dst = grid.coeffs[name];
    for (std::size_t l = 0; l < lists.size(); ++l) {
      const std::string lp = child(np, l);
      if (!lists[l].is_array() || lists[l].empty()) throw InputError(lp, "expected a nonempty list of values");
      std::vector<Rat> vals;
      for (std::size_t k = 0; k < lists[l].size(); ++k) vals.push_back(rat_from_json(lists[l][k], child(lp, k)));
      dst.push_back(std::move(vals));
    }
  }
  return grid;
}

Enumeration run_enumeration(const Json& p, const std::vector<std::string>& coords, const std::vector<RatPoly>& f,
                            int r, const Flags& flags) {
  const std::string mode = p.contains("mode") ? string_from_json(p["mode"], "/payload/mode") : "grid";
  if (mode == "lift") {
    if (!p.contains("fiber_points")) throw InputError("/payload/fiber_points", "missing for mode lift");
    const Json& fp = p["fiber_points"];
    if (!fp.is_array()) throw InputError("/payload/fiber_points", "expected a list of points");
    std::vector<std::vector<Rat>> pts;
    for (std::size_t i = 0; i < fp.size(); ++i) {
      const std::string pp = child("/payload/fiber_points", i);
      if (!fp[i].is_array() || fp[i].size() != coords.size())
        throw InputError(pp, "expected one value per coordinate");
      std::vector<Rat> pt;
      for (std::size_t k = 0; k < fp[i].size(); ++k) pt.push_back(rat_from_json(fp[i][k], child(pp, k)));
      pts.push_back(std::move(pt));
    }
    int guard = 8;
    if (p.contains("M")) guard = static_cast<int>(int_from_json(p["M"], "/payload/M", r, 4096)) - r;
    if (flags.guard) guard = *flags.guard;
    if (flags.trunc) guard = *flags.trunc - r;
    if (guard < 0) throw InputError("/payload/M", "M must be at least r");
    return enumerate_lift(f, r, pts, guard);
  }
  if (mode == "grid") {
    if (!p.contains("grid")) throw InputError("/payload/grid", "missing for mode grid");
    return enumerate_grid(f, r, grid_from_json(p["grid"], coords, "/payload/grid"));
  }
  throw InputError("/payload/mode", "mode must be lift or grid");
}

TaskOutput task_enumerate(const Json& p, const Flags& flags) {
  check_keys(p, "/payload", {"vars", "equations", "r"}, {"mode", "fiber_points", "grid", "M"});
  const auto coords = coords_of(p);
  const auto f = polys_from_json(p["equations"], ambient_vars(coords), "/payload/equations");
  const int r = static_cast<int>(int_from_json(p["r"], "/payload/r", 1, 64));
  Enumeration e = run_enumeration(p, coords, f, r, flags);
  TaskOutput out;
  Json curves = Json::array();
  std::ostringstream csv;
  csv << "index,degrees,status\n";
  for (std::size_t i = 0; i < e.curves.size(); ++i) {
    const auto& c = e.curves[i];
    curves.push_back(Json{{"curve", to_json(c.curve)}, {"status", status_json(c.status)}});
    csv << i << "," << join_degrees(c.curve) << "," << to_string(c.status) << "\n";
  }
  Json rejected = Json::array();
  for (const auto& rj : e.rejected) {
    Json seed = Json::array();
    for (const Rat& x : rj.seed) seed.push_back(to_json(x));
    rejected.push_back(Json{{"seed", seed}, {"reason", rj.reason}});
  }
  out.result = Json{{"count", e.curves.size()}, {"curves", curves}, {"rejected", rejected}, {"r", r}};
  out.csv = csv.str();
  return out;
}

// ---- interp-det

TaskOutput task_interp_det(const Json& p, const Flags& flags) {
  check_keys(p, "/payload", {"vars", "curves"}, {"r", "functions", "g", "d", "M", "split"});
  const auto coords = coords_of(p);
  const auto vars = ambient_vars(coords);
  const auto curves = read_curves(p["curves"], coords.size(), curve_r(p), "/payload/curves");
  int m = p.contains("M") ? static_cast<int>(int_from_json(p["M"], "/payload/M", 0, 4096)) : 0;
  if (flags.trunc) m = *flags.trunc;
  std::optional<SplitData> split;
  if (p.contains("split")) {
    const Json& s = p["split"];
    check_keys(s, "/payload/split", {"n", "m", "nu"});
    split = SplitData{static_cast<int>(int_from_json(s["n"], "/payload/split/n", 1, 16)),
                      static_cast<int>(int_from_json(s["m"], "/payload/split/m", 0, 16)),
                      static_cast<int>(int_from_json(s["nu"], "/payload/split/nu", 1, kMaxSmall))};
  }
  DetReport rep;
  const bool poly_mode = p.contains("g");
  if (poly_mode == p.contains("functions"))
    throw InputError("/payload", "give exactly one of functions or g (with d)");
  if (poly_mode) {
    if (!p.contains("d")) throw InputError("/payload/d", "missing required field");
    rep = poly_interp_det(polys_from_json(p["g"], vars, "/payload/g"),
                          static_cast<int>(int_from_json(p["d"], "/payload/d", 0, 64)), curves, m, split);
  } else {
    rep = interp_det(polys_from_json(p["functions"], vars, "/payload/functions"), curves, m, split);
  }
  TaskOutput out;
  bool ord_ok = true, deg_ok = true;
  if (!rep.vanished) {
    if (rep.ord && rep.ord_lower_bound) ord_ok = *rep.ord >= *rep.ord_lower_bound;
    deg_ok = rep.value.degree() <= rep.deg_upper_bound;
  }
  out.pass = ord_ok && deg_ok;
  out.result = Json{{"value", to_json(rep.value)},
                    {"vanished", rep.vanished},
                    {"ord", opt_json(rep.ord)},
                    {"ord_lower_bound", opt_json(rep.ord_lower_bound)},
                    {"deg", rep.value.degree()},
                    {"deg_upper_bound", rep.deg_upper_bound},
                    {"truncation", rep.truncation},
                    {"series", rep.truncation > 0 ? to_json(rep.series()) : Json(nullptr)},
                    {"checks", Json{{"ord_at_least_bound", ord_ok}, {"deg_at_most_bound", deg_ok}}}};
  return out;
}

// ---- select-hyp

TaskOutput task_select_hyp(const Json& p, const Flags&) {
  check_keys(p, "/payload", {"vars", "curves", "g", "d"}, {"r", "names"});
  const auto coords = coords_of(p);
  const auto vars = ambient_vars(coords);
  const auto curves = read_curves(p["curves"], coords.size(), curve_r(p), "/payload/curves");
  const auto g = polys_from_json(p["g"], vars, "/payload/g");
  const int d = static_cast<int>(int_from_json(p["d"], "/payload/d", 0, 4096));
  std::vector<std::string> names = g_names(g);
  if (p.contains("names")) {
    names = names_from_json(p["names"], "/payload/names");
    if (names.size() != g.size()) throw InputError("/payload/names", "one name per g-map expected");
  }
  RatPoly pt = to_t_poly(select_hypersurface(curves, g, d, names));
  Json vanish = Json::array();
  bool all = true;
  for (const auto& c : curves) {
    std::vector<UPoly> values;
    for (const auto& gk : g) values.push_back(eval_exact(gk, c));
    const bool z = eval_upoly(pt, values).is_zero();
    all = all && z;
    vanish.push_back(z);
  }
  TaskOutput out;
  out.pass = all;
  out.result = Json{{"P", poly_json(pt)}, {"d", d}, {"vanishes_on_curves", vanish}};
  return out;
}

// ---- estimate-e

Json split_json(const WeierstrassSplit& s, const std::vector<std::string>& coords) {
  std::vector<std::string> z, w;
  for (auto i : s.z_indices) z.push_back(coords[i]);
  for (auto i : s.w_indices) w.push_back(coords[i]);
  Json change = nullptr;
  if (s.change) {
    auto [i, j, c] = *s.change;
    change = Json{{"target", coords[i]}, {"source", coords[j]}, {"factor", c}};
  }
  return Json{{"z", z},
              {"w", w},
              {"nu", s.nu},
              {"certificate", to_string(s.certificate)},
              {"degenerate", s.degenerate},
              {"bezout_bound", s.bezout_bound},
              {"eliminant", s.eliminant ? poly_json(*s.eliminant) : Json(nullptr)},
              {"change", change}};
}

TaskOutput task_estimate_e(const Json& p, const Flags&) {
  check_keys(p, "/payload", {"vars", "equations"}, {"z", "m", "nu"});
  const auto coords = coords_of(p);
  const auto f = polys_from_json(p["equations"], ambient_vars(coords), "/payload/equations");
  if (p.contains("z") == p.contains("m")) throw InputError("/payload", "give exactly one of z or m");
  TaskOutput out;
  if (p.contains("m")) {
    const int m = static_cast<int>(int_from_json(p["m"], "/payload/m", 0, static_cast<long>(coords.size())));
    out.result = split_json(find_split(f, m), coords);
    return out;
  }
  std::vector<std::size_t> z;
  for (const auto& name : names_from_json(p["z"], "/payload/z")) {
    auto it = std::find(coords.begin(), coords.end(), name);
    if (it == coords.end()) throw InputError("/payload/z", "unknown coordinate '" + name + "'");
    z.push_back(static_cast<std::size_t>(it - coords.begin()));
  }
  std::optional<int> nu;
  if (p.contains("nu")) nu = static_cast<int>(int_from_json(p["nu"], "/payload/nu", 1, kMaxSmall));
  out.result = split_json(estimate_e(f, z, nu), coords);
  return out;
}

// ---- chain-verify

Chain chain_from_json(const Json& c, const std::string& ptr, const Flags& flags) {
  check_keys(c, ptr, {"n", "ell", "alpha", "kind", "P", "phi", "trunc"}, {"x_names", "phi_names"});
  Chain ch;
  ch.n = static_cast<int>(int_from_json(c["n"], child(ptr, "n"), 1, 16));
  ch.ell = static_cast<int>(int_from_json(c["ell"], child(ptr, "ell"), 1, 16));
  ch.alpha = static_cast<int>(int_from_json(c["alpha"], child(ptr, "alpha"), 0, 64));
  ch.kind = chain_kind_from_json(c["kind"], child(ptr, "kind"));
  ch.trunc = static_cast<int>(int_from_json(c["trunc"], child(ptr, "trunc"), 0, 256));
  if (flags.trunc) ch.trunc = *flags.trunc;
  if (c.contains("x_names")) {
    ch.x_names = names_from_json(c["x_names"], child(ptr, "x_names"));
  } else {
    for (int i = 1; i <= ch.n; ++i) ch.x_names.push_back("x" + std::to_string(i));
  }
  if (c.contains("phi_names")) {
    ch.phi_names = names_from_json(c["phi_names"], child(ptr, "phi_names"));
  } else {
    for (int j = 1; j <= ch.ell; ++j) ch.phi_names.push_back("phi" + std::to_string(j));
  }
  if (static_cast<int>(ch.x_names.size()) != ch.n) throw InputError(child(ptr, "x_names"), "expected n names");
  if (static_cast<int>(ch.phi_names.size()) != ch.ell) throw InputError(child(ptr, "phi_names"), "expected ell names");
  std::vector<std::string> all = ch.x_names;
  all.insert(all.end(), ch.phi_names.begin(), ch.phi_names.end());
  const Json& pm = c["P"];
  const std::string pp = child(ptr, "P");
  if (!pm.is_array() || static_cast<int>(pm.size()) != ch.n) throw InputError(pp, "expected n rows");
  for (std::size_t i = 0; i < pm.size(); ++i) {
    auto row = polys_from_json(pm[i], all, child(pp, i));
    if (static_cast<int>(row.size()) != ch.ell) throw InputError(child(pp, i), "expected ell entries");
    ch.P.push_back(std::move(row));
  }
  ch.phi = polys_from_json(c["phi"], ch.x_names, child(ptr, "phi"));
  if (static_cast<int>(ch.phi.size()) != ch.ell) throw InputError(child(ptr, "phi"), "expected ell witnesses");
  return ch;
}

TaskOutput task_chain_verify(const Json& p, const Flags& flags) {
  Chain ch = chain_from_json(p, "/payload", flags);
  ChainReport rep = verify_chain(ch);
  Json mm = nullptr;
  if (rep.first_mismatch) {
    const auto& m = *rep.first_mismatch;
    mm = Json{{"degree", m.degree},
              {"i", m.i},
              {"j", m.j},
              {"x", ch.x_names[m.i]},
              {"phi", ch.phi_names[m.j]},
              {"exponent", m.exponent},
              {"lhs", to_json(m.lhs)},
              {"rhs", to_json(m.rhs)}};
  }
  TaskOutput out;
  out.pass = rep.pass;
  out.result = Json{{"identities_hold", rep.identities_hold},
                    {"triangular", rep.triangular},
                    {"degree_ok", rep.degree_ok},
                    {"pass", rep.pass},
                    {"pfaffian_eligible", rep.pfaffian_eligible},
                    {"compared_below", rep.compared_below},
                    {"kind", to_string(ch.kind)},
                    {"trunc", ch.trunc},
                    {"first_mismatch", mm}};
  return out;
}

// ---- budget

struct BudgetInput {
  long beta = 1;
  int ell = 0;
  ChainKind kind = ChainKind::Pfaffian;
  bool t_algebraic = true;
  std::optional<long> exponent;
};

BudgetInput budget_input(const Json& b, const std::string& ptr) {
  BudgetInput in;
  in.beta = int_from_json(b["beta"], child(ptr, "beta"), 1, 1000000);
  in.ell = static_cast<int>(int_from_json(b["ell"], child(ptr, "ell"), 0, 64));
  in.kind = chain_kind_from_json(b["kind"], child(ptr, "kind"));
  if (b.contains("t_algebraic")) in.t_algebraic = bool_from_json(b["t_algebraic"], child(ptr, "t_algebraic"));
  if (b.contains("exponent")) in.exponent = int_from_json(b["exponent"], child(ptr, "exponent"), 0, 64);
  return in;
}

TaskOutput task_budget(const Json& p, const Flags&) {
  check_keys(p, "/payload", {"beta", "r", "n", "ell", "kind"}, {"t_algebraic", "exponent"});
  BudgetInput in = budget_input(p, "/payload");
  const int r = static_cast<int>(int_from_json(p["r"], "/payload/r", 1, 64));
  const int n = static_cast<int>(int_from_json(p["n"], "/payload/n", 1, 8));
  Budget mult = multiplicity_budget(in.beta, n, in.ell, in.kind, in.t_algebraic, in.exponent);
  Json wilkie = nullptr;
  std::string note;
  try {
    wilkie = wilkie_json(wilkie_budget(in.beta, r, n, in.ell, in.kind, in.t_algebraic, in.exponent));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
    note = e.what();
  }
  TaskOutput out;
  out.result = Json{{"multiplicity", budget_json(mult)}, {"wilkie", wilkie}, {"note", note}};
  return out;
}

// ---- decompose

Json cut_json(const CutStep& s) {
  return Json{{"dim", s.dim},
              {"g", s.g},
              {"d_selected", s.d_selected},
              {"d_used", s.d_used},
              {"hypersurface", poly_json(s.hypersurface)},
              {"dominance", s.dominance},
              {"factor_index", s.factor_index},
              {"factor_count", s.factor_count},
              {"possibly_reducible", s.possibly_reducible},
              {"t_content_removed", to_json(s.t_content)}};
}

TaskOutput task_decompose(const Json& p, const Flags& flags) {
  check_keys(p, "/payload", {"vars", "r", "algebraic", "budgets"},
             {"equations", "curves", "mode", "grid", "fiber_points", "M"});
  const auto coords = coords_of(p);
  const auto vars = ambient_vars(coords);
  const int r = static_cast<int>(int_from_json(p["r"], "/payload/r", 1, 64));
  const bool algebraic = bool_from_json(p["algebraic"], "/payload/algebraic");
  std::vector<RatPoly> f;
  if (p.contains("equations")) f = polys_from_json(p["equations"], vars, "/payload/equations");
  if (algebraic && !p.contains("equations")) throw InputError("/payload/equations", "required when algebraic");
  std::vector<PolyCurve> curves;
  std::string source = "listed";
  if (p.contains("curves")) {
    curves = curves_from_json(p["curves"], coords.size(), r, "/payload/curves");
  } else {
    if (!p.contains("equations")) throw InputError("/payload/curves", "give curves or equations to enumerate");
    for (auto& c : run_enumeration(p, coords, f, r, flags).curves)
      if (c.status.kind == LiftStatus::Kind::PolynomialWitnessed) curves.push_back(std::move(c.curve));
    source = "enumerated";
  }
  const Json& b = p["budgets"];
  check_keys(b, "/payload/budgets", {"beta", "ell", "kind"}, {"t_algebraic", "exponent", "nu"});
  BudgetInput in = budget_input(b, "/payload/budgets");
  std::optional<WilkieBudget> wilkie;
  std::string budget_note;
  try {
    wilkie = wilkie_budget(in.beta, r, static_cast<int>(coords.size()), in.ell, in.kind, in.t_algebraic, in.exponent);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
    budget_note = e.what();
  }
  DecomposeOptions opt;
  opt.algebraic = algebraic;
  opt.seed = flags.seed;
  opt.coords = coords;
  if (b.contains("nu")) {
    opt.nu = static_cast<int>(int_from_json(b["nu"], "/payload/budgets/nu", 1, kMaxSmall));
  } else if (wilkie) {
    opt.nu = wilkie->nu;
  } else {
    throw InputError("/payload/budgets/nu", "multiplicity budget unavailable; supply nu");
  }
  if (algebraic) {
    if (f.empty()) throw InputError("/payload/equations", "algebraic X needs at least one equation");
    // Curves supplied by hand must lie on X.
    for (std::size_t i = 0; i < curves.size(); ++i)
      for (const auto& fi : f)
        if (!eval_exact(fi, curves[i]).is_zero()) throw InputError(child("/payload/curves", i), "curve is not on X");
  }
  auto blocks = decompose(algebraic ? f : std::vector<RatPoly>{}, curves, r, opt);

  TaskOutput out;
  Json bj = Json::array();
  std::ostringstream csv;
  csv << "block,dim,degree,absorbed\n";
  int max_degree = 0;
  bool covering = true, points_single = true;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& bl = blocks[i];
    Json prov = Json::array();
    for (const auto& s : bl.provenance) prov.push_back(cut_json(s));
    bj.push_back(Json{{"id", i},
                      {"dim", bl.dim},
                      {"degree", bl.degree},
                      {"generators", polys_json(bl.generators)},
                      {"absorbed", curves_json(bl.absorbed)},
                      {"provenance", prov}});
    csv << i << "," << bl.dim << "," << bl.degree << "," << bl.absorbed.size() << "\n";
    max_degree = std::max(max_degree, bl.degree);
    if (bl.dim == 0 && bl.absorbed.size() != 1) points_single = false;
    for (const auto& g : bl.generators)
      for (const auto& c : bl.absorbed) covering = covering && eval_exact(g, c).is_zero();
  }
  for (const auto& c : curves) {
    bool found = false;
    for (const auto& bl : blocks)
      for (const auto& a : bl.absorbed) found = found || a == c;
    covering = covering && found;
  }
  Json compliance = Json{{"block_count", blocks.size()}, {"max_degree", max_degree}};
  bool within = true;
  if (wilkie) {
    within = Integer(static_cast<unsigned long>(blocks.size())) <= wilkie->block_count_bound &&
             Integer(max_degree) <= wilkie->block_degree_bound;
    compliance["count_bound"] = integer_json(wilkie->block_count_bound);
    compliance["degree_bound"] = integer_json(wilkie->block_degree_bound);
    compliance["within_budget"] = within;
  } else {
    compliance["count_bound"] = nullptr;
    compliance["degree_bound"] = nullptr;
    compliance["within_budget"] = nullptr;
  }
  out.pass = covering && points_single && within;
  out.result = Json{{"blocks", bj},
                    {"curve_count", curves.size()},
                    {"curve_source", source},
                    {"covering", covering},
                    {"points_absorb_one_curve", points_single},
                    {"nu", opt.nu},
                    {"budget", wilkie ? wilkie_json(*wilkie) : Json(nullptr)},
                    {"budget_note", budget_note},
                    {"compliance", compliance}};
  out.csv = csv.str();
  return out;
}

// ---- growth

TaskOutput task_growth(const Json& p, const Flags&) {
  check_keys(p, "/payload", {"N", "depth", "imax"}, {"d_max", "M"});
  GrowthSpec spec;
  const Json& nj = p["N"];
  if (!nj.is_array() || nj.empty()) throw InputError("/payload/N", "expected a nonempty list of integers");
  for (std::size_t i = 0; i < nj.size(); ++i) {
    Rat v = rat_from_json(nj[i], child("/payload/N", i));
    if (v.get_den() != 1 || v < 1) throw InputError(child("/payload/N", i), "expected a positive integer");
    spec.N.push_back(v.get_num());
  }
  spec.depth = static_cast<int>(int_from_json(p["depth"], "/payload/depth", 1, 64));
  if (p.contains("M")) spec.trunc = static_cast<int>(int_from_json(p["M"], "/payload/M", 2, 4096));
  const int imax = static_cast<int>(int_from_json(p["imax"], "/payload/imax", 1, 64));
  const int d_max = p.contains("d_max") ? static_cast<int>(int_from_json(p["d_max"], "/payload/d_max", 0, 64)) : 0;
  try {
    validate(spec);
    if (imax > spec.depth) throw Error(ErrorCode::InvalidArgument, "imax exceeds depth");
  } catch (const Error& e) {
    throw InputError("/payload", e.what());
  }
  Integer total = 0;
  for (int i = 0; i < imax; ++i) total += spec.N[static_cast<std::size_t>(i)];
  const bool keep = total <= 2000;
  GrowthTable table = verify_growth(spec, imax, keep);
  TaskOutput out;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "i,j,deg_t,pass\n";
  for (const auto& row : table.rows) {
    Json rj{{"i", row.i}, {"j", integer_json(row.j)}, {"deg_t", row.deg_t}, {"pass", row.pass}};
    if (row.value) rj["value"] = to_json(*row.value);
    rows.push_back(std::move(rj));
    csv << row.i << "," << row.j.get_str() << "," << row.deg_t << "," << (row.pass ? "true" : "false") << "\n";
  }
  Json levels = Json::array();
  for (const auto& l : table.levels)
    levels.push_back(Json{
        {"i", l.i}, {"N_i", integer_json(l.n_i)}, {"witnesses", integer_json(l.witnesses)}, {"pass", l.pass}});
  Json gaps = nullptr;
  if (d_max > 0) {
    auto cert = check_support_gaps(spec.N, d_max);
    Json entries = Json::array();
    for (const auto& e : cert.entries) entries.push_back(Json{{"d", e.d}, {"i0", e.i0 ? Json(*e.i0) : Json(nullptr)}});
    gaps = Json{{"entries", entries}, {"pass", cert.pass}};
  }
  out.pass = table.pass;
  out.result = Json{{"rows", keep ? rows : Json(nullptr)},
                    {"row_count", table.rows.size()},
                    {"levels", levels},
                    {"monotone", table.monotone},
                    {"support_gaps", gaps}};
  out.csv = csv.str();
  return out;
}

const std::map<std::string, TaskFn>& tasks() {
  static const std::map<std::string, TaskFn> table{
      {"extract", task_extract},     {"lift", task_lift},          {"enumerate", task_enumerate},
      {"interp-det", task_interp_det}, {"select-hyp", task_select_hyp}, {"estimate-e", task_estimate_e},
      {"chain-verify", task_chain_verify}, {"budget", task_budget}, {"decompose", task_decompose},
      {"growth", task_growth}};
  return table;
}

Json provenance_json(const Flags& flags) {
  return Json{{"tool", "ffcount"},
              {"version", kVersion},
              {"seed", flags.seed},
              {"seed_source", flags.seed_source},
              {"trunc", flags.trunc ? Json(*flags.trunc) : Json(nullptr)},
              {"guard", flags.guard ? Json(*flags.guard) : Json(nullptr)}};
}

Json make_report(const Json& task, const std::string& status, Json result, const Flags& flags) {
  return Json{{"schema_version", kSchemaVersion},
              {"task", task},
              {"status", status},
              {"result", std::move(result)},
              {"provenance", provenance_json(flags)}};
}

}  // namespace

Outcome dispatch(const Json& problem, const Flags& flags) {
  Outcome out;
  Json task_name = nullptr;
  try {
    check_keys(problem, "", {"schema_version", "task", "payload"});
    if (int_from_json(problem["schema_version"], "/schema_version", 0, 1000) != kSchemaVersion)
      throw InputError("/schema_version", "unsupported schema version");
    const std::string name = string_from_json(problem["task"], "/task");
    auto it = tasks().find(name);
    if (it == tasks().end()) throw InputError("/task", "unknown task '" + name + "'");
    task_name = name;
    TaskOutput t;
    try {
      t = it->second(problem["payload"], flags);
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      out.report = make_report(task_name, "error", Json{{"error", e.what()}, {"code", to_string(e.code())}}, flags);
      out.exit_code = 1;
      return out;
    }
    out.report = make_report(task_name, t.pass ? "pass" : "fail", std::move(t.result), flags);
    out.csv = std::move(t.csv);
    out.exit_code = t.pass ? 0 : 1;
  } catch (const InputError& e) {
    out.report = make_report(task_name, "error",
                             Json{{"error", e.what()}, {"code", "InputError"}, {"pointer", e.pointer()}}, flags);
    out.csv.clear();
    out.exit_code = 2;
  }
  return out;
}

void validate_report(const Json& report) {
  check_keys(report, "", {"schema_version", "task", "status", "result", "provenance"});
  if (int_from_json(report["schema_version"], "/schema_version", 0, 1000) != kSchemaVersion)
    throw InputError("/schema_version", "unsupported schema version");
  const std::string status = string_from_json(report["status"], "/status");
  if (status != "pass" && status != "fail" && status != "error") throw InputError("/status", "invalid status");
  const Json& task = report["task"];
  if (task.is_null()) {
    if (status != "error") throw InputError("/task", "only error reports may omit the task");
  } else if (!tasks().count(string_from_json(task, "/task"))) {
    throw InputError("/task", "unknown task");
  }
  if (!report["result"].is_object()) throw InputError("/result", "expected an object");
  if (status == "error" && !report["result"].contains("error")) throw InputError("/result/error", "missing");
  const Json& prov = report["provenance"];
  check_keys(prov, "/provenance", {"tool", "version", "seed", "seed_source", "trunc", "guard"});
  if (!prov["seed"].is_number_unsigned() && !prov["seed"].is_number_integer())
    throw InputError("/provenance/seed", "expected an integer");
}

namespace {

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream os(path, std::ios::binary);
  os << text;
  return static_cast<bool>(os);
}

std::vector<long> parse_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long v = std::stol(item, &used);
    if (used != item.size()) throw std::invalid_argument(item);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Counting polynomial curves on varieties over Q((t))"};
  app.require_subcommand(1);
  std::string out_path, csv_path, problem_path;
  std::optional<int> trunc, guard;
  std::optional<std::uint64_t> seed;
  std::string n_list;
  int depth = 0, imax = 0, dmax = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("problem", problem_path, "Problem file (JSON)");
    sub->add_option("--out", out_path, "Write the JSON report here (default stdout)");
    sub->add_option("--csv", csv_path, "Write the CSV summary here");
    sub->add_option("--trunc", trunc, "Series truncation M")->check(CLI::PositiveNumber);
    sub->add_option("--guard", guard, "Extra lifting precision beyond r")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", seed, "Seed for sampled certificates (FFCOUNT_SEED overrides)");
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, fn] : tasks()) {
    CLI::App* sub = app.add_subcommand(name, "Run a problem of task " + name);
    add_common(sub);
    subs[name] = sub;
  }
  CLI::App* growth = subs["growth"];
  growth->add_option("--N", n_list, "Comma-separated N_1 < N_2 < ...");
  growth->add_option("--depth", depth, "Number of series terms");
  growth->add_option("--imax", imax, "Largest level i to certify");
  growth->add_option("--dmax", dmax, "Check the support-gap criterion for d <= dmax");
  CLI::App* run = app.add_subcommand("run", "Run a problem file, dispatching on its task");
  add_common(run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Flags flags;
  flags.trunc = trunc;
  flags.guard = guard;
  if (seed) {
    flags.seed = *seed;
    flags.seed_source = "flag";
  }
  if (const char* env = std::getenv("FFCOUNT_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      flags.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      flags.seed_source = "env";
    } catch (const std::exception&) {
      std::cerr << "ffcount: FFCOUNT_SEED is not an unsigned integer\n";
      return 2;
    }
  }

  std::string chosen;
  for (auto* sub : app.get_subcommands()) chosen = sub->get_name();

  Json problem;
  if (chosen == "growth" && problem_path.empty()) {
    if (n_list.empty()) {
      std::cerr << "ffcount: growth needs a problem file or --N/--depth/--imax\n";
      return 2;
    }
    Json n = Json::array();
    try {
      for (long v : parse_list(n_list)) n.push_back(v);
    } catch (const std::exception&) {
      std::cerr << "ffcount: --N expects comma-separated integers\n";
      return 2;
    }
    Json payload{{"N", n}, {"depth", depth}, {"imax", imax}};
    if (dmax > 0) payload["d_max"] = dmax;
    problem = Json{{"schema_version", kSchemaVersion}, {"task", "growth"}, {"payload", payload}};
  } else {
    if (problem_path.empty()) {
      std::cerr << "ffcount: a problem file is required\n";
      return 2;
    }
    std::ifstream is(problem_path, std::ios::binary);
    if (!is) {
      std::cerr << "ffcount: cannot open " << problem_path << "\n";
      return 2;
    }
    try {
      problem = Json::parse(is);
    } catch (const Json::parse_error& e) {
      std::cerr << "ffcount: " << problem_path << ": malformed JSON: " << e.what() << "\n";
      return 2;
    }
    if (chosen != "run" && problem.is_object() && problem.contains("task") && problem["task"] != chosen) {
      std::cerr << "ffcount: /task: problem is for '" << problem["task"].dump() << "', not '" << chosen << "'\n";
      return 2;
    }
  }

  Outcome outcome = dispatch(problem, flags);
  validate_report(Json::parse(outcome.report.dump()));
  if (outcome.exit_code == 2) std::cerr << "ffcount: " << outcome.report["result"]["error"].get<std::string>() << "\n";
  if (outcome.exit_code == 1 && outcome.report["status"] == "error")
    std::cerr << "ffcount: " << outcome.report["result"]["error"].get<std::string>() << "\n";
  if (!write_text(out_path, outcome.report.dump(2) + "\n")) {
    std::cerr << "ffcount: cannot write " << out_path << "\n";
    return 2;
  }
  if (!csv_path.empty() && !outcome.csv.empty() && !write_text(csv_path, outcome.csv)) {
    std::cerr << "ffcount: cannot write " << csv_path << "\n";
    return 2;
  }
  return outcome.exit_code;
}

}  // namespace ffcount
