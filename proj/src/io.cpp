#include "ffcount/io.hpp"

#include "ffcount/errors.hpp"
#include "ffcount/parse.hpp"

#include <set>

namespace ffcount {

std::string child(const std::string& ptr, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~')
      escaped += "~0";
    else if (c == '/')
      escaped += "~1";
    else
      escaped += c;
  }
  return ptr + "/" + escaped;
}

std::string child(const std::string& ptr, std::size_t index) { return ptr + "/" + std::to_string(index); }

Json to_json(const Rat& x) { return format_rat(x); }

Json to_json(const UPoly& p) {
  Json out = Json::array();
  for (const Rat& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

Json to_json(const TSeries& s) {
  Json coeffs = Json::array();
  for (const Rat& c : s.coeffs()) coeffs.push_back(to_json(c));
  return Json{{"offset", s.offset()}, {"coeffs", coeffs}, {"trunc", s.trunc()}, {"exact", s.exact()}};
}

Json to_json(const RatPoly& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) out.push_back(Json{{"exps", m}, {"coeff", to_json(c)}});
  return out;
}

Json to_json(const PolyCurve& c) {
  Json out = Json::array();
  for (const UPoly& comp : c.components()) out.push_back(to_json(comp));
  return out;
}

namespace {

template <class F>
auto rethrow_at(const std::string& ptr, F fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(ptr, e.what());
  }
}

}  // namespace

Rat rat_from_json(const Json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rat(Integer(j.dump(), 10));
  if (!j.is_string()) throw InputError(ptr, "expected a rational \"num/den\" or an integer");
  return rethrow_at(ptr, [&] { return parse_rat(j.get<std::string>()); });
}

UPoly upoly_from_json(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw InputError(ptr, "expected a list of rational coefficients");
  std::vector<Rat> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(rat_from_json(j[i], child(ptr, i)));
  return UPoly(std::move(c));
}

RatPoly poly_from_json(const Json& j, const std::vector<std::string>& vars, const std::string& ptr) {
  if (j.is_string()) return rethrow_at(ptr, [&] { return parse_poly(j.get<std::string>(), vars); });
  if (!j.is_array()) throw InputError(ptr, "expected a polynomial string or a list of terms");
  RatPoly p(vars);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tp = child(ptr, i);
    check_keys(j[i], tp, {"exps", "coeff"});
    const Json& e = j[i]["exps"];
    if (!e.is_array() || e.size() != vars.size())
      throw InputError(child(tp, "exps"), "expected " + std::to_string(vars.size()) + " exponents");
    Monomial m;
    for (std::size_t k = 0; k < e.size(); ++k)
      m.push_back(static_cast<int>(int_from_json(e[k], child(child(tp, "exps"), k), -1000000, 1000000)));
    p.add_term(m, rat_from_json(j[i]["coeff"], child(tp, "coeff")));
  }
  return p;
}

std::vector<RatPoly> polys_from_json(const Json& j, const std::vector<std::string>& vars, const std::string& ptr) {
  if (!j.is_array()) throw InputError(ptr, "expected a list of polynomials");
  std::vector<RatPoly> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(poly_from_json(j[i], vars, child(ptr, i)));
  return out;
}

PolyCurve curve_from_json(const Json& j, std::size_t n, int r, const std::string& ptr) {
  if (!j.is_array() || j.size() != n)
    throw InputError(ptr, "expected a curve with " + std::to_string(n) + " components");
  std::vector<UPoly> comps;
  for (std::size_t i = 0; i < j.size(); ++i) comps.push_back(upoly_from_json(j[i], child(ptr, i)));
  return rethrow_at(ptr, [&] { return PolyCurve(std::move(comps), r); });
}

std::vector<PolyCurve> curves_from_json(const Json& j, std::size_t n, int r, const std::string& ptr) {
  if (!j.is_array()) throw InputError(ptr, "expected a list of curves");
  std::vector<PolyCurve> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(curve_from_json(j[i], n, r, child(ptr, i)));
  return out;
}

std::vector<std::string> names_from_json(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw InputError(ptr, "expected a list of names");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string s = string_from_json(j[i], child(ptr, i));
    if (s.empty() || s == "t") throw InputError(child(ptr, i), "invalid variable name '" + s + "'");
    if (!seen.insert(s).second) throw InputError(child(ptr, i), "duplicate name '" + s + "'");
    out.push_back(std::move(s));
  }
  return out;
}

long int_from_json(const Json& j, const std::string& ptr, long min_value, long max_value) {
  if (!j.is_number_integer()) throw InputError(ptr, "expected an integer");
  const long v = j.get<long>();
  if (v < min_value || v > max_value)
    throw InputError(ptr, "value " + std::to_string(v) + " outside [" + std::to_string(min_value) + ", " +
                              std::to_string(max_value) + "]");
  return v;
}

bool bool_from_json(const Json& j, const std::string& ptr) {
  if (!j.is_boolean()) throw InputError(ptr, "expected true or false");
  return j.get<bool>();
}

std::string string_from_json(const Json& j, const std::string& ptr) {
  if (!j.is_string()) throw InputError(ptr, "expected a string");
  return j.get<std::string>();
}

void check_keys(const Json& obj, const std::string& ptr, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional) {
  if (!obj.is_object()) throw InputError(ptr, "expected an object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    allowed.insert(k);
    if (!obj.contains(k)) throw InputError(child(ptr, k), "missing required field");
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw InputError(child(ptr, k), "unknown field");
}

}  // namespace ffcount
