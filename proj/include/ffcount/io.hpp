#pragma once

#include "ffcount/curve.hpp"
#include "ffcount/mpoly.hpp"
#include "ffcount/tseries.hpp"

#include <json.hpp>

#include <initializer_list>
#include <string>
#include <vector>

namespace ffcount {

// Keys are kept in sorted order, so dumps are deterministic.
using Json = nlohmann::json;

Json to_json(const Rat& x);
Json to_json(const UPoly& p);
Json to_json(const TSeries& s);
// [{"coeff": "num/den", "exps": [...]}, ...] in increasing monomial order.
Json to_json(const RatPoly& p);
Json to_json(const PolyCurve& c);

// Readers throw InputError naming the offending JSON pointer.
Rat rat_from_json(const Json& j, const std::string& ptr);
UPoly upoly_from_json(const Json& j, const std::string& ptr);
// An infix string or a list of {exps, coeff} terms over vars.
RatPoly poly_from_json(const Json& j, const std::vector<std::string>& vars, const std::string& ptr);
std::vector<RatPoly> polys_from_json(const Json& j, const std::vector<std::string>& vars, const std::string& ptr);
PolyCurve curve_from_json(const Json& j, std::size_t n, int r, const std::string& ptr);
std::vector<PolyCurve> curves_from_json(const Json& j, std::size_t n, int r, const std::string& ptr);
std::vector<std::string> names_from_json(const Json& j, const std::string& ptr);
long int_from_json(const Json& j, const std::string& ptr, long min_value, long max_value);
bool bool_from_json(const Json& j, const std::string& ptr);
std::string string_from_json(const Json& j, const std::string& ptr);

// Rejects keys outside required + optional and missing required keys.
void check_keys(const Json& obj, const std::string& ptr, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {});

std::string child(const std::string& ptr, const std::string& key);
std::string child(const std::string& ptr, std::size_t index);

}  // namespace ffcount
