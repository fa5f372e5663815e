#pragma once

// Bit-exact JSON encoding: a Laurent polynomial is [[exponent, "coefficient"], ...] by exponent.

#include "qcanon/laurent.hpp"
#include "qcanon/weight.hpp"

#include "json.hpp"

namespace qcanon {

using Json = nlohmann::ordered_json;

inline Json to_json(const LaurentPoly& p) {
  Json a = Json::array();
  for (const auto& [e, c] : p.terms()) a.push_back(Json::array({e, c.to_string()}));
  return a;
}

inline LaurentPoly laurent_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("Laurent JSON: expected an array");
  std::vector<LaurentPoly::Term> terms;
  int last = 0;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_string())
      throw ParseError("Laurent JSON: bad term");
    const int e = t[0].get<int>();
    if (!terms.empty() && e <= last) throw ParseError("Laurent JSON: exponents not increasing");
    Integer c = Integer::parse(t[1].get<std::string>());
    if (c.is_zero()) throw ParseError("Laurent JSON: zero coefficient");
    terms.emplace_back(e, std::move(c));
    last = e;
  }
  return LaurentPoly::from_terms(std::move(terms));
}

inline Json to_json(Weight w) { return Json::array({w.l1, w.l2}); }

inline Json to_json(const MonomialLabel& b) {
  return Json{{"shape", b.shape == Shape::S212 ? "212" : "121"}, {"exps", {b.x, b.y, b.z}}, {"text", b.to_string()}};
}

}  // namespace qcanon
