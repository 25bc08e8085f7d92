#include "kbg/kring/serialize.hpp"

#include "kbg/errors.hpp"

namespace kbg::kring {

using nlohmann::json;

json bigint_to_json(const BigInt& v) {
  if (fits_int64(v)) return to_int64(v);
  return v.get_str();
}

BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ParseError("not an integer: " + j.get<std::string>());
    }
  }
  throw ParseError("expected an integer or a decimal string");
}

json to_json(const LClass& x) {
  json num = json::array();
  for (const auto& [e, c] : x.numerator().terms()) num.push_back(json::array({e, bigint_to_json(c)}));
  return json{{"num", num}, {"den_cyc", x.den_cyc()}, {"den_Lpow", x.den_lpow()}};
}

LClass lclass_from_json(const json& j) {
  try {
    LPoly num;
    for (const auto& t : j.at("num")) {
      if (!t.is_array() || t.size() != 2) throw ParseError("numerator terms are [exp, coeff] pairs");
      num += LPoly::monomial(t[0].get<int>(), bigint_from_json(t[1]));
    }
    std::vector<int> cyc = j.value("den_cyc", std::vector<int>{});
    int a = j.value("den_Lpow", 0);
    return LClass::from_parts(num, cyc, a);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed class JSON: ") + e.what());
  }
}

json to_json(const WittSeries& w) {
  json a = json::array();
  for (const auto& c : w.coeffs()) a.push_back(c.to_string());
  return json{{"order", w.order()}, {"coeffs", a}};
}

json to_json(const EulerSeries& e) {
  json c = json::array();
  for (const auto& [k, v] : e.coeffs()) c.push_back(json::array({-k, bigint_to_json(v)}));
  return json{{"q_exponent_coeffs", c}, {"exact_down_to_q_exponent", -e.depth()}};
}

}  // namespace kbg::kring
