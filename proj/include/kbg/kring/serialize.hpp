#pragma once

#include "json.hpp"
#include "kbg/kring/lclass.hpp"
#include "kbg/kring/witt.hpp"

namespace kbg::kring {

// {"num": [[exp, coeff], ...], "den_cyc": [...], "den_Lpow": a}
// Coefficients outside the 62-bit range are written as decimal strings.
nlohmann::json to_json(const LClass& x);
LClass lclass_from_json(const nlohmann::json& j);

nlohmann::json to_json(const WittSeries& w);
nlohmann::json to_json(const EulerSeries& e);

nlohmann::json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const nlohmann::json& j);

}  // namespace kbg::kring
