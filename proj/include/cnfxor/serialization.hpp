#pragma once

#include <json.hpp>

#include "cnfxor/formula.hpp"

namespace cnfxor {

/// {"n":..,"k":..,"cnf":[[lit,..],..],"xor":[{"vars":[..],"rhs":0|1},..]}
void to_json(nlohmann::json& j, const Formula& f);
void from_json(const nlohmann::json& j, Formula& f);

}  // namespace cnfxor
