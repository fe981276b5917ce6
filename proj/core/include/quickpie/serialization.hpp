#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>

#include "quickpie/engine.hpp"
#include "quickpie/geometry.hpp"
#include "quickpie/layout.hpp"
#include "quickpie/trace.hpp"

namespace quickpie {

using json = nlohmann::json;

/// True for integral JSON numbers >= 0, whether parsed or built in code.
inline bool is_non_negative_integer(const json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

json to_json(const PieConfig& cfg);
/// Overlays the keys of `j` onto `base`. Unknown keys and wrong types throw
/// ConfigError; the result is validated.
PieConfig config_from_json(const json& j, PieConfig base = {});

json to_json(const SimParams& params);
SimParams sim_params_from_json(const json& j, SimParams base = {});

json to_json(const Strategy& strategy);
/// Accepts the string form ("dwell:400") or {"dwell_ms": 400}.
Strategy strategy_from_json(const json& j);

json to_json(const ItemAction& action);
json to_json(const Item& item);
json to_json(const Layout& layout);
json to_json(const SliceSpan& span);
json to_json(const GazeSample& sample);

/// Layout plus angles and spans for no focus and for every possible focus.
json layout_info(const PieConfig& cfg, const Layout& layout);

}  // namespace quickpie
