#include "quickpie/serialization.hpp"

#include "quickpie/errors.hpp"

namespace quickpie {

namespace {

double number_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

int int_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

MsRange range_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(std::string("field '") + key + "' must be [min, max]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be an object");
}

}  // namespace

json to_json(const PieConfig& cfg) {
  return {{"num_slices", cfg.num_slices},
          {"pie_radius_px", cfg.pie_radius_px},
          {"char_width_px", cfg.char_width_px},
          {"safe_width_px", cfg.safe_width_px},
          {"selection_width_px", cfg.selection_width_px},
          {"expand_deg", cfg.expand_deg},
          {"center_x_px", cfg.center_x_px},
          {"center_y_px", cfg.center_y_px}};
}

PieConfig config_from_json(const json& j, PieConfig cfg) {
  require_object(j, "config");
  for (const auto& [key, value] : j.items()) {
    if (key == "num_slices") cfg.num_slices = int_field(j, "num_slices");
    else if (key == "pie_radius_px") cfg.pie_radius_px = number_field(j, "pie_radius_px");
    else if (key == "char_width_px") cfg.char_width_px = number_field(j, "char_width_px");
    else if (key == "safe_width_px") cfg.safe_width_px = number_field(j, "safe_width_px");
    else if (key == "selection_width_px") cfg.selection_width_px = number_field(j, "selection_width_px");
    else if (key == "expand_deg") cfg.expand_deg = number_field(j, "expand_deg");
    else if (key == "center_x_px") cfg.center_x_px = number_field(j, "center_x_px");
    else if (key == "center_y_px") cfg.center_y_px = number_field(j, "center_y_px");
    else throw ConfigError("unknown config field '" + key + "'");
  }
  validate(cfg);
  return cfg;
}

json to_json(const SimParams& p) {
  return {{"seed", p.seed},
          {"sample_rate_hz", p.sample_rate_hz},
          {"px_per_deg", p.px_per_deg},
          {"jitter_sigma_px", p.jitter_sigma_px},
          {"tracker_sigma_px", p.tracker_sigma_px},
          {"fixation_ms", {p.fixation_ms.min_ms, p.fixation_ms.max_ms}},
          {"latency_ms", {p.latency_ms.min_ms, p.latency_ms.max_ms}},
          {"saccade_ms", {p.saccade_ms.min_ms, p.saccade_ms.max_ms}},
          {"expertise", p.expertise},
          {"p_notice", p.p_notice},
          {"max_retries", p.max_retries}};
}

SimParams sim_params_from_json(const json& j, SimParams p) {
  require_object(j, "sim params");
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      if (!is_non_negative_integer(value)) throw ConfigError("field 'seed' must be a non-negative integer");
      p.seed = value.get<std::uint64_t>();
    } else if (key == "sample_rate_hz") p.sample_rate_hz = number_field(j, "sample_rate_hz");
    else if (key == "px_per_deg") p.px_per_deg = number_field(j, "px_per_deg");
    else if (key == "jitter_sigma_px") p.jitter_sigma_px = number_field(j, "jitter_sigma_px");
    else if (key == "tracker_sigma_px") p.tracker_sigma_px = number_field(j, "tracker_sigma_px");
    else if (key == "fixation_ms") p.fixation_ms = range_field(j, "fixation_ms");
    else if (key == "latency_ms") p.latency_ms = range_field(j, "latency_ms");
    else if (key == "saccade_ms") p.saccade_ms = range_field(j, "saccade_ms");
    else if (key == "expertise") p.expertise = number_field(j, "expertise");
    else if (key == "p_notice") p.p_notice = number_field(j, "p_notice");
    else if (key == "max_retries") p.max_retries = int_field(j, "max_retries");
    else throw ConfigError("unknown sim field '" + key + "'");
  }
  validate(p);
  return p;
}

json to_json(const Strategy& strategy) { return to_string(strategy); }

Strategy strategy_from_json(const json& j) {
  if (j.is_string()) return parse_strategy(j.get<std::string>());
  if (j.is_object() && j.size() == 1 && j.contains("dwell_ms")) {
    const double ms = number_field(j, "dwell_ms");
    if (!(ms >= 0)) throw ConfigError("dwell_ms must be >= 0");
    return Dwell{ms};
  }
  throw ConfigError("strategy must be a string or {\"dwell_ms\": n}");
}

json to_json(const ItemAction& action) {
  switch (action.kind) {
    case ActionKind::AppendChar:
      return {{"kind", "char"}, {"char", std::string(1, action.ch)}};
    case ActionKind::AppendSpace:
      return {{"kind", "space"}};
    case ActionKind::ClearLast:
      return {{"kind", "clear"}};
  }
  return nullptr;
}

json to_json(const Item& item) {
  return {{"label", item.label}, {"action", to_json(item.action)}, {"shade_rank", item.shade_rank}};
}

json to_json(const Layout& layout) {
  json slices = json::array();
  for (const auto& slice : layout.slices) {
    json items = json::array();
    for (const auto& item : slice) items.push_back(to_json(item));
    slices.push_back(std::move(items));
  }
  return {{"num_slices", layout.num_slices()}, {"slices", std::move(slices)}};
}

json to_json(const SliceSpan& span) {
  return {{"slice", span.slice}, {"start_deg", span.start_deg}, {"end_deg", span.end_deg}};
}

json to_json(const GazeSample& s) { return {{"t_ms", s.t_ms}, {"x", s.x_px}, {"y", s.y_px}}; }

json layout_info(const PieConfig& cfg, const Layout& layout) {
  auto spans_json = [&](std::optional<int> focus) {
    json out = json::array();
    for (const auto& span : slice_spans(cfg, focus)) out.push_back(to_json(span));
    return out;
  };
  json focused = json::array();
  json gamma = json::array();
  for (int f = 0; f < cfg.num_slices; ++f) {
    focused.push_back(spans_json(f));
    gamma.push_back(cell_angle_deg(cfg, layout, f));
  }
  return {{"config", to_json(cfg)},
          {"alpha_deg", cfg.alpha_deg()},
          {"beta_deg", cfg.beta_deg()},
          {"gamma_deg", std::move(gamma)},
          {"radii_px",
           {{"pie", cfg.pie_radius_px},
            {"char_outer", cfg.char_outer_px()},
            {"safe_outer", cfg.safe_outer_px()},
            {"selection_outer", cfg.selection_outer_px()}}},
          {"layout", to_json(layout)},
          {"spans", spans_json(std::nullopt)},
          {"focused_spans", std::move(focused)},
          {"warnings", config_warnings(cfg)}};
}

}  // namespace quickpie
