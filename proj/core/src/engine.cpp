#include "quickpie/engine.hpp"

#include <cmath>

#include "quickpie/errors.hpp"

namespace quickpie {

std::string to_string(const Strategy& strategy) {
  if (const auto* dwell = std::get_if<Dwell>(&strategy)) {
    const double ms = dwell->dwell_ms;
    if (ms == std::floor(ms)) return "dwell:" + std::to_string(static_cast<long long>(ms));
    return "dwell:" + std::to_string(ms);
  }
  return std::get<BorderCrossing>(strategy).always_armed ? "border_crossing_naive" : "border_crossing";
}

Strategy parse_strategy(const std::string& text) {
  if (text == "border_crossing" || text == "border") return BorderCrossing{};
  if (text == "border_crossing_naive") return BorderCrossing{true};
  if (text == "dwell") return Dwell{};
  if (text.rfind("dwell:", 0) == 0) {
    const std::string ms = text.substr(6);
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(ms, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != ms.size() || ms.empty() || !(value >= 0) || !std::isfinite(value)) {
      throw ConfigError("bad dwell time in strategy '" + text + "'");
    }
    return Dwell{value};
  }
  throw ConfigError("unknown strategy '" + text + "'");
}

EngineState initial_state(Strategy strategy) {
  EngineState s;
  s.strategy = strategy;
  return s;
}

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::FocusChanged:
      return "focus_changed";
    case EventKind::HighlightChanged:
      return "highlight_changed";
    case EventKind::Committed:
      return "committed";
    case EventKind::BufferChanged:
      return "buffer_changed";
    case EventKind::NoChange:
      return "no_change";
  }
  return "?";
}

namespace {

void commit(EngineState& s, const Layout& layout, double t, std::vector<EngineEvent>& events) {
  const ItemPos pos{*s.focused, *s.highlighted};
  const Item& item = layout.at(pos);
  apply_action(s.buffer, item.action);
  s.commit_log.push_back({t, pos, item.action, s.buffer.size()});
  events.push_back({EventKind::Committed, t, pos});
  events.push_back({EventKind::BufferChanged, t, std::nullopt});
}

void set_highlight(EngineState& s, std::optional<int> item, double t, std::vector<EngineEvent>& events) {
  if (s.highlighted != item) {
    s.highlighted = item;
    events.push_back({EventKind::HighlightChanged, t, std::nullopt});
  }
}

void border_crossing(EngineState& s, const BorderCrossing& mode, const Layout& layout, const RegionHit& hit,
                     double t, std::vector<EngineEvent>& events) {
  switch (hit.kind) {
    case RegionKind::CharCell:
      set_highlight(s, hit.index, t, events);
      s.armed = true;
      break;
    case RegionKind::Selection:
      if (mode.always_armed) {
        if (s.highlighted && s.last_region != RegionKind::Selection) commit(s, layout, t, events);
        s.armed = false;
      } else if (s.armed) {
        commit(s, layout, t, events);
        s.armed = false;
      }
      break;
    case RegionKind::Safe:
    case RegionKind::PieSlice:
    case RegionKind::Background:
      break;
  }
}

void dwell(EngineState& s, const Dwell& mode, const Layout& layout, const RegionHit& hit, double t,
           std::vector<EngineEvent>& events) {
  if (hit.kind != RegionKind::CharCell) {
    s.armed = false;
    s.dwell_accum_ms = 0.0;
    return;
  }
  const bool same_cell = s.last_region == RegionKind::CharCell && s.highlighted == hit.index;
  if (!same_cell) {
    set_highlight(s, hit.index, t, events);
    s.cell_entry_t_ms = t;
    s.dwell_accum_ms = 0.0;
    s.armed = true;
  } else {
    s.dwell_accum_ms = t - s.cell_entry_t_ms;
  }
  if (s.armed && s.dwell_accum_ms >= mode.dwell_ms) {
    commit(s, layout, t, events);
    s.armed = false;
  }
}

}  // namespace

std::vector<EngineEvent> advance(EngineState& s, const PieConfig& cfg, const Layout& layout,
                                 const GazeSample& sample) {
  const double t = sample.t_ms;
  if (!std::isfinite(t) || !std::isfinite(sample.x_px) || !std::isfinite(sample.y_px)) {
    throw SampleOrderError("gaze sample has non-finite fields");
  }
  if (s.last_t_ms && !(t > *s.last_t_ms)) {
    throw SampleOrderError("sample at t=" + std::to_string(t) + " ms is not after t=" +
                           std::to_string(*s.last_t_ms) + " ms");
  }

  std::vector<EngineEvent> events;
  const RegionHit hit = hit_test(cfg, layout, s.focused, {sample.x_px, sample.y_px});

  if (hit.kind == RegionKind::PieSlice && s.focused != hit.index) {
    s.focused = hit.index;
    events.push_back({EventKind::FocusChanged, t, std::nullopt});
    set_highlight(s, std::nullopt, t, events);
    s.armed = false;
    s.dwell_accum_ms = 0.0;
  } else if (const auto* bc = std::get_if<BorderCrossing>(&s.strategy)) {
    border_crossing(s, *bc, layout, hit, t, events);
  } else {
    dwell(s, std::get<Dwell>(s.strategy), layout, hit, t, events);
  }

  s.last_region = hit.kind;
  s.last_t_ms = t;
  if (events.empty()) events.push_back({EventKind::NoChange, t, std::nullopt});
  return events;
}

StepResult step(EngineState state, const PieConfig& cfg, const Layout& layout, const GazeSample& sample) {
  auto events = advance(state, cfg, layout, sample);
  return {std::move(state), std::move(events)};
}

Engine::Engine(PieConfig cfg, Strategy strategy)
    : cfg_(cfg), layout_(build_layout(cfg.num_slices)), state_(initial_state(strategy)) {
  validate(cfg_);
}

}  // namespace quickpie
