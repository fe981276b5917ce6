#include "quickpie/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "quickpie/errors.hpp"

namespace quickpie {

std::string to_string(WaypointPurpose purpose) {
  switch (purpose) {
    case WaypointPurpose::FocusSlice:
      return "focus_slice";
    case WaypointPurpose::Character:
      return "character";
    case WaypointPurpose::Commit:
      return "commit";
  }
  return "?";
}

std::vector<Waypoint> plan_item(const PieConfig& cfg, const Layout& layout, ItemPos target,
                                std::optional<int> current_focus) {
  layout.at(target);
  std::vector<Waypoint> out;
  if (current_focus != target.slice) {
    const auto spans = slice_spans(cfg, current_focus);
    const double theta = spans[static_cast<std::size_t>(target.slice)].center_deg();
    out.push_back({from_polar(cfg, 0.6 * cfg.pie_radius_px, theta), WaypointPurpose::FocusSlice, target});
  }
  const auto span = slice_spans(cfg, target.slice)[static_cast<std::size_t>(target.slice)];
  const double theta = span.start_deg + (target.item + 0.5) * cell_angle_deg(cfg, layout, target.slice);
  out.push_back({cell_center(cfg, layout, target.slice, target.item), WaypointPurpose::Character, target});
  out.push_back({from_polar(cfg, cfg.safe_outer_px() + 0.5 * cfg.selection_width_px, theta),
                 WaypointPurpose::Commit, target});
  return out;
}

namespace {

ItemPos phrase_item(const Layout& layout, char c) {
  if (c != ' ' && (c < 'a' || c > 'z')) {
    throw LayoutError(std::string("character not in layout: '") + c + "'");
  }
  return locate(layout, c);
}

std::vector<ItemPos> phrase_items(const Layout& layout, std::string_view phrase) {
  std::vector<ItemPos> items;
  items.reserve(phrase.size());
  for (char c : phrase) items.push_back(phrase_item(layout, c));
  return items;
}

/// Turns waypoint visits into a uniformly sampled gaze stream.
class GazeGenerator {
 public:
  GazeGenerator(const SimParams& params, Point start) : p_(params), rng_(params.seed), pos_(start) {}

  void visit(Point target, double extra_hold_ms, std::vector<GazeSample>& out) {
    hold(pos_, uniform(p_.latency_ms), out);
    const double amplitude_deg = std::hypot(target.x - pos_.x, target.y - pos_.y) / p_.px_per_deg;
    const Point from = pos_;
    const double t0 = clock_ms_;
    const double duration = saccade_duration_ms(amplitude_deg, p_);
    emit_until(
        t0 + duration,
        [&](double t) {
          const double u = std::clamp((t - t0) / duration, 0.0, 1.0);
          return Point{from.x + u * (target.x - from.x), from.y + u * (target.y - from.y)};
        },
        false, out);
    pos_ = target;
    hold(target, uniform(p_.fixation_ms) * p_.expertise + extra_hold_ms, out);
  }

  bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

 private:
  double uniform(const MsRange& r) { return std::uniform_real_distribution<double>(r.min_ms, r.max_ms)(rng_); }

  void hold(Point at, double duration_ms, std::vector<GazeSample>& out) {
    emit_until(clock_ms_ + duration_ms, [at](double) { return at; }, true, out);
  }

  template <typename PathFn>
  void emit_until(double end_ms, PathFn&& path, bool jitter, std::vector<GazeSample>& out) {
    for (;;) {
      const double t = static_cast<double>(next_index_) * 1000.0 / p_.sample_rate_hz;
      if (!(t < end_ms)) break;
      Point p = path(t);
      if (jitter) {
        p.x += p_.jitter_sigma_px * normal_(rng_);
        p.y += p_.jitter_sigma_px * normal_(rng_);
      }
      p.x += p_.tracker_sigma_px * normal_(rng_);
      p.y += p_.tracker_sigma_px * normal_(rng_);
      out.push_back({t, p.x, p.y});
      ++next_index_;
    }
    clock_ms_ = end_ms;
  }

  SimParams p_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  Point pos_;
  double clock_ms_ = 0.0;
  std::uint64_t next_index_ = 0;
};

double character_hold_ms(const Strategy& strategy, const SimParams& params) {
  if (const auto* dwell = std::get_if<Dwell>(&strategy)) return dwell->dwell_ms + params.sample_period_ms();
  return 0.0;
}

TraceMeta simulator_meta(std::string_view phrase, const PieConfig& cfg, const Strategy& strategy,
                         const SimParams& params) {
  TraceMeta meta;
  meta.source = "simulator";
  meta.phrase = std::string(phrase);
  meta.config = cfg;
  meta.strategy = strategy;
  meta.sim = params;
  return meta;
}

}  // namespace

std::vector<Waypoint> plan_waypoints(std::string_view phrase, const PieConfig& cfg, const Layout& layout) {
  std::vector<Waypoint> out;
  std::optional<int> focus;
  for (const ItemPos& item : phrase_items(layout, phrase)) {
    const auto step = plan_item(cfg, layout, item, focus);
    out.insert(out.end(), step.begin(), step.end());
    focus = item.slice;
  }
  return out;
}

Point rest_point(const PieConfig& cfg) { return from_polar(cfg, cfg.selection_outer_px() + 60.0, 0.0); }

double saccade_duration_ms(double amplitude_deg, const SimParams& params) {
  return std::clamp(20.0 + 2.0 * amplitude_deg, params.saccade_ms.min_ms, params.saccade_ms.max_ms);
}

GazeTrace synthesize(std::string_view phrase, const PieConfig& cfg, const Layout& layout,
                     const SimParams& params, const Strategy& strategy) {
  validate(params);
  const auto plan = plan_waypoints(phrase, cfg, layout);
  const double char_hold = character_hold_ms(strategy, params);
  GazeGenerator gen(params, rest_point(cfg));
  GazeTrace trace;
  trace.meta = simulator_meta(phrase, cfg, strategy, params);
  for (const auto& wp : plan) {
    gen.visit(wp.target, wp.purpose == WaypointPurpose::Character ? char_hold : 0.0, trace.samples);
  }
  return trace;
}

SimulationOutcome simulate_user(std::string_view phrase, const PieConfig& cfg, const Layout& layout,
                                const SimParams& params, const Strategy& strategy) {
  validate(params);
  validate(cfg);
  const auto targets = phrase_items(layout, phrase);
  const ItemPos clear_key = locate(layout, ItemAction::clear());
  const double char_hold = character_hold_ms(strategy, params);

  GazeGenerator gen(params, rest_point(cfg));
  EngineState state = initial_state(strategy);
  SimulationOutcome outcome;
  outcome.trace.meta = simulator_meta(phrase, cfg, strategy, params);
  auto& samples = outcome.trace.samples;

  auto attempt = [&](ItemPos target) {
    const std::size_t first = samples.size();
    for (const auto& wp : plan_item(cfg, layout, target, state.focused)) {
      gen.visit(wp.target, wp.purpose == WaypointPurpose::Character ? char_hold : 0.0, samples);
    }
    for (std::size_t k = first; k < samples.size(); ++k) advance(state, cfg, layout, samples[k]);
  };

  // Clears and retypes until the transcript reads `goal` again.
  auto restore = [&](const std::string& goal) {
    const std::size_t budget = 3 * static_cast<std::size_t>(params.max_retries + 1) + state.buffer.size();
    for (std::size_t n = 0; n < budget && state.buffer != goal; ++n) {
      const std::string& buf = state.buffer;
      const bool short_prefix = buf.size() < goal.size() && goal.compare(0, buf.size(), buf) == 0;
      attempt(short_prefix ? phrase_item(layout, goal[buf.size()]) : clear_key);
    }
    return state.buffer == goal;
  };

  int cutoffs = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string before = state.buffer;
    const std::string want = before + phrase[i];
    for (int failures = 1;; ++failures) {
      attempt(targets[i]);
      if (state.buffer == want) break;
      if (state.buffer != before) {
        if (!gen.chance(params.p_notice)) break;
        if (!restore(before)) {
          ++cutoffs;
          break;
        }
      }
      if (failures > params.max_retries) {
        ++cutoffs;
        break;
      }
    }
  }

  outcome.result = summarize(state, outcome.trace.duration_ms());
  outcome.result.retry_cutoffs = cutoffs;
  outcome.result.metrics = compute_metrics(outcome.result, phrase);
  return outcome;
}

}  // namespace quickpie
