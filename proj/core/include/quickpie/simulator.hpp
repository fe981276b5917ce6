#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quickpie/engine.hpp"
#include "quickpie/geometry.hpp"
#include "quickpie/layout.hpp"
#include "quickpie/metrics.hpp"
#include "quickpie/trace.hpp"

namespace quickpie {

enum class WaypointPurpose { FocusSlice, Character, Commit };

std::string to_string(WaypointPurpose purpose);

struct Waypoint {
  Point target;
  WaypointPurpose purpose = WaypointPurpose::Character;
  ItemPos item;
};

/// Waypoints for entering one item given the slice currently focused.
///
/// A slice change first visits the target slice's pie sector (0.6 R, at the
/// angular middle of the part of the sector that is hittable under the
/// current focus). Then the item's cell center, then the selection ring
/// straight outward from it.
std::vector<Waypoint> plan_item(const PieConfig& cfg, const Layout& layout, ItemPos target,
                                std::optional<int> current_focus);

/// Waypoints for a whole phrase starting from an unfocused pie. Repeated
/// letters of one slice skip the pie visit. Throws LayoutError for
/// characters other than a-z and space.
std::vector<Waypoint> plan_waypoints(std::string_view phrase, const PieConfig& cfg, const Layout& layout);

/// Where the simulated gaze rests before the first movement: above the pie,
/// outside every ring.
Point rest_point(const PieConfig& cfg);

/// Saccade duration for an amplitude in degrees: 20 + 2 * amplitude,
/// clamped to the configured range.
double saccade_duration_ms(double amplitude_deg, const SimParams& params);

/// Open-loop gaze trace for `phrase`. Each waypoint gets a latency pause at
/// the current position, a straight saccade and a fixation of
/// uniform(fixation_ms) * expertise. Fixation and pause samples carry
/// Gaussian jitter; all samples carry tracker noise. Under Dwell the
/// fixation on each character cell is extended by the dwell time plus one
/// sample period. Deterministic for a fixed seed.
GazeTrace synthesize(std::string_view phrase, const PieConfig& cfg, const Layout& layout,
                     const SimParams& params, const Strategy& strategy = BorderCrossing{});

struct SimulationOutcome {
  GazeTrace trace;
  SessionResult result;
};

/// Closed-loop typing: after each attempt the simulated user compares the
/// transcript with what it meant to type. A wrong commit is noticed with
/// probability p_notice and undone with CLEAR before retrying; an attempt
/// that commits nothing is retried. A character is abandoned after
/// max_retries failed attempts (counted in result.retry_cutoffs).
SimulationOutcome simulate_user(std::string_view phrase, const PieConfig& cfg, const Layout& layout,
                                const SimParams& params, const Strategy& strategy = BorderCrossing{});

}  // namespace quickpie
