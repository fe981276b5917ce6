#pragma once

#include <vector>

#include "quickpie/engine.hpp"
#include "quickpie/geometry.hpp"

namespace quickpie::testing {

/// Gaze sample at polar position (r, theta) about the pie center.
inline GazeSample polar_sample(const PieConfig& cfg, double t_ms, double r_px, double theta_deg) {
  const Point p = from_polar(cfg, r_px, theta_deg);
  return {t_ms, p.x, p.y};
}

/// Typing G on the default six-slice pie with a cursor that wobbles across
/// the outer edge of the character ring (r = 340 px) twice on its way out:
/// slice FGHIJ, G's cell, 345, 335, 345, then well into the selection ring.
/// Without a safe ring 345 px is already selection; with a 20 px safe ring
/// it is safe.
inline std::vector<GazeSample> wobble_trace(const PieConfig& cfg) {
  const double dt = 1000.0 / 60.0;
  const double radii[] = {120, 290, 345, 335, 345, 400, 380};
  std::vector<GazeSample> out;
  for (std::size_t k = 0; k < std::size(radii); ++k) {
    out.push_back(polar_sample(cfg, static_cast<double>(k) * dt, radii[k], k == 0 ? 90.0 : 70.0));
  }
  return out;
}

/// Counts commits when `samples` are fed to a fresh engine.
inline int count_commits(const PieConfig& cfg, const Strategy& strategy, const std::vector<GazeSample>& samples) {
  Engine engine(cfg, strategy);
  for (const auto& s : samples) engine.feed(s);
  return static_cast<int>(engine.state().commit_log.size());
}

}  // namespace quickpie::testing
