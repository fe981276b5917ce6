#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quickpie/layout.hpp"

namespace quickpie {

/// Geometry of the interface. Lengths are screen pixels, angles degrees.
struct PieConfig {
  int num_slices = 6;
  double pie_radius_px = 240.0;
  double char_width_px = 100.0;
  double safe_width_px = 20.0;
  double selection_width_px = 120.0;
  double expand_deg = 20.0;  // growth of the focused slice on each side
  double center_x_px = 0.0;
  double center_y_px = 0.0;

  /// Unexpanded slice angle, 360 / num_slices.
  double alpha_deg() const { return 360.0 / num_slices; }
  /// Focused slice angle, alpha + 2 * expand.
  double beta_deg() const { return alpha_deg() + 2.0 * expand_deg; }

  double char_outer_px() const { return pie_radius_px + char_width_px; }
  double safe_outer_px() const { return char_outer_px() + safe_width_px; }
  double selection_outer_px() const { return safe_outer_px() + selection_width_px; }

  bool operator==(const PieConfig&) const = default;
};

/// Throws ConfigError describing the first violated constraint.
void validate(const PieConfig& cfg);

/// Non-fatal observations about a valid config (e.g. beta > 2 * alpha).
std::vector<std::string> config_warnings(const PieConfig& cfg);

/// Maps any finite angle into [0, 360).
double normalize_degrees(double deg);

/// Angle measured clockwise from 12 o'clock, always in [0, 360).
class Angle {
 public:
  Angle() = default;
  explicit Angle(double deg) : deg_(normalize_degrees(deg)) {}
  double degrees() const { return deg_; }
  bool operator==(const Angle&) const = default;

 private:
  double deg_ = 0.0;
};

/// Half-open angular interval [start_deg, end_deg). `start_deg` is not
/// normalized: a focused slice 0 starts below zero.
struct SliceSpan {
  int slice = 0;
  double start_deg = 0.0;
  double end_deg = 0.0;

  double width_deg() const { return end_deg - start_deg; }
  double center_deg() const { return 0.5 * (start_deg + end_deg); }
  bool contains(Angle theta) const;
};

/// Spans of all slices in index order; with a focus, the focused slice grows
/// to beta and each neighbor loses `expand_deg` on the side facing it. The
/// spans always partition the circle.
std::vector<SliceSpan> slice_spans(const PieConfig& cfg, std::optional<int> focused = std::nullopt);

/// Per-item cell angle of `slice` while it is focused: beta / items in slice.
double cell_angle_deg(const PieConfig& cfg, const Layout& layout, int slice);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Polar {
  double r_px = 0.0;
  Angle theta;
};

/// Polar coordinates about the pie center. The center itself has theta 0.
Polar to_polar(const PieConfig& cfg, Point p);
Point from_polar(const PieConfig& cfg, double r_px, double theta_deg);

enum class RegionKind { PieSlice, CharCell, Safe, Selection, Background };

std::string to_string(RegionKind kind);

struct RegionHit {
  RegionKind kind = RegionKind::Background;
  int index = -1;  // slice for PieSlice, item for CharCell, -1 otherwise
  double r_px = 0.0;
  double theta_deg = 0.0;

  bool operator==(const RegionHit&) const = default;
};

/// Classifies a screen point. Radial bands are (inner, outer]: the pie disk
/// owns r <= R, then the character ring, the safe ring and the selection
/// ring. The rings exist only inside the focused slice's expanded span.
RegionHit hit_test(const PieConfig& cfg, const Layout& layout, std::optional<int> focused, Point p);

/// Center of an item's cell on the character ring of the focused slice.
/// Throws LayoutError for an out-of-range slice or item.
Point cell_center(const PieConfig& cfg, const Layout& layout, int focused, int item);

}  // namespace quickpie
