#include "quickpie/geometry.hpp"

#include <cmath>
#include <numbers>

#include "quickpie/errors.hpp"

namespace quickpie {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

bool finite_all(std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

void validate(const PieConfig& cfg) {
  if (cfg.num_slices < 2) {
    throw ConfigError("num_slices must be >= 2, got " + std::to_string(cfg.num_slices));
  }
  if (!finite_all({cfg.pie_radius_px, cfg.char_width_px, cfg.safe_width_px,
                   cfg.selection_width_px, cfg.expand_deg, cfg.center_x_px, cfg.center_y_px})) {
    throw ConfigError("config values must be finite");
  }
  if (cfg.pie_radius_px <= 0) throw ConfigError("pie_radius_px must be > 0");
  if (cfg.char_width_px <= 0) throw ConfigError("char_width_px must be > 0");
  if (cfg.safe_width_px < 0) throw ConfigError("safe_width_px must be >= 0");
  if (cfg.selection_width_px <= 0) throw ConfigError("selection_width_px must be > 0");
  if (cfg.expand_deg < 0) throw ConfigError("expand_deg must be >= 0");
  if (!(cfg.beta_deg() < 3.0 * cfg.alpha_deg())) {
    throw ConfigError("expanded angle " + std::to_string(cfg.beta_deg()) +
                      " must be less than 3 * slice angle " + std::to_string(3.0 * cfg.alpha_deg()));
  }
  if (!(cfg.expand_deg < cfg.alpha_deg())) {
    throw ConfigError("expand_deg must be less than the slice angle");
  }
}

std::vector<std::string> config_warnings(const PieConfig& cfg) {
  std::vector<std::string> out;
  if (cfg.beta_deg() > 2.0 * cfg.alpha_deg()) {
    out.push_back("expanded angle exceeds twice the slice angle; neighbors keep less than half their area");
  }
  return out;
}

double normalize_degrees(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0) r += 360.0;
  // fmod of a tiny negative value lands exactly on 360 after the shift
  if (r >= 360.0) r = 0.0;
  return r;
}

bool SliceSpan::contains(Angle theta) const {
  return normalize_degrees(theta.degrees() - start_deg) < width_deg();
}

std::vector<SliceSpan> slice_spans(const PieConfig& cfg, std::optional<int> focused) {
  validate(cfg);
  const int n = cfg.num_slices;
  const double alpha = cfg.alpha_deg();
  std::vector<SliceSpan> spans;
  spans.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    spans.push_back({i, i * alpha, (i + 1) * alpha});
  }
  if (!focused) return spans;
  const int f = *focused;
  if (f < 0 || f >= n) throw ConfigError("focused slice out of range: " + std::to_string(f));

  const double e = cfg.expand_deg;
  const int before = (f + n - 1) % n;
  const int after = (f + 1) % n;
  auto& grown = spans[static_cast<std::size_t>(f)];
  grown.start_deg -= e;
  grown.end_deg += e;
  // Slice 0's start sits at 0 rather than 360, so the wrap-around neighbor
  // edges are expressed in its frame.
  spans[static_cast<std::size_t>(before)].end_deg -= e;
  spans[static_cast<std::size_t>(after)].start_deg += e;
  return spans;
}

double cell_angle_deg(const PieConfig& cfg, const Layout& layout, int slice) {
  return cfg.beta_deg() / layout.items_in(slice);
}

Polar to_polar(const PieConfig& cfg, Point p) {
  const double dx = p.x - cfg.center_x_px;
  const double dy = p.y - cfg.center_y_px;
  const double r = std::hypot(dx, dy);
  if (r == 0.0) return {0.0, Angle(0.0)};
  // screen y grows downward; 12 o'clock is -y and clockwise is +x
  return {r, Angle(std::atan2(dx, -dy) * kDegPerRad)};
}

Point from_polar(const PieConfig& cfg, double r_px, double theta_deg) {
  const double t = theta_deg / kDegPerRad;
  return {cfg.center_x_px + r_px * std::sin(t), cfg.center_y_px - r_px * std::cos(t)};
}

std::string to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::PieSlice:
      return "pie_slice";
    case RegionKind::CharCell:
      return "char_cell";
    case RegionKind::Safe:
      return "safe";
    case RegionKind::Selection:
      return "selection";
    case RegionKind::Background:
      return "background";
  }
  return "?";
}

RegionHit hit_test(const PieConfig& cfg, const Layout& layout, std::optional<int> focused, Point p) {
  if (layout.num_slices() != cfg.num_slices) {
    throw ConfigError("layout has " + std::to_string(layout.num_slices()) + " slices, config has " +
                      std::to_string(cfg.num_slices));
  }
  const auto spans = slice_spans(cfg, focused);
  const Polar polar = to_polar(cfg, p);
  RegionHit hit{RegionKind::Background, -1, polar.r_px, polar.theta.degrees()};

  if (polar.r_px <= cfg.pie_radius_px) {
    for (const auto& span : spans) {
      if (span.contains(polar.theta)) {
        hit.kind = RegionKind::PieSlice;
        hit.index = span.slice;
        return hit;
      }
    }
    return hit;  // unreachable: spans partition the circle
  }
  if (!focused) return hit;

  const auto& span = spans[static_cast<std::size_t>(*focused)];
  if (!span.contains(polar.theta)) return hit;

  if (polar.r_px <= cfg.char_outer_px()) {
    const int n = layout.items_in(*focused);
    const double offset = normalize_degrees(polar.theta.degrees() - span.start_deg);
    const int cell = static_cast<int>(offset / cell_angle_deg(cfg, layout, *focused));
    hit.kind = RegionKind::CharCell;
    hit.index = cell < n ? cell : n - 1;
  } else if (polar.r_px <= cfg.safe_outer_px()) {
    hit.kind = RegionKind::Safe;
  } else if (polar.r_px <= cfg.selection_outer_px()) {
    hit.kind = RegionKind::Selection;
  }
  return hit;
}

Point cell_center(const PieConfig& cfg, const Layout& layout, int focused, int item) {
  const int n = layout.items_in(focused);
  if (item < 0 || item >= n) {
    throw LayoutError("item index out of range: " + std::to_string(item));
  }
  const auto span = slice_spans(cfg, focused)[static_cast<std::size_t>(focused)];
  const double gamma = cell_angle_deg(cfg, layout, focused);
  return from_polar(cfg, cfg.pie_radius_px + 0.5 * cfg.char_width_px,
                    span.start_deg + (item + 0.5) * gamma);
}

}  // namespace quickpie
