#include <gtest/gtest.h>

#include <random>

#include "../support/oracles.hpp"
#include "quickpie/errors.hpp"
#include "quickpie/geometry.hpp"

using namespace quickpie;

namespace {

PieConfig six() { return PieConfig{}; }

PieConfig with_slices(int n) {
  PieConfig cfg;
  cfg.num_slices = n;
  return cfg;
}

Point at(const PieConfig& cfg, double r, double theta) { return from_polar(cfg, r, theta); }

}  // namespace

TEST(Angle, NormalizationIsTotal) {
  EXPECT_DOUBLE_EQ(Angle(-90).degrees(), 270.0);
  EXPECT_DOUBLE_EQ(Angle(720.5).degrees(), 0.5);
  EXPECT_DOUBLE_EQ(Angle(360).degrees(), 0.0);
  EXPECT_EQ(Angle(-1e-300).degrees(), 0.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> any(-1e7, 1e7);
  for (int i = 0; i < 10000; ++i) {
    const double d = Angle(any(rng)).degrees();
    ASSERT_GE(d, 0.0);
    ASSERT_LT(d, 360.0);
  }
}

TEST(PieConfig, Validation) {
  EXPECT_NO_THROW(validate(six()));
  EXPECT_THROW(validate(with_slices(1)), ConfigError);
  PieConfig cfg;
  cfg.pie_radius_px = 0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = {};
  cfg.char_width_px = -1;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = {};
  cfg.safe_width_px = 0;
  EXPECT_NO_THROW(validate(cfg));
  cfg.safe_width_px = -0.5;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = {};
  cfg.expand_deg = 60;  // beta = 180 = 3 * alpha
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg.expand_deg = 59.999;
  EXPECT_NO_THROW(validate(cfg));
  cfg.selection_width_px = std::nan("");
  EXPECT_THROW(validate(cfg), ConfigError);
}

TEST(PieConfig, WarnsWhenBetaExceedsTwoAlpha) {
  EXPECT_TRUE(config_warnings(six()).empty());
  PieConfig cfg;
  cfg.expand_deg = 31;
  EXPECT_EQ(config_warnings(cfg).size(), 1u);
}

TEST(SliceSpans, Unfocused) {
  const auto spans = slice_spans(six());
  ASSERT_EQ(spans.size(), 6u);
  EXPECT_DOUBLE_EQ(spans[1].start_deg, 60.0);
  EXPECT_DOUBLE_EQ(spans[1].end_deg, 120.0);
  const auto four = slice_spans(with_slices(4));
  double total = 0;
  for (const auto& s : four) {
    EXPECT_DOUBLE_EQ(s.width_deg(), 90.0);
    total += s.width_deg();
  }
  EXPECT_DOUBLE_EQ(total, 360.0);
}

TEST(SliceSpans, FocusedSliceGrowsNeighborsShrink) {
  const auto spans = slice_spans(six(), 1);
  EXPECT_DOUBLE_EQ(spans[1].start_deg, 40.0);
  EXPECT_DOUBLE_EQ(spans[1].end_deg, 140.0);
  EXPECT_DOUBLE_EQ(spans[0].start_deg, 0.0);
  EXPECT_DOUBLE_EQ(spans[0].end_deg, 40.0);
  EXPECT_DOUBLE_EQ(spans[2].start_deg, 140.0);
  EXPECT_DOUBLE_EQ(spans[2].end_deg, 180.0);
  EXPECT_DOUBLE_EQ(spans[3].width_deg(), 60.0);
}

TEST(SliceSpans, WrapAroundFocus) {
  const auto spans = slice_spans(six(), 0);
  EXPECT_DOUBLE_EQ(spans[0].start_deg, -20.0);
  EXPECT_DOUBLE_EQ(spans[0].end_deg, 80.0);
  EXPECT_DOUBLE_EQ(spans[5].start_deg, 300.0);
  EXPECT_DOUBLE_EQ(spans[5].end_deg, 340.0);
  EXPECT_TRUE(spans[0].contains(Angle(350)));
  EXPECT_FALSE(spans[5].contains(Angle(350)));
}

TEST(SliceSpans, RejectsBadFocus) {
  EXPECT_THROW(slice_spans(six(), 6), ConfigError);
  EXPECT_THROW(slice_spans(six(), -1), ConfigError);
}

// Span conservation, and agreement with a rendering of the oracle's
// ownership intervals sampled every 0.01 degrees.
TEST(SliceSpans, MatchDenseSamplingOfOracle) {
  for (int n = 2; n <= 14; ++n) {
    PieConfig cfg = with_slices(n);
    cfg.expand_deg = std::min(20.0, 0.45 * 360.0 / n);
    for (int f = -1; f < n; ++f) {
      const std::optional<int> focus = f < 0 ? std::nullopt : std::optional<int>(f);
      const auto spans = slice_spans(cfg, focus);
      double total = 0;
      for (const auto& s : spans) total += s.width_deg();
      ASSERT_NEAR(total, 360.0, 1e-9);

      std::vector<int> owned(static_cast<std::size_t>(n), 0);
      const auto intervals = oracle::slice_intervals(cfg, focus);
      for (int k = 0; k < 36000; ++k) {
        const double theta = (k + 0.5) * 0.01;
        int owners = 0;
        for (const auto& iv : intervals) {
          if (oracle::in_interval(theta, iv.start, iv.end)) {
            ++owners;
            ++owned[static_cast<std::size_t>(iv.owner)];
            ASSERT_TRUE(spans[static_cast<std::size_t>(iv.owner)].contains(Angle(theta)));
          }
        }
        ASSERT_EQ(owners, 1) << "theta " << theta;
      }
      for (int i = 0; i < n; ++i) {
        EXPECT_NEAR(owned[static_cast<std::size_t>(i)] * 0.01, spans[static_cast<std::size_t>(i)].width_deg(), 0.011);
      }
    }
  }
}

TEST(CellAngle, SixSliceDefaults) {
  const auto cfg = six();
  const auto layout = build_layout(6);
  EXPECT_EQ(cfg.alpha_deg(), 60.0);
  EXPECT_EQ(cfg.beta_deg(), 100.0);
  EXPECT_EQ(cell_angle_deg(cfg, layout, 0), 20.0);
  EXPECT_NEAR(cell_angle_deg(cfg, layout, 5), 100.0 / 3.0, 1e-12);
}

TEST(HitTest, CenterIsSliceZero) {
  const auto cfg = six();
  const auto layout = build_layout(6);
  const auto hit = hit_test(cfg, layout, std::nullopt, {0, 0});
  EXPECT_EQ(hit.kind, RegionKind::PieSlice);
  EXPECT_EQ(hit.index, 0);
  EXPECT_EQ(hit.theta_deg, 0.0);
}

TEST(HitTest, CharacterRingOfFocusedSlice) {
  const auto cfg = six();
  const auto layout = build_layout(6);
  const auto h = hit_test(cfg, layout, 1, at(cfg, 290, 95));
  EXPECT_EQ(h.kind, RegionKind::CharCell);
  EXPECT_EQ(h.index, 2);
  EXPECT_EQ(layout.at({1, h.index}).label, "H");
  EXPECT_EQ(hit_test(cfg, layout, 1, at(cfg, 290, 30)).kind, RegionKind::Background);
  EXPECT_EQ(hit_test(cfg, layout, std::nullopt, at(cfg, 290, 95)).kind, RegionKind::Background);
}

TEST(HitTest, RadialBandsInnerEdgeOwnership) {
  const auto cfg = six();
  const auto layout = build_layout(6);
  auto kind = [&](double r) { return hit_test(cfg, layout, 1, at(cfg, r, 90)).kind; };
  EXPECT_EQ(kind(239.9), RegionKind::PieSlice);
  EXPECT_EQ(kind(240.1), RegionKind::CharCell);
  EXPECT_EQ(kind(339.9), RegionKind::CharCell);
  EXPECT_EQ(kind(340.1), RegionKind::Safe);
  EXPECT_EQ(kind(359.9), RegionKind::Safe);
  EXPECT_EQ(kind(360.1), RegionKind::Selection);
  EXPECT_EQ(kind(479.9), RegionKind::Selection);
  EXPECT_EQ(kind(480.1), RegionKind::Background);
  // exact radii on axis-aligned points: r = 240 is inside the pie
  EXPECT_EQ(hit_test(cfg, layout, 1, {240, 0}).kind, RegionKind::PieSlice);
  EXPECT_EQ(hit_test(cfg, layout, 1, {340, 0}).kind, RegionKind::CharCell);
  EXPECT_EQ(hit_test(cfg, layout, 1, {360, 0}).kind, RegionKind::Safe);
}

TEST(HitTest, ZeroWidthSafeRing) {
  PieConfig cfg;
  cfg.safe_width_px = 0;
  const auto layout = build_layout(6);
  EXPECT_EQ(hit_test(cfg, layout, 1, at(cfg, 340.5, 90)).kind, RegionKind::Selection);
}

TEST(HitTest, ExpandedSpanOwnsPieInterior) {
  const auto cfg = six();
  const auto layout = build_layout(6);
  EXPECT_EQ(hit_test(cfg, layout, 1, at(cfg, 100, 45)).index, 1);
  EXPECT_EQ(hit_test(cfg, layout, std::nullopt, at(cfg, 100, 45)).index, 0);
}

TEST(HitTest, LayoutMismatchRejected) {
  EXPECT_THROW(hit_test(six(), build_layout(5), std::nullopt, {0, 0}), ConfigError);
}

TEST(CellCenter, RoundTrips) {
  PieConfig cfg;
  cfg.center_x_px = 682;
  cfg.center_y_px = 384;
  const auto layout = build_layout(6);
  const Polar g = to_polar(cfg, cell_center(cfg, layout, 1, 1));
  EXPECT_NEAR(g.theta.degrees(), 70.0, 1e-9);
  EXPECT_NEAR(g.r_px, 290.0, 1e-9);
  const Polar a = to_polar(cfg, cell_center(cfg, layout, 0, 0));
  EXPECT_NEAR(a.theta.degrees(), 350.0, 1e-9);

  for (int n = kMinSlices; n <= kMaxSlices; ++n) {
    PieConfig c = cfg;
    c.num_slices = n;
    c.expand_deg = std::min(20.0, 0.4 * c.alpha_deg());
    const auto l = build_layout(n);
    for (int f = 0; f < n; ++f) {
      for (int i = 0; i < l.items_in(f); ++i) {
        const auto hit = hit_test(c, l, f, cell_center(c, l, f, i));
        ASSERT_EQ(hit.kind, RegionKind::CharCell);
        ASSERT_EQ(hit.index, i);
      }
    }
  }
  EXPECT_THROW(cell_center(cfg, layout, 1, 5), LayoutError);
  EXPECT_THROW(cell_center(cfg, layout, 6, 0), LayoutError);
}

// Partition property against the interval-scan oracle on random configs.
TEST(HitTest, AgreesWithOracleOnRandomPoints) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> slices(kMinSlices, kMaxSlices);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (int c = 0; c < 30; ++c) {
    PieConfig cfg;
    cfg.num_slices = slices(rng);
    cfg.pie_radius_px = 50 + 300 * unit(rng);
    cfg.char_width_px = 20 + 150 * unit(rng);
    cfg.safe_width_px = c % 5 == 0 ? 0.0 : 40 * unit(rng);
    cfg.selection_width_px = 10 + 200 * unit(rng);
    cfg.expand_deg = 0.95 * cfg.alpha_deg() * unit(rng);
    cfg.center_x_px = 1000 * unit(rng);
    cfg.center_y_px = 800 * unit(rng);
    const auto layout = build_layout(cfg.num_slices);
    const double extent = cfg.selection_outer_px() * 1.2;
    for (int k = 0; k < 2000; ++k) {
      std::optional<int> focus;
      if (k % 4 != 0) focus = static_cast<int>(unit(rng) * cfg.num_slices);
      const double x = cfg.center_x_px + extent * (2 * unit(rng) - 1);
      const double y = cfg.center_y_px + extent * (2 * unit(rng) - 1);
      const auto hit = hit_test(cfg, layout, focus, {x, y});
      const auto want = oracle::classify(cfg, layout, focus, x, y);
      ASSERT_EQ(hit.kind, want.kind) << "config " << c << " point " << k;
      if (want.kind == RegionKind::PieSlice || want.kind == RegionKind::CharCell) {
        ASSERT_EQ(hit.index, want.index);
      }
      ++checked;
    }
  }
  EXPECT_EQ(checked, 60000);
}
