#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quickpie/engine.hpp"
#include "quickpie/geometry.hpp"
#include "quickpie/serialization.hpp"
#include "quickpie/trace.hpp"

namespace quickpie {

/// Lowercase pangram-style stimulus phrases used when a sweep names none.
/// The first one is exactly 30 characters long.
const std::vector<std::string>& default_phrases();

/// Grid of interface designs to simulate. Cells run in the order
/// slice count, then width, then strategy.
struct SweepSpec {
  std::vector<int> slice_counts;
  std::vector<double> char_widths_px;
  std::vector<Strategy> strategies;
  std::vector<std::string> phrases;
  std::vector<std::uint64_t> seeds;
  PieConfig base_config;  // num_slices and char_width_px are overridden per cell
  SimParams sim;          // seed is overridden per run

  bool operator==(const SweepSpec&) const = default;
};

/// Throws ConfigError for empty lists. Per-cell config problems are not
/// checked here; they show up as rows with an error.
void validate(const SweepSpec& spec);

/// Sweep spec files are JSON objects:
///   {"slices": [4,5,6,7], "char_widths_px": [100],
///    "strategies": ["border_crossing", "dwell:400"],
///    "phrases": [...], "seeds": [1,2,3],
///    "config": {<PieConfig fields>}, "sim": {<SimParams fields>}}
/// "phrases", "config" and "sim" are optional.
SweepSpec sweep_spec_from_json(const json& j);
json to_json(const SweepSpec& spec);
SweepSpec load_sweep_spec(const std::string& path);

/// Built-in grids: "slices" (4-7 slices at 100 px), "widths" (6 slices at
/// 80-140 px) and "selection" (6 slices at 120 px, border crossing against
/// a 400 ms dwell). Throws ConfigError for other names.
SweepSpec preset(const std::string& name);
std::vector<std::string> preset_names();

struct SweepRow {
  int slices = 0;
  double width_px = 0.0;
  Strategy strategy;
  double mean_wpm = 0.0;
  double mean_error_pct = 0.0;
  int n = 0;
  std::string error;  // nonempty when the cell's config is invalid

  bool operator==(const SweepRow&) const = default;
};

/// Simulates every phrase x seed in every cell and averages. Cells may run
/// on up to `threads` workers (0 = hardware concurrency); results do not
/// depend on the schedule.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0);

inline constexpr const char* kSweepCsvHeader = "slices,width_px,strategy,mean_wpm,mean_error_pct,n";

/// Header line plus one row per cell. Invalid cells print NA for the means.
std::string to_csv(const std::vector<SweepRow>& rows);

}  // namespace quickpie
