#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quickpie/engine.hpp"
#include "quickpie/geometry.hpp"

namespace quickpie {

struct MsRange {
  double min_ms = 0.0;
  double max_ms = 0.0;

  bool operator==(const MsRange&) const = default;
};

/// Synthetic user model. Timing defaults follow the usual oculomotor figures:
/// saccades of 30-120 ms, 100-200 ms of latency before a saccade and
/// fixations of 200-600 ms.
struct SimParams {
  std::uint64_t seed = 1;
  double sample_rate_hz = 60.0;
  double px_per_deg = 35.0;
  double jitter_sigma_px = 10.0;
  double tracker_sigma_px = 5.0;
  MsRange fixation_ms{200.0, 600.0};
  MsRange latency_ms{100.0, 200.0};
  MsRange saccade_ms{30.0, 120.0};
  double expertise = 1.0;  // scales fixation durations; 1 = novice
  double p_notice = 1.0;   // chance of spotting a wrong commit and clearing it
  int max_retries = 5;

  double sample_period_ms() const { return 1000.0 / sample_rate_hz; }
  bool operator==(const SimParams&) const = default;
};

/// Throws ConfigError on empty ranges, non-positive rates or probabilities
/// outside [0, 1].
void validate(const SimParams& params);

/// Where a trace came from and what it was meant to type.
struct TraceMeta {
  std::string source = "recording";  // "simulator" or "recording"
  std::string phrase;
  std::optional<PieConfig> config;
  std::optional<Strategy> strategy;
  std::optional<SimParams> sim;

  bool operator==(const TraceMeta&) const = default;
};

struct GazeTrace {
  std::vector<GazeSample> samples;
  TraceMeta meta;

  double duration_ms() const {
    return samples.empty() ? 0.0 : samples.back().t_ms - samples.front().t_ms;
  }
  bool operator==(const GazeTrace&) const = default;
};

/// Throws TraceError (with the 1-based sample position) unless timestamps
/// strictly increase.
void check_monotone(const GazeTrace& trace);

// Trace files are JSON Lines. The first record is a header:
//   {"record":"header","format":"quickpie-trace","version":1,"source":...,
//    "phrase":...,"config":{...}|null,"strategy":"..."|null,"sim":{...}|null}
// and every following non-blank line is one sample {"t_ms":..,"x":..,"y":..}.
// The header may be absent in hand-written traces.
inline constexpr int kTraceFormatVersion = 1;

void write_trace(std::ostream& out, const GazeTrace& trace);
/// Throws TraceError carrying the offending line number.
GazeTrace read_trace(std::istream& in);
/// Throws TraceError("file not found: ...") for unreadable paths.
GazeTrace load_trace(const std::string& path);
void save_trace(const std::string& path, const GazeTrace& trace);

}  // namespace quickpie
