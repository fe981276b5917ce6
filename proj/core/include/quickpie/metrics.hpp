#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "quickpie/engine.hpp"

namespace quickpie {

struct Metrics {
  double wpm = 0.0;
  double uncorrected_error_pct = 0.0;
  int corrections = 0;
  double kspc = 0.0;

  bool operator==(const Metrics&) const = default;
};

/// Outcome of one typing session.
struct SessionResult {
  std::string transcribed;
  std::vector<CommitRecord> commit_log;
  double duration_ms = 0.0;  // first to last sample
  int total_typed = 0;       // text-producing commits, cleared ones included
  int clear_count = 0;
  int retry_cutoffs = 0;     // characters the simulated user gave up on
  Metrics metrics;

  bool operator==(const SessionResult&) const = default;
};

/// Unit-cost Levenshtein distance.
std::size_t edit_distance(std::string_view a, std::string_view b);

/// wpm uses five characters per word. The uncorrected error is the edit
/// distance from transcript to target over the characters typed (cleared
/// ones included), capped at 100%. kspc is commits per target character.
///
/// Throws SessionError for a nonempty transcript typed in zero time.
Metrics compute_metrics(const SessionResult& result, std::string_view target);

/// Builds the session summary from a finished engine state.
SessionResult summarize(const EngineState& state, double duration_ms);

}  // namespace quickpie
