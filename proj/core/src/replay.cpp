#include "quickpie/replay.hpp"

namespace quickpie {

SessionResult replay(const GazeTrace& trace, const PieConfig& cfg, const Layout& layout,
                     const Strategy& strategy, const std::optional<std::string>& target) {
  EngineState state = initial_state(strategy);
  for (const auto& sample : trace.samples) advance(state, cfg, layout, sample);
  SessionResult result = summarize(state, trace.duration_ms());
  result.metrics = compute_metrics(result, target ? *target : result.transcribed);
  return result;
}

}  // namespace quickpie
