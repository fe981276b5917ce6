#pragma once

#include <optional>
#include <string>

#include "quickpie/engine.hpp"
#include "quickpie/metrics.hpp"
#include "quickpie/trace.hpp"

namespace quickpie {

/// Folds every sample of `trace` through a fresh engine. Metrics are scored
/// against `target`, or against the transcript itself when none is given.
/// Throws SampleOrderError if timestamps do not strictly increase.
SessionResult replay(const GazeTrace& trace, const PieConfig& cfg, const Layout& layout,
                     const Strategy& strategy, const std::optional<std::string>& target = std::nullopt);

}  // namespace quickpie
