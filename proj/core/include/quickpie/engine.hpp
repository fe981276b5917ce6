#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "quickpie/geometry.hpp"
#include "quickpie/layout.hpp"

namespace quickpie {

struct GazeSample {
  double t_ms = 0.0;
  double x_px = 0.0;
  double y_px = 0.0;

  bool operator==(const GazeSample&) const = default;
};

/// Commit by moving from the character ring into the selection ring.
struct BorderCrossing {
  /// Test-only: commit on every entry into the selection ring while a
  /// character is highlighted, ignoring the arming rule.
  bool always_armed = false;

  bool operator==(const BorderCrossing&) const = default;
};

/// Commit by resting on one character cell for `dwell_ms`.
struct Dwell {
  double dwell_ms = 400.0;

  bool operator==(const Dwell&) const = default;
};

using Strategy = std::variant<BorderCrossing, Dwell>;

/// "border_crossing" or "dwell:<ms>".
std::string to_string(const Strategy& strategy);
/// Accepts "border_crossing", "border", "dwell" (400 ms) and "dwell:<ms>".
Strategy parse_strategy(const std::string& text);

struct CommitRecord {
  double t_ms = 0.0;
  ItemPos pos;
  ItemAction action;
  std::size_t buffer_len = 0;  // transcript length after the commit

  bool operator==(const CommitRecord&) const = default;
};

struct EngineState {
  std::optional<int> focused;
  std::optional<int> highlighted;
  bool armed = false;
  std::string buffer;
  std::vector<CommitRecord> commit_log;
  Strategy strategy;
  double dwell_accum_ms = 0.0;

  // Bookkeeping for edge detection; not part of the displayed state.
  std::optional<double> last_t_ms;
  RegionKind last_region = RegionKind::Background;
  double cell_entry_t_ms = 0.0;

  bool operator==(const EngineState&) const = default;
};

EngineState initial_state(Strategy strategy = BorderCrossing{});

enum class EventKind { FocusChanged, HighlightChanged, Committed, BufferChanged, NoChange };

std::string to_string(EventKind kind);

struct EngineEvent {
  EventKind kind = EventKind::NoChange;
  double t_ms = 0.0;
  std::optional<ItemPos> item;  // set for Committed

  bool operator==(const EngineEvent&) const = default;
};

/// Advances `state` by one sample in place and returns what changed (a single
/// NoChange event when nothing did). Throws SampleOrderError, leaving `state`
/// untouched, if the sample is not strictly later than the previous one.
///
/// Border crossing: entering a slice's pie sector focuses it and clears the
/// highlight; a character cell highlights and arms; the safe ring does
/// nothing; entering the selection ring while armed commits the highlighted
/// item and disarms. Only the character ring re-arms, so jitter across either
/// boundary of the safe ring cannot repeat a commit.
///
/// Dwell: a commit fires once the gaze has stayed inside one cell for
/// `dwell_ms`; the cell must be left before it can fire again.
std::vector<EngineEvent> advance(EngineState& state, const PieConfig& cfg, const Layout& layout,
                                 const GazeSample& sample);

struct StepResult {
  EngineState state;
  std::vector<EngineEvent> events;
};

/// Value-semantics form of `advance`.
StepResult step(EngineState state, const PieConfig& cfg, const Layout& layout, const GazeSample& sample);

/// One typing session: owns its config, layout and state.
class Engine {
 public:
  Engine(PieConfig cfg, Strategy strategy = BorderCrossing{});

  std::vector<EngineEvent> feed(const GazeSample& sample) { return advance(state_, cfg_, layout_, sample); }
  void reset() { state_ = initial_state(state_.strategy); }

  const PieConfig& config() const { return cfg_; }
  const Layout& layout() const { return layout_; }
  const EngineState& state() const { return state_; }

 private:
  PieConfig cfg_;
  Layout layout_;
  EngineState state_;
};

}  // namespace quickpie
