#include "quickpie/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "quickpie/errors.hpp"

namespace quickpie {

std::size_t edit_distance(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

Metrics compute_metrics(const SessionResult& result, std::string_view target) {
  if (result.duration_ms < 0) throw SessionError("negative session duration");
  if (result.duration_ms == 0 && !result.transcribed.empty()) {
    throw SessionError("nonempty transcript typed in zero time");
  }
  Metrics m;
  if (result.duration_ms > 0) {
    m.wpm = (static_cast<double>(result.transcribed.size()) / 5.0) * (60000.0 / result.duration_ms);
  }
  const auto uncorrected = static_cast<double>(edit_distance(result.transcribed, target));
  const double typed = std::max(1, result.total_typed);
  m.uncorrected_error_pct = std::min(100.0, 100.0 * uncorrected / typed);
  m.corrections = result.clear_count;
  m.kspc = static_cast<double>(result.commit_log.size()) /
           static_cast<double>(std::max<std::size_t>(1, target.size()));
  return m;
}

SessionResult summarize(const EngineState& state, double duration_ms) {
  SessionResult r;
  r.transcribed = state.buffer;
  r.commit_log = state.commit_log;
  r.duration_ms = duration_ms;
  for (const auto& c : state.commit_log) {
    if (c.action.types_text()) {
      ++r.total_typed;
    } else {
      ++r.clear_count;
    }
  }
  return r;
}

}  // namespace quickpie
