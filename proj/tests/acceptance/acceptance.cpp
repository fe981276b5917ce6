// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Runs without the browser client.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "../support/traces.hpp"
#include "cli.hpp"
#include "quickpie/errors.hpp"
#include "quickpie/harness.hpp"
#include "quickpie/metrics.hpp"
#include "quickpie/replay.hpp"
#include "quickpie/simulator.hpp"

using namespace quickpie;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const std::string kPhrase30 = "waltz nymph for quick jigs vex";

Verdict geometry_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> slices(kMinSlices, kMaxSlices);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr int kConfigs = 25;
  constexpr int kPoints = 100000;
  long disagreements = 0;
  for (int c = 0; c < kConfigs; ++c) {
    PieConfig cfg;
    cfg.num_slices = slices(rng);
    cfg.pie_radius_px = 50 + 300 * unit(rng);
    cfg.char_width_px = 20 + 150 * unit(rng);
    cfg.safe_width_px = c % 4 == 0 ? 0.0 : 40 * unit(rng);
    cfg.selection_width_px = 10 + 200 * unit(rng);
    cfg.expand_deg = 0.95 * cfg.alpha_deg() * unit(rng);
    cfg.center_x_px = 1000 * unit(rng);
    cfg.center_y_px = 800 * unit(rng);
    validate(cfg);
    const auto layout = build_layout(cfg.num_slices);
    const double extent = cfg.selection_outer_px() * 1.2;
    for (int k = 0; k < kPoints / kConfigs; ++k) {
      std::optional<int> focus;
      if (k % 4 != 0) focus = static_cast<int>(unit(rng) * cfg.num_slices);
      const double x = cfg.center_x_px + extent * (2 * unit(rng) - 1);
      const double y = cfg.center_y_px + extent * (2 * unit(rng) - 1);
      const auto hit = hit_test(cfg, layout, focus, {x, y});
      const auto want = oracle::classify(cfg, layout, focus, x, y);
      const bool indexed = want.kind == RegionKind::PieSlice || want.kind == RegionKind::CharCell;
      if (hit.kind != want.kind || (indexed && hit.index != want.index)) ++disagreements;
    }
  }
  const double secs = seconds_since(t0);
  return {disagreements == 0 && secs < 10.0,
          std::to_string(kPoints) + " points, " + std::to_string(kConfigs) + " configs, " +
              std::to_string(disagreements) + " disagreements, " + fmt("%.2f s", secs)};
}

Verdict constants() {
  const PieConfig cfg;
  const auto layout = build_layout(cfg.num_slices);
  const double alpha = cfg.alpha_deg();
  const double beta = cfg.beta_deg();
  const double gamma = cell_angle_deg(cfg, layout, 0);
  bool rejected = false;
  PieConfig bad;
  bad.expand_deg = 60.0;  // beta = 180 = 3 alpha
  try {
    validate(bad);
  } catch (const ConfigError&) {
    rejected = true;
  }
  return {alpha == 60.0 && beta == 100.0 && gamma == 20.0 && rejected,
          fmt("alpha=%g", alpha) + fmt(" beta=%g", beta) + fmt(" gamma=%g", gamma) +
              (rejected ? " beta>=3alpha rejected" : " beta>=3alpha accepted")};
}

Verdict layout_fidelity() {
  const std::vector<std::vector<std::string>> want = {{"A", "B", "C", "D", "E"}, {"F", "G", "H", "I", "J"},
                                                      {"K", "L", "M", "N", "O"}, {"P", "Q", "R", "S", "T"},
                                                      {"U", "V", "W", "X", "Y"}, {"Z", "SPACE", "CLEAR"}};
  const auto layout = build_layout(6);
  std::vector<std::vector<std::string>> got;
  std::string text;
  for (const auto& slice : layout.slices) {
    got.emplace_back();
    text += "[";
    for (const auto& item : slice) {
      got.back().push_back(item.label);
      text += (text.back() == '[' ? "" : ",") + item.label;
    }
    text += "]";
  }
  return {got == want, text};
}

Verdict debounce() {
  PieConfig no_safe;
  no_safe.safe_width_px = 0;
  const PieConfig safe;
  const int naive = testing::count_commits(no_safe, BorderCrossing{true}, testing::wobble_trace(no_safe));
  const int armed = testing::count_commits(safe, BorderCrossing{}, testing::wobble_trace(safe));
  return {naive == 2 && armed == 1,
          "always-armed/no-safe: " + std::to_string(naive) + " commits, arming/safe=20: " + std::to_string(armed) +
              " commits"};
}

SimParams noiseless() {
  SimParams p;
  p.jitter_sigma_px = 0;
  p.tracker_sigma_px = 0;
  return p;
}

Verdict zero_noise_closed_loop() {
  int cells = 0;
  int failures = 0;
  std::string first_failure;
  for (int n = 4; n <= 7; ++n) {
    for (double width : {80.0, 100.0, 120.0, 140.0}) {
      for (const Strategy& strategy : {Strategy{BorderCrossing{}}, Strategy{Dwell{400}}}) {
        PieConfig cfg;
        cfg.num_slices = n;
        cfg.char_width_px = width;
        const auto out = simulate_user(kPhrase30, cfg, build_layout(n), noiseless(), strategy);
        ++cells;
        if (out.result.transcribed != kPhrase30 || out.result.metrics.uncorrected_error_pct != 0.0) {
          if (failures++ == 0) {
            first_failure = ", first failure: " + std::to_string(n) + " slices " + fmt("%g px ", width) +
                            to_string(strategy) + " -> \"" + out.result.transcribed + "\"";
          }
        }
      }
    }
  }
  return {failures == 0, std::to_string(cells) + " cells, " + std::to_string(failures) + " with errors" +
                             first_failure};
}

Verdict strategy_ordering() {
  int cells = 0;
  int violations = 0;
  double worst_gap = 1e9;
  for (int n = 4; n <= 7; ++n) {
    for (double width : {80.0, 100.0, 120.0, 140.0}) {
      PieConfig cfg;
      cfg.num_slices = n;
      cfg.char_width_px = width;
      const auto layout = build_layout(n);
      const Strategy bc = BorderCrossing{};
      const Strategy dwell = Dwell{400};
      const auto bc_trace = synthesize(kPhrase30, cfg, layout, noiseless(), bc);
      const auto dwell_trace = synthesize(kPhrase30, cfg, layout, noiseless(), dwell);
      const double bc_wpm = replay(bc_trace, cfg, layout, bc, kPhrase30).metrics.wpm;
      const double dwell_wpm = replay(dwell_trace, cfg, layout, dwell, kPhrase30).metrics.wpm;
      ++cells;
      if (!(dwell_wpm < bc_wpm)) ++violations;
      worst_gap = std::min(worst_gap, bc_wpm - dwell_wpm);
    }
  }
  return {violations == 0, std::to_string(cells) + " configs, " + std::to_string(violations) +
                               " violations, smallest wpm gap " + fmt("%.3f", worst_gap)};
}

Verdict noise_monotonicity() {
  const auto t0 = Clock::now();
  const PieConfig cfg;
  const auto layout = build_layout(cfg.num_slices);
  std::string detail;
  bool ok = true;
  // default user model, then one that never corrects, so errors show up
  for (double p_notice : {SimParams{}.p_notice, 0.0}) {
    SimParams p;
    p.p_notice = p_notice;
    detail += fmt("p_notice=%g:", p_notice);
    double previous = -1;
    for (double sigma : {0.0, 5.0, 10.0, 20.0}) {
      p.jitter_sigma_px = sigma;
      double sum = 0;
      for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        p.seed = seed;
        sum += simulate_user(kPhrase30, cfg, layout, p).result.metrics.uncorrected_error_pct;
      }
      const double mean = sum / 50;
      if (mean < previous) ok = false;
      previous = mean;
      detail += fmt(" %.3f", mean);
    }
    detail += "; ";
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 60.0, detail + fmt("%.2f s", secs)};
}

Verdict sweep_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "quickpie-acceptance";
  fs::create_directories(dir);
  const fs::path spec = dir / "spec.json";
  std::ofstream(spec) << R"({"slices":[4,6,7],"char_widths_px":[80,120],)"
                         R"("strategies":["border_crossing","dwell:400"],)"
                         R"("phrases":["sphinx of black quartz"],"seeds":[1,2,3],)"
                         R"("sim":{"jitter_sigma_px":12}})";
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "3", "1"}) {
    std::ostringstream out;
    std::ostringstream err;
    const int rc = cli::run({"quickpie", "sweep", spec.string(), "--threads", threads}, out, err);
    if (rc != 0) return {false, "sweep exited " + std::to_string(rc) + ": " + err.str()};
    outputs.push_back(out.str());
  }
  fs::remove_all(dir);
  const bool same = outputs[0] == outputs[1] && outputs[1] == outputs[2];
  const auto rows = std::count(outputs[0].begin(), outputs[0].end(), '\n') - 1;
  return {same && rows == 12, "3 runs, " + std::to_string(rows) + " rows, " + std::to_string(outputs[0].size()) +
                                  " bytes, " + (same ? "identical" : "different")};
}

Verdict metrics_arithmetic() {
  SessionResult r;
  r.transcribed = "hello world";
  r.duration_ms = 60000;
  r.total_typed = 11;
  const double wpm = compute_metrics(r, "hello world").wpm;
  bool ok = std::fabs(wpm - 2.2) <= 1e-9;

  std::mt19937_64 rng(11);
  const std::string alphabet = "abc ";
  std::uniform_int_distribution<std::size_t> len(0, 6);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  auto draw = [&] {
    std::string s(len(rng), ' ');
    for (auto& c : s) c = alphabet[pick(rng)];
    return s;
  };
  int cases = 0;
  int failures = 0;
  for (int k = 0; k < 2000; ++k) {
    const std::string a = draw();
    const std::string b = draw();
    const std::string c = draw();
    const int ab = edit_distance(a, b);
    const bool good = ab == oracle::edit_distance(a, b) && ab == edit_distance(b, a) &&
                      (ab == 0) == (a == b) && edit_distance(a, c) <= ab + edit_distance(b, c) &&
                      ab >= static_cast<int>(std::max(a.size(), b.size()) - std::min(a.size(), b.size())) &&
                      ab <= static_cast<int>(std::max(a.size(), b.size()));
    ++cases;
    if (!good) ++failures;
  }
  ok = ok && failures == 0;
  return {ok, fmt("wpm=%.12f", wpm) + ", edit distance " + std::to_string(cases) + " cases, " +
                  std::to_string(failures) + " failures"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"geometry oracle equivalence", geometry_oracle},
      {"default constants", constants},
      {"six-slice layout", layout_fidelity},
      {"safe-ring debounce", debounce},
      {"zero-noise closed loop", zero_noise_closed_loop},
      {"dwell slower than border crossing", strategy_ordering},
      {"error non-decreasing with jitter", noise_monotonicity},
      {"sweep csv determinism", sweep_determinism},
      {"metrics arithmetic", metrics_arithmetic},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.ok) ++failed;
    std::printf("[%s] %s: %s\n", v.ok ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
