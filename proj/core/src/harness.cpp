#include "quickpie/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "quickpie/errors.hpp"
#include "quickpie/simulator.hpp"

namespace quickpie {

const std::vector<std::string>& default_phrases() {
  static const std::vector<std::string> phrases = {
      "waltz nymph for quick jigs vex",
      "the quick brown fox jumps over the lazy dog",
      "pack my box with five dozen liquor jugs",
      "sphinx of black quartz judge my vow",
      "how vexingly quick daft zebras jump",
  };
  return phrases;
}

void validate(const SweepSpec& spec) {
  if (spec.slice_counts.empty()) throw ConfigError("sweep needs at least one slice count");
  if (spec.char_widths_px.empty()) throw ConfigError("sweep needs at least one character width");
  if (spec.strategies.empty()) throw ConfigError("sweep needs at least one strategy");
  if (spec.phrases.empty()) throw ConfigError("sweep needs at least one phrase");
  if (spec.seeds.empty()) throw ConfigError("sweep needs at least one seed");
  validate(spec.sim);
}

namespace {

template <typename T, typename Check>
std::vector<T> list_field(const json& j, const char* key, Check check) {
  if (!j.contains(key)) throw ConfigError(std::string("sweep spec is missing '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_array()) throw ConfigError(std::string("'") + key + "' must be a list");
  std::vector<T> out;
  for (const auto& e : v) {
    if (!check(e)) throw ConfigError(std::string("bad entry in '") + key + "': " + e.dump());
    out.push_back(e.get<T>());
  }
  return out;
}

}  // namespace

SweepSpec sweep_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("sweep spec must be a JSON object");
  static const std::vector<std::string> known = {"slices", "char_widths_px", "strategies", "phrases",
                                                 "seeds",  "config",         "sim"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown sweep spec field '" + key + "'");
    }
  }
  SweepSpec spec;
  spec.slice_counts = list_field<int>(j, "slices", [](const json& e) { return e.is_number_integer(); });
  spec.char_widths_px = list_field<double>(j, "char_widths_px", [](const json& e) { return e.is_number(); });
  if (!j.contains("strategies") || !j["strategies"].is_array()) {
    throw ConfigError("sweep spec needs a 'strategies' list");
  }
  for (const auto& s : j["strategies"]) spec.strategies.push_back(strategy_from_json(s));
  spec.phrases = j.contains("phrases")
                     ? list_field<std::string>(j, "phrases", [](const json& e) { return e.is_string(); })
                     : default_phrases();
  spec.seeds = list_field<std::uint64_t>(j, "seeds", is_non_negative_integer);
  if (j.contains("config")) spec.base_config = config_from_json(j["config"]);
  if (j.contains("sim")) spec.sim = sim_params_from_json(j["sim"]);
  validate(spec);
  return spec;
}

json to_json(const SweepSpec& spec) {
  json strategies = json::array();
  for (const auto& s : spec.strategies) strategies.push_back(to_json(s));
  return {{"slices", spec.slice_counts},   {"char_widths_px", spec.char_widths_px},
          {"strategies", strategies},      {"phrases", spec.phrases},
          {"seeds", spec.seeds},           {"config", to_json(spec.base_config)},
          {"sim", to_json(spec.sim)}};
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("file not found: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed sweep spec " + path + ": " + e.what());
  }
  return sweep_spec_from_json(j);
}

std::vector<std::string> preset_names() { return {"slices", "widths", "selection"}; }

SweepSpec preset(const std::string& name) {
  SweepSpec spec;
  spec.phrases = default_phrases();
  spec.seeds = {1, 2, 3, 4, 5};
  if (name == "slices") {
    spec.slice_counts = {4, 5, 6, 7};
    spec.char_widths_px = {100};
    spec.strategies = {BorderCrossing{}};
  } else if (name == "widths") {
    spec.slice_counts = {6};
    spec.char_widths_px = {80, 100, 120, 140};
    spec.strategies = {BorderCrossing{}};
  } else if (name == "selection") {
    spec.slice_counts = {6};
    spec.char_widths_px = {120};
    spec.strategies = {BorderCrossing{}, Dwell{400.0}};
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return spec;
}

namespace {

struct Cell {
  int slices;
  double width;
  Strategy strategy;
};

SweepRow run_cell(const SweepSpec& spec, const Cell& cell) {
  SweepRow row{cell.slices, cell.width, cell.strategy, 0.0, 0.0, 0, {}};
  PieConfig cfg = spec.base_config;
  cfg.num_slices = cell.slices;
  cfg.char_width_px = cell.width;
  try {
    validate(cfg);
    const Layout layout = build_layout(cfg.num_slices);
    double wpm = 0.0;
    double err = 0.0;
    for (const auto& phrase : spec.phrases) {
      for (const auto seed : spec.seeds) {
        SimParams params = spec.sim;
        params.seed = seed;
        const auto outcome = simulate_user(phrase, cfg, layout, params, cell.strategy);
        wpm += outcome.result.metrics.wpm;
        err += outcome.result.metrics.uncorrected_error_pct;
        ++row.n;
      }
    }
    row.mean_wpm = wpm / row.n;
    row.mean_error_pct = err / row.n;
  } catch (const Error& e) {
    row = SweepRow{cell.slices, cell.width, cell.strategy, 0.0, 0.0, 0, e.what()};
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  validate(spec);
  std::vector<Cell> cells;
  for (int s : spec.slice_counts) {
    for (double w : spec.char_widths_px) {
      for (const auto& strategy : spec.strategies) cells.push_back({s, w, strategy});
    }
  }
  std::vector<SweepRow> rows(cells.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = run_cell(spec, cells[i]);
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return rows;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string width_text(double w) {
  if (w == std::floor(w) && std::abs(w) < 1e15) return std::to_string(static_cast<long long>(w));
  return fixed(w, 3);
}

}  // namespace

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kSweepCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.slices) + "," + width_text(r.width_px) + "," + to_string(r.strategy) + ",";
    if (r.error.empty()) {
      out += fixed(r.mean_wpm, 4) + "," + fixed(r.mean_error_pct, 4) + "," + std::to_string(r.n);
    } else {
      out += "NA,NA,0";
    }
    out += "\n";
  }
  return out;
}

}  // namespace quickpie
