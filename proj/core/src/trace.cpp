#include "quickpie/trace.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "quickpie/errors.hpp"
#include "quickpie/serialization.hpp"

namespace quickpie {

void validate(const SimParams& p) {
  auto check_range = [](const MsRange& r, const char* name) {
    if (!std::isfinite(r.min_ms) || !std::isfinite(r.max_ms) || r.min_ms < 0 || r.min_ms > r.max_ms) {
      throw ConfigError(std::string(name) + " must be a nonempty range of non-negative times");
    }
  };
  if (!(p.sample_rate_hz > 0) || !std::isfinite(p.sample_rate_hz)) {
    throw ConfigError("sample_rate_hz must be > 0");
  }
  if (!(p.px_per_deg > 0) || !std::isfinite(p.px_per_deg)) throw ConfigError("px_per_deg must be > 0");
  if (!(p.jitter_sigma_px >= 0) || !std::isfinite(p.jitter_sigma_px)) {
    throw ConfigError("jitter_sigma_px must be >= 0");
  }
  if (!(p.tracker_sigma_px >= 0) || !std::isfinite(p.tracker_sigma_px)) {
    throw ConfigError("tracker_sigma_px must be >= 0");
  }
  check_range(p.fixation_ms, "fixation_ms");
  check_range(p.latency_ms, "latency_ms");
  check_range(p.saccade_ms, "saccade_ms");
  if (!(p.expertise > 0 && p.expertise <= 1)) throw ConfigError("expertise must be in (0, 1]");
  if (!(p.p_notice >= 0 && p.p_notice <= 1)) throw ConfigError("p_notice must be in [0, 1]");
  if (p.max_retries < 0) throw ConfigError("max_retries must be >= 0");
}

void check_monotone(const GazeTrace& trace) {
  for (std::size_t i = 1; i < trace.samples.size(); ++i) {
    if (!(trace.samples[i].t_ms > trace.samples[i - 1].t_ms)) {
      throw TraceError("timestamps must strictly increase (sample " + std::to_string(i + 1) + ")");
    }
  }
}

void write_trace(std::ostream& out, const GazeTrace& trace) {
  const auto& m = trace.meta;
  json header = {{"record", "header"},
                 {"format", "quickpie-trace"},
                 {"version", kTraceFormatVersion},
                 {"source", m.source},
                 {"phrase", m.phrase},
                 {"config", m.config ? to_json(*m.config) : json(nullptr)},
                 {"strategy", m.strategy ? to_json(*m.strategy) : json(nullptr)},
                 {"sim", m.sim ? to_json(*m.sim) : json(nullptr)}};
  out << header.dump() << '\n';
  for (const auto& s : trace.samples) out << to_json(s).dump() << '\n';
}

namespace {

TraceMeta parse_header(const json& j, std::size_t line) {
  TraceMeta meta;
  try {
    if (j.value("format", "") != "quickpie-trace") throw TraceError("header has unknown format", line);
    if (j.value("version", -1) != kTraceFormatVersion) throw TraceError("unsupported trace version", line);
    meta.source = j.value("source", "recording");
    meta.phrase = j.value("phrase", "");
    if (j.contains("config") && !j["config"].is_null()) meta.config = config_from_json(j["config"]);
    if (j.contains("strategy") && !j["strategy"].is_null()) meta.strategy = strategy_from_json(j["strategy"]);
    if (j.contains("sim") && !j["sim"].is_null()) meta.sim = sim_params_from_json(j["sim"]);
  } catch (const TraceError&) {
    throw;
  } catch (const json::exception& e) {
    throw TraceError(std::string("bad header: ") + e.what(), line);
  } catch (const Error& e) {
    throw TraceError(std::string("bad header: ") + e.what(), line);
  }
  return meta;
}

GazeSample parse_sample(const json& j, std::size_t line) {
  if (!j.is_object()) throw TraceError("sample record must be an object", line);
  GazeSample s;
  for (const char* key : {"t_ms", "x", "y"}) {
    if (!j.contains(key) || !j[key].is_number()) {
      throw TraceError(std::string("sample record needs numeric '") + key + "'", line);
    }
  }
  s.t_ms = j["t_ms"].get<double>();
  s.x_px = j["x"].get<double>();
  s.y_px = j["y"].get<double>();
  return s;
}

}  // namespace

GazeTrace read_trace(std::istream& in) {
  GazeTrace trace;
  std::string text;
  std::size_t line = 0;
  bool first_record = true;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error&) {
      throw TraceError("malformed record", line);
    }
    if (j.is_object() && j.contains("record")) {
      if (!first_record || j["record"] != "header") throw TraceError("unexpected header record", line);
      trace.meta = parse_header(j, line);
    } else {
      GazeSample s = parse_sample(j, line);
      if (!trace.samples.empty() && !(s.t_ms > trace.samples.back().t_ms)) {
        throw TraceError("timestamp does not increase", line);
      }
      trace.samples.push_back(s);
    }
    first_record = false;
  }
  return trace;
}

GazeTrace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TraceError("file not found: " + path);
  return read_trace(in);
}

void save_trace(const std::string& path, const GazeTrace& trace) {
  std::ofstream out(path);
  if (!out) throw TraceError("cannot write: " + path);
  write_trace(out, trace);
  if (!out) throw TraceError("write failed: " + path);
}

}  // namespace quickpie
