#include <cmath>

#include "quickpie/errors.hpp"
#include "quickpie/metrics.hpp"
#include "quickpie/service.hpp"

namespace quickpie {

std::string error_message(std::string_view code, std::string_view message) {
  return json{{"type", "error"}, {"code", code}, {"message", message}}.dump();
}

Session::Session() : engine_(PieConfig{}) {}

namespace {

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

bool read_sample(const json& j, GazeSample& out) {
  if (!j.is_object()) return false;
  for (const char* key : {"t_ms", "x", "y"}) {
    if (!j.contains(key) || !j[key].is_number()) return false;
  }
  out = {j["t_ms"].get<double>(), j["x"].get<double>(), j["y"].get<double>()};
  return std::isfinite(out.t_ms) && std::isfinite(out.x_px) && std::isfinite(out.y_px);
}

}  // namespace

std::vector<std::string> Session::handle_line(std::string_view line, double now_ms) {
  json msg;
  try {
    msg = json::parse(line);
  } catch (const json::parse_error&) {
    return {error_message("bad_json", "message is not valid JSON")};
  }
  if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
    return {error_message("bad_message", "message must be an object with a string 'type'")};
  }
  const std::string type = msg["type"].get<std::string>();
  if (type == "hello") return on_hello(msg);
  if (!greeted_) return {error_message("handshake_required", "send hello first")};
  try {
    if (type == "configure") return on_configure(msg);
    if (type == "gaze") return on_gaze(msg);
    if (type == "reset") {
      reset_engine();
      return {state_message()};
    }
    if (type == "load_trace") return on_load_trace(msg);
    if (type == "replay_control") return on_replay_control(msg, now_ms);
  } catch (const json::exception& e) {
    return {error_message("bad_field", e.what())};
  }
  return {error_message("unknown_type", "unknown message type '" + type + "'")};
}

std::vector<std::string> Session::on_hello(const json& msg) {
  if (!msg.contains("protocol_version") || msg["protocol_version"] != kProtocolVersion) {
    closed_ = true;
    return {error_message("version_mismatch",
                          "server speaks protocol_version " + std::to_string(kProtocolVersion))};
  }
  greeted_ = true;
  return {layout_message()};
}

std::vector<std::string> Session::on_configure(const json& msg) {
  PieConfig cfg = engine_.config();
  Strategy strategy = engine_.state().strategy;
  try {
    if (msg.contains("config")) cfg = config_from_json(msg["config"], cfg);
    if (msg.contains("num_slices")) cfg = config_from_json(json{{"num_slices", msg["num_slices"]}}, cfg);
    if (msg.contains("char_width_px")) {
      cfg = config_from_json(json{{"char_width_px", msg["char_width_px"]}}, cfg);
    }
    if (msg.contains("strategy")) strategy = strategy_from_json(msg["strategy"]);
    build_layout(cfg.num_slices);
  } catch (const Error& e) {
    return {error_message("invalid_config", e.what())};
  }
  if (msg.contains("target")) {
    if (msg["target"].is_null()) {
      target_.reset();
    } else if (msg["target"].is_string()) {
      target_ = msg["target"].get<std::string>();
    } else {
      return {error_message("bad_field", "'target' must be a string or null")};
    }
  }
  engine_ = Engine(cfg, strategy);
  first_t_ms_.reset();
  replay_samples_.clear();
  replay_cursor_ = 0;
  playing_ = false;
  return {layout_message(), state_message()};
}

std::vector<std::string> Session::on_gaze(const json& msg) {
  GazeSample sample;
  if (!read_sample(msg, sample)) return {error_message("bad_field", "gaze needs numeric t_ms, x and y")};
  return feed(sample);
}

std::vector<std::string> Session::feed(const GazeSample& sample) {
  std::vector<EngineEvent> events;
  try {
    events = engine_.feed(sample);
  } catch (const SampleOrderError& e) {
    return {error_message("ts_order", e.what())};
  }
  if (!first_t_ms_) first_t_ms_ = sample.t_ms;

  std::vector<std::string> out;
  bool committed = false;
  const auto& state = engine_.state();
  for (const auto& ev : events) {
    if (ev.kind != EventKind::Committed) continue;
    committed = true;
    const ItemPos pos = *ev.item;
    const Item& item = engine_.layout().at(pos);
    out.push_back(json{{"type", "commit"},
                       {"t_ms", ev.t_ms},
                       {"item",
                        {{"slice", pos.slice},
                         {"index", pos.item},
                         {"label", item.label},
                         {"action", to_json(item.action)}}},
                       {"buffer", state.buffer}}
                      .dump());
  }
  out.push_back(state_message());
  if (committed) out.push_back(metrics_message());
  return out;
}

std::vector<std::string> Session::on_load_trace(const json& msg) {
  if (!msg.contains("samples") || !msg["samples"].is_array()) {
    return {error_message("bad_field", "load_trace needs a 'samples' list")};
  }
  std::vector<GazeSample> samples;
  for (const auto& j : msg["samples"]) {
    GazeSample s;
    if (!read_sample(j, s)) {
      return {error_message("bad_trace", "sample " + std::to_string(samples.size() + 1) + " is malformed")};
    }
    if (!samples.empty() && !(s.t_ms > samples.back().t_ms)) {
      return {error_message("bad_trace",
                            "sample " + std::to_string(samples.size() + 1) + " does not advance in time")};
    }
    samples.push_back(s);
  }
  reset_engine();
  replay_samples_ = std::move(samples);
  return {state_message()};
}

std::vector<std::string> Session::on_replay_control(const json& msg, double now_ms) {
  const std::string action = msg.at("action").get<std::string>();
  // wall time at which the next sample would be due under the current pacing
  auto resume_origin = [&] {
    if (replay_cursor_ >= replay_samples_.size()) return now_ms;
    const double offset = replay_samples_[replay_cursor_].t_ms - replay_samples_.front().t_ms;
    return now_ms - offset / speed_;
  };
  if (action == "play") {
    if (msg.contains("speed")) {
      const double s = msg["speed"].get<double>();
      if (!(s > 0) || !std::isfinite(s)) return {error_message("bad_field", "speed must be > 0")};
      speed_ = s;
    }
    replay_origin_ms_ = resume_origin();
    playing_ = replay_cursor_ < replay_samples_.size();
  } else if (action == "pause") {
    playing_ = false;
  } else if (action == "speed") {
    const double s = msg.at("speed").get<double>();
    if (!(s > 0) || !std::isfinite(s)) return {error_message("bad_field", "speed must be > 0")};
    if (playing_) {
      // keep the next sample's due time continuous across the change
      const double due = *next_replay_due_ms();
      speed_ = s;
      replay_origin_ms_ = due - (replay_samples_[replay_cursor_].t_ms - replay_samples_.front().t_ms) / speed_;
    } else {
      speed_ = s;
    }
  } else {
    return {error_message("bad_field", "unknown replay action '" + action + "'")};
  }
  return {state_message()};
}

std::optional<double> Session::next_replay_due_ms() const {
  if (!playing_ || replay_cursor_ >= replay_samples_.size()) return std::nullopt;
  return replay_origin_ms_ + (replay_samples_[replay_cursor_].t_ms - replay_samples_.front().t_ms) / speed_;
}

std::vector<std::string> Session::pump_replay(double now_ms) {
  std::vector<std::string> out;
  for (auto due = next_replay_due_ms(); due && *due <= now_ms; due = next_replay_due_ms()) {
    auto lines = feed(replay_samples_[replay_cursor_++]);
    out.insert(out.end(), lines.begin(), lines.end());
  }
  if (replay_cursor_ >= replay_samples_.size()) playing_ = false;
  return out;
}

void Session::reset_engine() {
  engine_.reset();
  first_t_ms_.reset();
  replay_cursor_ = 0;
  playing_ = false;
}

std::string Session::layout_message() const {
  json j = layout_info(engine_.config(), engine_.layout());
  j["type"] = "layout_info";
  j["strategy"] = to_json(engine_.state().strategy);
  j["protocol_version"] = kProtocolVersion;
  return j.dump();
}

std::string Session::state_message() const {
  const auto& s = engine_.state();
  return json{{"type", "state"},
              {"t_ms", s.last_t_ms ? json(*s.last_t_ms) : json(nullptr)},
              {"focused", optional_int(s.focused)},
              {"highlighted", optional_int(s.highlighted)},
              {"armed", s.armed},
              {"buffer", s.buffer},
              {"dwell_accum_ms", s.dwell_accum_ms}}
      .dump();
}

std::string Session::metrics_message() const {
  const auto& s = engine_.state();
  const double duration = (first_t_ms_ && s.last_t_ms) ? *s.last_t_ms - *first_t_ms_ : 0.0;
  SessionResult r = summarize(s, duration);
  Metrics m;
  const std::string target = target_ ? *target_ : s.buffer;
  if (duration > 0 || r.transcribed.empty()) m = compute_metrics(r, target);
  return json{{"type", "metrics"},
              {"wpm", m.wpm},
              {"uncorrected_error_pct", m.uncorrected_error_pct},
              {"corrections", m.corrections},
              {"kspc", m.kspc},
              {"duration_ms", duration},
              {"target", target_ ? json(*target_) : json(nullptr)}}
      .dump();
}

}  // namespace quickpie
