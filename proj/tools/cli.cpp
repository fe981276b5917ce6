#include "cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "quickpie/errors.hpp"
#include "quickpie/harness.hpp"
#include "quickpie/replay.hpp"
#include "quickpie/serialization.hpp"
#include "quickpie/service.hpp"
#include "quickpie/simulator.hpp"

namespace quickpie::cli {

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

/// Config flags shared by several subcommands; unset flags leave the base
/// config alone.
struct ConfigFlags {
  std::optional<int> slices;
  std::optional<double> char_width;
  std::optional<double> safe_width;
  std::optional<double> selection_width;
  std::optional<double> radius;
  std::optional<double> expand;

  void add_to(CLI::App& app) {
    app.add_option("--slices", slices, "Number of pie slices");
    app.add_option("--char-width", char_width, "Width of the character ring in px");
    app.add_option("--safe-width", safe_width, "Width of the safe ring in px");
    app.add_option("--selection-width", selection_width, "Width of the selection ring in px");
    app.add_option("--radius", radius, "Pie radius in px");
    app.add_option("--expand", expand, "Focused slice growth per side in degrees");
  }

  PieConfig apply(PieConfig cfg) const {
    if (slices) cfg.num_slices = *slices;
    if (char_width) cfg.char_width_px = *char_width;
    if (safe_width) cfg.safe_width_px = *safe_width;
    if (selection_width) cfg.selection_width_px = *selection_width;
    if (radius) cfg.pie_radius_px = *radius;
    if (expand) cfg.expand_deg = *expand;
    validate(cfg);
    return cfg;
  }
};

json session_summary(const SessionResult& r, const std::string& target) {
  json commits = json::array();
  for (const auto& c : r.commit_log) {
    commits.push_back({{"t_ms", c.t_ms}, {"slice", c.pos.slice}, {"index", c.pos.item},
                       {"action", to_string(c.action)}});
  }
  return {{"target", target},
          {"transcribed", r.transcribed},
          {"duration_ms", r.duration_ms},
          {"total_typed", r.total_typed},
          {"clear_count", r.clear_count},
          {"retry_cutoffs", r.retry_cutoffs},
          {"commits", std::move(commits)},
          {"metrics",
           {{"wpm", r.metrics.wpm},
            {"uncorrected_error_pct", r.metrics.uncorrected_error_pct},
            {"corrections", r.metrics.corrections},
            {"kspc", r.metrics.kspc}}}};
}

std::string fmt_deg(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

void print_layout_text(std::ostream& out, const PieConfig& cfg, const Layout& layout, std::optional<int> focus) {
  out << "slices=" << cfg.num_slices << " alpha=" << fmt_deg(cfg.alpha_deg()) << " beta=" << fmt_deg(cfg.beta_deg())
      << " radius=" << fmt_deg(cfg.pie_radius_px) << " char_width=" << fmt_deg(cfg.char_width_px)
      << " safe_width=" << fmt_deg(cfg.safe_width_px) << " selection_width=" << fmt_deg(cfg.selection_width_px)
      << "\n";
  if (focus) out << "focused=" << *focus << "\n";
  for (const auto& span : slice_spans(cfg, focus)) {
    out << "slice " << span.slice << " [" << fmt_deg(span.start_deg) << ", " << fmt_deg(span.end_deg)
        << ") gamma=" << fmt_deg(cell_angle_deg(cfg, layout, span.slice)) << " :";
    for (const auto& item : layout.slices[static_cast<std::size_t>(span.slice)]) out << ' ' << item.label;
    out << "\n";
  }
  for (const auto& w : config_warnings(cfg)) out << "warning: " << w << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quickpie gaze text entry: simulate, replay, sweep and serve"};
  app.require_subcommand(1);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate a user typing a phrase");
  std::string phrase;
  std::string strategy_text = "border_crossing";
  std::string trace_out;
  bool open_loop = false;
  SimParams sim;
  ConfigFlags sim_cfg;
  sim_cmd->add_option("--phrase", phrase, "Lowercase phrase to type")->required();
  sim_cfg.add_to(*sim_cmd);
  sim_cmd->add_option("--seed", sim.seed, "Random seed");
  sim_cmd->add_option("--jitter", sim.jitter_sigma_px, "Fixation jitter std-dev in px");
  sim_cmd->add_option("--tracker-noise", sim.tracker_sigma_px, "Tracker noise std-dev in px");
  sim_cmd->add_option("--expertise", sim.expertise, "Fixation time scale in (0, 1]");
  sim_cmd->add_option("--p-notice", sim.p_notice, "Probability of noticing a wrong commit");
  sim_cmd->add_option("--rate", sim.sample_rate_hz, "Sample rate in Hz");
  sim_cmd->add_option("--strategy", strategy_text, "border_crossing | dwell | dwell:<ms>");
  sim_cmd->add_option("--out", trace_out, "Write the gaze trace to this file");
  sim_cmd->add_flag("--open-loop", open_loop, "Synthesize without the corrective user loop");

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "Replay a trace file through the engine");
  std::string trace_path;
  std::optional<std::string> replay_strategy;
  std::optional<std::string> replay_target;
  ConfigFlags replay_cfg;
  replay_cmd->add_option("trace", trace_path, "Trace file (JSON Lines)")->required();
  replay_cfg.add_to(*replay_cmd);
  replay_cmd->add_option("--strategy", replay_strategy, "Override the trace's strategy");
  replay_cmd->add_option("--target", replay_target, "Target phrase (default: the trace's phrase)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep and print CSV");
  std::string spec_path;
  std::string preset_name;
  unsigned threads = 0;
  std::string csv_out;
  sweep_cmd->add_option("spec", spec_path, "Sweep spec file (JSON)");
  sweep_cmd->add_option("--preset", preset_name, "Built-in sweep: slices | widths | selection");
  sweep_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  sweep_cmd->add_option("--out", csv_out, "Write CSV here instead of stdout");

  // layout
  auto* layout_cmd = app.add_subcommand("layout", "Print the layout and slice spans");
  ConfigFlags layout_cfg;
  std::optional<int> focus;
  bool as_json = false;
  layout_cfg.add_to(*layout_cmd);
  layout_cmd->add_option("--focus", focus, "Show spans with this slice focused");
  layout_cmd->add_flag("--json", as_json, "Print the structured layout info");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the session server");
  std::string host = "127.0.0.1";
  std::uint16_t port = 7878;
  serve_cmd->add_option("--host", host, "Address to bind");
  serve_cmd->add_option("--port", port, "TCP port (0 = any free port)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (auto& ch : msg) {
      if (ch == '\n') ch = ' ';
    }
    err << kDiagnosticPrefix << msg << "\n";
    return 2;
  }

  try {
    if (*sim_cmd) {
      const PieConfig cfg = sim_cfg.apply({});
      const Layout layout = build_layout(cfg.num_slices);
      const Strategy strategy = parse_strategy(strategy_text);
      SimulationOutcome outcome;
      if (open_loop) {
        outcome.trace = synthesize(phrase, cfg, layout, sim, strategy);
        outcome.result = replay(outcome.trace, cfg, layout, strategy, phrase);
      } else {
        outcome = simulate_user(phrase, cfg, layout, sim, strategy);
      }
      if (!trace_out.empty()) save_trace(trace_out, outcome.trace);
      out << session_summary(outcome.result, phrase).dump() << "\n";
    } else if (*replay_cmd) {
      const GazeTrace trace = load_trace(trace_path);
      const PieConfig cfg = replay_cfg.apply(trace.meta.config.value_or(PieConfig{}));
      const Layout layout = build_layout(cfg.num_slices);
      const Strategy strategy = replay_strategy ? parse_strategy(*replay_strategy)
                                                : trace.meta.strategy.value_or(Strategy{BorderCrossing{}});
      std::optional<std::string> target = replay_target;
      if (!target && !trace.meta.phrase.empty()) target = trace.meta.phrase;
      const SessionResult result = replay(trace, cfg, layout, strategy, target);
      out << session_summary(result, target.value_or(result.transcribed)).dump() << "\n";
    } else if (*sweep_cmd) {
      if (spec_path.empty() == preset_name.empty()) {
        throw ConfigError("sweep needs exactly one of a spec file or --preset");
      }
      const SweepSpec spec = preset_name.empty() ? load_sweep_spec(spec_path) : preset(preset_name);
      const auto rows = run_sweep(spec, threads);
      for (const auto& row : rows) {
        if (!row.error.empty()) {
          err << "quickpie: warning: cell slices=" << row.slices << " width=" << row.width_px << ": " << row.error
              << "\n";
        }
      }
      const std::string csv = to_csv(rows);
      if (csv_out.empty()) {
        out << csv;
      } else {
        std::ofstream f(csv_out);
        if (!(f << csv)) throw Error("cannot write: " + csv_out);
      }
    } else if (*layout_cmd) {
      const PieConfig cfg = layout_cfg.apply({});
      const Layout layout = build_layout(cfg.num_slices);
      if (focus && (*focus < 0 || *focus >= cfg.num_slices)) {
        throw ConfigError("--focus must name a slice in [0, " + std::to_string(cfg.num_slices) + ")");
      }
      if (as_json) {
        out << layout_info(cfg, layout).dump(2) << "\n";
      } else {
        print_layout_text(out, cfg, layout, focus);
      }
    } else if (*serve_cmd) {
      Server server(host, port);
      server.start();
      out << "quickpie: serving on " << host << ":" << server.port() << std::endl;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
      server.stop();
    }
  } catch (const std::exception& e) {
    err << kDiagnosticPrefix << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace quickpie::cli
