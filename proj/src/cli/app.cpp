#include <cstdlib>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "sentry/cli.hpp"
#include "sentry/error.hpp"

namespace sentry::cli {
namespace {

ConfusionMatrix parse_matrix(const std::string& text) {
  std::vector<std::uint64_t> cells;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(cell, &used);
      if (used != cell.size()) throw std::invalid_argument(cell);
      cells.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("--matrix expects tp,fp,fn,tn as non-negative integers");
    }
  }
  if (cells.size() != 4) throw ConfigError("--matrix expects exactly four cells tp,fp,fn,tn");
  return ConfusionMatrix{cells[0], cells[1], cells[2], cells[3]};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal presence detection: replay, evaluation, synthesis and benchmarking",
               "thermal-sentry"};
  app.require_subcommand(1);
  app.fallthrough();

  const char* env_config = std::getenv(kConfigEnvVar);
  app.set_config("--config", env_config ? env_config : "",
                 "key=value config file (default from $THERMAL_SENTRY_CONFIG); flags override it");

  RunConfig run;
  std::string mode = "parallel";
  std::uint32_t active_delta = run.motion.active_pixel_delta;
  std::uint32_t max_hold = 0;
  std::string input_dir;
  std::string zones;
  std::string out_path;

  app.add_option("--mode", mode, "Combination order: parallel | sequential")
      ->capture_default_str()
      ->check(CLI::IsMember({"parallel", "sequential"}, CLI::ignore_case));
  app.add_option("--active-delta", active_delta, "Per-pixel change (counts) that makes a pixel active")
      ->capture_default_str()
      ->check(CLI::Range(1, 65535));
  app.add_option("--active-fraction", run.motion.active_fraction,
                 "Fraction of pixels that must be active to report movement")
      ->capture_default_str();
  app.add_option("--max-hold", max_hold,
                 "Force a background refresh after this many consecutive movement frames (0 = never)")
      ->capture_default_str();
  app.add_option("--roi-ratio", run.roi.ratio,
                 "Quadrant flagged when its mean exceeds ratio x frame mean")
      ->capture_default_str();
  app.add_option("--min-quadrant-mean", run.roi.min_quadrant_mean,
                 "Quadrants with a lower mean are never flagged")
      ->capture_default_str();
  app.add_option("--zones", zones, "Zone config file (Qn=ignore|warning|critical, debounce=, clear=)");
  app.add_option("--input-dir", input_dir, "Directory of .pgm frames, replayed in filename order");
  app.add_option("--out", out_path, "Output file (detect: NDJSON records; eval/bench: report)");

  auto* detect = app.add_subcommand("detect", "Replay frames and emit NDJSON detection records");
  std::vector<std::string> files;
  detect->add_option("files", files, "PGM frames, in stream order");

  auto* eval = app.add_subcommand("eval", "Evaluate detectors against a labelled dataset");
  std::string labels;
  std::string matrix;
  eval->add_option("--labels", labels, "Labels CSV (frame,present,quadrants)");
  eval->add_option("--matrix", matrix, "Matrix-only mode: tp,fp,fn,tn");

  auto* synth_cmd = app.add_subcommand("synth", "Generate a labelled synthetic dataset");
  std::string scene;
  std::string synth_out;
  synth_cmd->add_option("scene", scene, "Scene description file")->required();
  synth_cmd->add_option("out_dir", synth_out, "Output directory")->required();

  auto* bench = app.add_subcommand("bench", "Measure per-frame latency");
  std::uint64_t iterations = 1000;
  std::string kernel = "auto";
  bench->add_option("--iterations", iterations, "Frames to process")->capture_default_str();
  bench->add_option("--kernel", kernel, "auto | scalar | avx2 | neon")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  // Flags that only make sense on a particular subcommand.
  if (!detect->parsed() && !files.empty()) {
    err << "error: positional frame files are only accepted by detect\n";
    return kExitUsage;
  }

  try {
    run.mode = *parse_combine_mode(mode);
    run.motion.active_pixel_delta = static_cast<std::uint16_t>(active_delta);
    if (max_hold > 0) run.motion.max_hold_frames = max_hold;
    if (!zones.empty()) run.zones_path = zones;
    if (!input_dir.empty()) run.input_dir = input_dir;
    if (!out_path.empty()) run.out_path = out_path;
    for (const auto& f : files) run.input_files.emplace_back(f);

    if (detect->parsed()) {
      if (run.out_path) {
        std::ofstream file(*run.out_path, std::ios::trunc);
        if (!file) throw IoError("cannot open " + run.out_path->string() + " for writing");
        cmd_detect(run, file);
      } else {
        cmd_detect(run, out);
      }
    } else if (eval->parsed()) {
      if (!matrix.empty()) {
        cmd_eval_matrix(parse_matrix(matrix), out);
      } else {
        if (labels.empty()) {
          err << "error: eval needs --labels (or --matrix)\n";
          return kExitUsage;
        }
        cmd_eval(run, labels, out);
      }
    } else if (synth_cmd->parsed()) {
      cmd_synth(scene, synth_out, out);
    } else if (bench->parsed()) {
      if (kernel == "auto") {
        kernels::select_auto();
      } else if (const auto isa = kernels::parse_isa(kernel)) {
        kernels::select(*isa);
      } else {
        err << "error: unknown kernel '" << kernel << "'\n";
        return kExitUsage;
      }
      cmd_bench(run, iterations, out);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace sentry::cli
