#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "sentry/cli.hpp"
#include "sentry/error.hpp"
#include "sentry/ndjson.hpp"
#include "sentry/pgm.hpp"
#include "sentry/zones.hpp"

namespace sentry::cli {
namespace {

double elapsed_us_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::vector<std::filesystem::path> RunConfig::input_frames() const {
  if (input_dir && !input_files.empty()) {
    throw ConfigError("give either --input-dir or input files, not both");
  }
  if (input_dir) return list_frames(*input_dir);
  if (input_files.empty()) throw ConfigError("no input: give --input-dir or input files");
  return input_files;
}

void RunConfig::validate() const {
  motion.validate();
  roi.validate();
}

DetectSummary cmd_detect(const RunConfig& run, std::ostream& out) {
  run.validate();
  const auto paths = run.input_frames();
  ZoneState zones(run.zones_path ? load_zone_config(*run.zones_path) : ZoneConfig{});
  MotionState motion(run.motion);

  DetectSummary summary;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> shape;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const ThermalFrame frame = load_pgm(paths[i], i);
    if (!shape) {
      shape.emplace(frame.width(), frame.height());
    } else if (shape->first != frame.width() || shape->second != frame.height()) {
      throw DimensionError(paths[i].string() + ": frame is " + std::to_string(frame.width()) + "x" +
                           std::to_string(frame.height()) + ", stream is " +
                           std::to_string(shape->first) + "x" + std::to_string(shape->second));
    }
    const Detection detection = hybrid_step(motion, frame, run.roi, run.mode);
    const ZoneUpdate update = zones.update(detection);

    out << ndjson::frame_record(detection, update.state) << '\n';
    for (const ZoneEvent& event : update.events) out << ndjson::zone_record(event) << '\n';
    ++summary.frames;
    summary.positives += detection.verdict ? 1 : 0;
    summary.zone_events += update.events.size();
  }
  out.flush();
  return summary;
}

EvalReport cmd_eval(const RunConfig& run, const std::filesystem::path& labels, std::ostream& out) {
  run.validate();
  if (!run.input_dir) throw ConfigError("eval needs --input-dir");
  if (!run.input_files.empty()) throw ConfigError("eval replays a directory, not single files");
  EvalReport report = run_eval(*run.input_dir, labels, run.motion, run.roi, run.mode);
  print_report(out, report);
  if (run.out_path) {
    std::ofstream file = open_output(*run.out_path);
    for (const auto& line : ndjson::eval_records(report)) file << line << '\n';
    if (!file) throw IoError("write failed: " + run.out_path->string());
  }
  return report;
}

void cmd_eval_matrix(const ConfusionMatrix& cm, std::ostream& out) {
  print_matrix_table(out, "Confusion matrix", cm);
}

synth::DatasetSummary cmd_synth(const std::filesystem::path& scene_file,
                                const std::filesystem::path& out_dir, std::ostream& out) {
  const synth::SceneSpec spec = synth::load_scene(scene_file);
  const synth::DatasetSummary s = synth::generate(spec, out_dir);
  out << "wrote " << s.frames << " frames to " << out_dir.string() << '\n'
      << "labels: " << s.positives << " present, " << s.negatives << " absent\n"
      << "quadrant occupancy:";
  for (Quadrant q : kQuadrants) out << ' ' << to_string(q) << '=' << s.quadrant_counts[index_of(q)];
  out << '\n';
  return s;
}

BenchReport cmd_bench(const RunConfig& run, std::uint64_t iterations, std::ostream& out) {
  run.validate();
  if (iterations == 0) throw ConfigError("bench needs at least one iteration");

  std::vector<ThermalFrame> frames;
  if (run.input_dir || !run.input_files.empty()) {
    for (const auto& path : run.input_frames()) frames.push_back(load_pgm(path));
    if (frames.empty()) throw DataError("bench: no frames in input");
  } else {
    synth::SceneSpec scene = synth::reference_scene();
    scene.frames = 200;
    frames = synth::render(scene).frames;
  }
  for (const auto& f : frames) {
    if (!f.same_shape(frames.front())) throw DimensionError("bench: frames differ in size");
  }

  MotionState standalone(run.motion);
  MotionState hybrid_state(run.motion);
  std::array<std::vector<double>, 3> samples;
  for (auto& s : samples) s.reserve(iterations);

  for (std::uint64_t i = 0; i < iterations; ++i) {
    const ThermalFrame frame = frames[i % frames.size()].with_index(i);

    auto t0 = std::chrono::steady_clock::now();
    standalone.step(frame);
    samples[0].push_back(elapsed_us_since(t0));

    t0 = std::chrono::steady_clock::now();
    roi_analyze(frame, run.roi);
    samples[1].push_back(elapsed_us_since(t0));

    const Detection h = hybrid_step(hybrid_state, frame, run.roi, run.mode);
    samples[2].push_back(h.elapsed_us);
  }

  BenchReport report;
  report.isa = kernels::active().isa;
  report.iterations = iterations;
  report.width = frames.front().width();
  report.height = frames.front().height();
  for (std::size_t m = 0; m < 3; ++m) report.latency[m] = summarize_latency(samples[m]);

  char line[160];
  out << "kernel " << kernels::to_string(report.isa) << ", " << iterations << " iterations on "
      << report.width << "x" << report.height << " frames\n";
  for (Method m : kMethods) {
    const LatencyStats& s = report.latency_of(m);
    std::snprintf(line, sizeof line, "%-8s max %9.2f us  mean %9.2f us  p99 %9.2f us\n",
                  std::string(to_string(m)).c_str(), s.max_us, s.mean_us, s.p99_us);
    out << line;
  }
  if (run.out_path) {
    std::ofstream file = open_output(*run.out_path);
    for (Method m : kMethods) {
      file << ndjson::bench_record(kernels::to_string(report.isa), iterations, report.width,
                                   report.height, m, report.latency_of(m))
           << '\n';
    }
  }
  return report;
}

}  // namespace sentry::cli
