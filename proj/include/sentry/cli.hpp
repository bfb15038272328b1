#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sentry/evaluation.hpp"
#include "sentry/hybrid.hpp"
#include "sentry/kernels.hpp"
#include "sentry/synth.hpp"

namespace sentry::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Names a default config file (key=value, same keys as the long flags).
inline constexpr const char* kConfigEnvVar = "THERMAL_SENTRY_CONFIG";

struct RunConfig {
  MotionConfig motion;
  RoiConfig roi;
  CombineMode mode = CombineMode::ParallelOr;
  std::optional<std::filesystem::path> zones_path;
  std::optional<std::filesystem::path> input_dir;
  std::vector<std::filesystem::path> input_files;
  std::optional<std::filesystem::path> out_path;

  // Frames to replay, in stream order. Throws ConfigError unless exactly one
  // input source is set.
  std::vector<std::filesystem::path> input_frames() const;
  void validate() const;
};

struct DetectSummary {
  std::uint64_t frames = 0;
  std::uint64_t positives = 0;
  std::uint64_t zone_events = 0;
};

// One frame record per input frame, each followed by that frame's zone records.
DetectSummary cmd_detect(const RunConfig& run, std::ostream& out);

// Prints the three matrices; writes NDJSON report records to run.out_path if set.
EvalReport cmd_eval(const RunConfig& run, const std::filesystem::path& labels, std::ostream& out);
// Matrix-only mode: print a single matrix and its accuracy.
void cmd_eval_matrix(const ConfusionMatrix& cm, std::ostream& out);

synth::DatasetSummary cmd_synth(const std::filesystem::path& scene_file,
                                const std::filesystem::path& out_dir, std::ostream& out);

struct BenchReport {
  kernels::Isa isa = kernels::Isa::Scalar;
  std::uint64_t iterations = 0;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::array<LatencyStats, 3> latency{};

  const LatencyStats& latency_of(Method m) const { return latency[static_cast<std::size_t>(m)]; }
};

// Frames come from the run's input source, or from the reference synthetic
// scene when none is given. Uses the currently active kernel table.
BenchReport cmd_bench(const RunConfig& run, std::uint64_t iterations, std::ostream& out);

// Full command line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sentry::cli
