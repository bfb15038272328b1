#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentry/frame.hpp"
#include "sentry/hybrid.hpp"

namespace sentry {

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  void add(bool predicted, bool actual);
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// (TP + TN) / total * 100. Throws DataError on an empty matrix.
double accuracy(const ConfusionMatrix& cm);
// Accuracy rounded to one decimal place, e.g. "96.5".
std::string format_accuracy(double percent);

struct GroundTruthLabel {
  std::uint64_t frame_index = 0;
  bool human_present = false;
  // May be empty even when present (unlocalized label).
  std::vector<Quadrant> occupied_quadrants;

  friend bool operator==(const GroundTruthLabel&, const GroundTruthLabel&) = default;
};

// CSV with header `frame,present,quadrants`; quadrants is a ';'-separated
// list of Q0..Q3 or empty. Rows are returned sorted by frame.
std::vector<GroundTruthLabel> parse_labels(std::string_view csv);
std::vector<GroundTruthLabel> read_labels(const std::filesystem::path& path);
void write_labels(std::span<const GroundTruthLabel> labels, std::ostream& out);
void write_labels(std::span<const GroundTruthLabel> labels, const std::filesystem::path& path);

struct Prediction {
  std::uint64_t frame_index = 0;
  bool positive = false;
};

// Pairs predictions with labels position by position.
ConfusionMatrix confusion(const std::vector<bool>& predictions,
                          std::span<const GroundTruthLabel> labels);
// Same, additionally requiring matching frame indices.
ConfusionMatrix confusion(std::span<const Prediction> predictions,
                          std::span<const GroundTruthLabel> labels);

enum class Method : std::uint8_t { MethodA = 0, MethodB = 1, Hybrid = 2 };
inline constexpr std::array<Method, 3> kMethods = {Method::MethodA, Method::MethodB, Method::Hybrid};
std::string_view to_string(Method m);

struct LatencyStats {
  double max_us = 0.0;
  double mean_us = 0.0;
  double p99_us = 0.0;
};

// Nearest-rank p99. Empty input gives all zeros.
LatencyStats summarize_latency(std::span<const double> samples_us);

struct EvalReport {
  std::array<ConfusionMatrix, 3> matrices{};
  std::array<double, 3> accuracies{};
  std::array<LatencyStats, 3> latency{};
  std::uint64_t frames_evaluated = 0;
  CombineMode mode = CombineMode::ParallelOr;
  // Per-frame verdicts, in stream order.
  std::array<std::vector<bool>, 3> predictions;

  const ConfusionMatrix& matrix(Method m) const { return matrices[static_cast<std::size_t>(m)]; }
  double accuracy_of(Method m) const { return accuracies[static_cast<std::size_t>(m)]; }
  const LatencyStats& latency_of(Method m) const { return latency[static_cast<std::size_t>(m)]; }
};

// Replays frames through a fresh pipeline in one pass. Method A, Method B and
// the hybrid each get their own verdict; Method A's indeterminate first frame
// is scored negative. Frame i must carry label frame_index i.
EvalReport evaluate(std::span<const ThermalFrame> frames, std::span<const GroundTruthLabel> labels,
                    const MotionConfig& motion_config, const RoiConfig& roi_config,
                    CombineMode mode);

// *.pgm files of a directory in lexicographic filename order.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);

// Loads frames (frame_index = position in lexicographic order) and labels,
// then calls evaluate().
EvalReport run_eval(const std::filesystem::path& dataset_dir,
                    const std::filesystem::path& labels_path, const MotionConfig& motion_config,
                    const RoiConfig& roi_config, CombineMode mode);

// Three confusion-matrix tables with row/column totals and accuracies.
void print_matrix_table(std::ostream& out, std::string_view title, const ConfusionMatrix& cm);
void print_report(std::ostream& out, const EvalReport& report);

}  // namespace sentry
