#include "sentry/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "sentry/error.hpp"
#include "sentry/pgm.hpp"

namespace sentry {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const std::size_t at = s.find(sep);
    parts.push_back(trim(s.substr(0, at)));
    if (at == std::string_view::npos) break;
    s = s.substr(at + 1);
  }
  return parts;
}

bool parse_bool_field(std::string_view v, std::size_t line) {
  if (v == "1" || v == "true" || v == "TRUE" || v == "True") return true;
  if (v == "0" || v == "false" || v == "FALSE" || v == "False") return false;
  throw FormatError("labels line " + std::to_string(line) + ": present must be 0/1 or true/false");
}

double elapsed_us_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
}

std::string percent_of(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * static_cast<double>(part) / static_cast<double>(whole));
  return buf;
}

}  // namespace

void ConfusionMatrix::add(bool predicted, bool actual) {
  if (predicted && actual) {
    ++tp;
  } else if (predicted) {
    ++fp;
  } else if (actual) {
    ++fn;
  } else {
    ++tn;
  }
}

double accuracy(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw DataError("accuracy of an empty confusion matrix");
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total()) * 100.0;
}

std::string format_accuracy(double percent) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", percent);
  return buf;
}

std::vector<GroundTruthLabel> parse_labels(std::string_view csv) {
  std::vector<GroundTruthLabel> labels;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!csv.empty()) {
    const std::size_t eol = csv.find('\n');
    const std::string_view line = trim(csv.substr(0, eol));
    csv = eol == std::string_view::npos ? std::string_view{} : csv.substr(eol + 1);
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "frame" || fields[1] != "present" ||
          fields[2] != "quadrants") {
        throw FormatError("labels: expected header 'frame,present,quadrants'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw FormatError("labels line " + std::to_string(line_no) + ": expected 3 fields");
    }
    GroundTruthLabel label;
    auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(),
                                     label.frame_index);
    if (ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
      throw FormatError("labels line " + std::to_string(line_no) + ": bad frame index");
    }
    label.human_present = parse_bool_field(fields[1], line_no);
    if (!fields[2].empty()) {
      for (std::string_view name : split(fields[2], ';')) {
        const auto q = parse_quadrant(name);
        if (!q) {
          throw FormatError("labels line " + std::to_string(line_no) + ": unknown quadrant '" +
                            std::string(name) + "'");
        }
        label.occupied_quadrants.push_back(*q);
      }
      if (!label.human_present) {
        throw FormatError("labels line " + std::to_string(line_no) +
                          ": occupied quadrants listed but present is false");
      }
    }
    labels.push_back(std::move(label));
  }
  if (!header_seen) throw FormatError("labels: missing header");
  std::sort(labels.begin(), labels.end(),
            [](const auto& a, const auto& b) { return a.frame_index < b.frame_index; });
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (labels[i].frame_index == labels[i - 1].frame_index) {
      throw FormatError("labels: duplicate frame " + std::to_string(labels[i].frame_index));
    }
  }
  return labels;
}

std::vector<GroundTruthLabel> read_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open labels file " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_labels(text);
}

void write_labels(std::span<const GroundTruthLabel> labels, std::ostream& out) {
  out << "frame,present,quadrants\n";
  for (const auto& label : labels) {
    out << label.frame_index << ',' << (label.human_present ? 1 : 0) << ',';
    for (std::size_t i = 0; i < label.occupied_quadrants.size(); ++i) {
      if (i > 0) out << ';';
      out << to_string(label.occupied_quadrants[i]);
    }
    out << '\n';
  }
}

void write_labels(std::span<const GroundTruthLabel> labels, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_labels(labels, out);
  if (!out) throw IoError("write failed: " + path.string());
}

ConfusionMatrix confusion(const std::vector<bool>& predictions,
                          std::span<const GroundTruthLabel> labels) {
  if (predictions.size() != labels.size()) {
    throw DataError("confusion: " + std::to_string(predictions.size()) + " predictions vs " +
                    std::to_string(labels.size()) + " labels");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) cm.add(predictions[i], labels[i].human_present);
  return cm;
}

ConfusionMatrix confusion(std::span<const Prediction> predictions,
                          std::span<const GroundTruthLabel> labels) {
  if (predictions.size() != labels.size()) {
    throw DataError("confusion: " + std::to_string(predictions.size()) + " predictions vs " +
                    std::to_string(labels.size()) + " labels");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i].frame_index != labels[i].frame_index) {
      throw DataError("confusion: prediction for frame " +
                      std::to_string(predictions[i].frame_index) + " paired with label for frame " +
                      std::to_string(labels[i].frame_index));
    }
    cm.add(predictions[i].positive, labels[i].human_present);
  }
  return cm;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::MethodA:
      return "A";
    case Method::MethodB:
      return "B";
    case Method::Hybrid:
      return "hybrid";
  }
  return "?";
}

LatencyStats summarize_latency(std::span<const double> samples_us) {
  if (samples_us.empty()) return {};
  std::vector<double> sorted(samples_us.begin(), samples_us.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (double s : sorted) total += s;
  const auto rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(sorted.size())));
  return LatencyStats{sorted.back(), total / static_cast<double>(sorted.size()),
                      sorted[std::max<std::size_t>(rank, 1) - 1]};
}

EvalReport evaluate(std::span<const ThermalFrame> frames, std::span<const GroundTruthLabel> labels,
                    const MotionConfig& motion_config, const RoiConfig& roi_config,
                    CombineMode mode) {
  roi_config.validate();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (i >= labels.size() || labels[i].frame_index != frames[i].frame_index()) {
      throw DataError("missing label for frame " + std::to_string(frames[i].frame_index()));
    }
  }
  if (labels.size() > frames.size()) {
    throw DataError("label for frame " + std::to_string(labels[frames.size()].frame_index) +
                    " has no matching image");
  }

  EvalReport report;
  report.mode = mode;
  report.frames_evaluated = frames.size();
  MotionState standalone(motion_config);
  MotionState hybrid_state(motion_config);
  std::array<std::vector<double>, 3> latencies;
  for (auto& v : latencies) v.reserve(frames.size());
  for (auto& p : report.predictions) p.reserve(frames.size());

  for (std::size_t i = 0; i < frames.size(); ++i) {
    const ThermalFrame& frame = frames[i];
    const bool actual = labels[i].human_present;

    auto t0 = std::chrono::steady_clock::now();
    const MotionResult a = standalone.step(frame);
    latencies[0].push_back(elapsed_us_since(t0));
    const bool a_positive = a.movement && !a.indeterminate;

    t0 = std::chrono::steady_clock::now();
    const RoiResult b = roi_analyze(frame, roi_config);
    latencies[1].push_back(elapsed_us_since(t0));

    const Detection h = hybrid_step(hybrid_state, frame, roi_config, mode);
    latencies[2].push_back(h.elapsed_us);

    const std::array<bool, 3> verdicts = {a_positive, b.any, h.verdict};
    for (std::size_t m = 0; m < 3; ++m) {
      report.matrices[m].add(verdicts[m], actual);
      report.predictions[m].push_back(verdicts[m]);
    }
  }
  for (std::size_t m = 0; m < 3; ++m) {
    report.accuracies[m] = frames.empty() ? 0.0 : accuracy(report.matrices[m]);
    report.latency[m] = summarize_latency(latencies[m]);
  }
  return report;
}

std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw IoError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".pgm") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  return paths;
}

EvalReport run_eval(const std::filesystem::path& dataset_dir,
                    const std::filesystem::path& labels_path, const MotionConfig& motion_config,
                    const RoiConfig& roi_config, CombineMode mode) {
  const auto paths = list_frames(dataset_dir);
  const auto labels = read_labels(labels_path);
  std::vector<ThermalFrame> frames;
  frames.reserve(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    frames.push_back(load_pgm(paths[i], i));
    if (!frames.back().same_shape(frames.front())) {
      throw DimensionError(paths[i].string() + ": dimensions change mid-stream");
    }
  }
  return evaluate(frames, labels, motion_config, roi_config, mode);
}

void print_matrix_table(std::ostream& out, std::string_view title, const ConfusionMatrix& cm) {
  const std::uint64_t actual_pos = cm.tp + cm.fn;
  const std::uint64_t actual_neg = cm.fp + cm.tn;
  char line[160];
  out << title << '\n';
  std::snprintf(line, sizeof line, "%-24s%20s%20s\n", "", "Groundtruth Positive", "Negative");
  out << line;
  std::snprintf(line, sizeof line, "%-24s%20llu%20llu\n", "", static_cast<unsigned long long>(actual_pos),
                static_cast<unsigned long long>(actual_neg));
  out << line;
  const auto row = [&](const char* name, std::uint64_t total, std::uint64_t a, const char* a_tag,
                       std::uint64_t b, const char* b_tag) {
    const std::string left = std::to_string(a) + " " + a_tag + " (" + percent_of(a, actual_pos) + ")";
    const std::string right = std::to_string(b) + " " + b_tag + " (" + percent_of(b, actual_neg) + ")";
    std::snprintf(line, sizeof line, "Predicted %-8s %5llu%20s%20s\n", name,
                  static_cast<unsigned long long>(total), left.c_str(), right.c_str());
    out << line;
  };
  row("Positive", cm.tp + cm.fp, cm.tp, "TP", cm.fp, "FP");
  row("Negative", cm.fn + cm.tn, cm.fn, "FN", cm.tn, "TN");
  if (cm.total() > 0) {
    out << "Accuracy: " << format_accuracy(accuracy(cm)) << "% ("
        << (cm.tp + cm.tn) << "/" << cm.total() << ")\n";
  }
}

void print_report(std::ostream& out, const EvalReport& report) {
  static constexpr std::array<const char*, 3> kTitles = {
      "Method A (movement detection)", "Method B (region of interest)",
      "Both methods combined"};
  for (Method m : kMethods) {
    const auto i = static_cast<std::size_t>(m);
    print_matrix_table(out, kTitles[i], report.matrices[i]);
    const LatencyStats& lat = report.latency[i];
    char buf[128];
    std::snprintf(buf, sizeof buf, "Latency (us): max %.1f  mean %.1f  p99 %.1f\n\n", lat.max_us,
                  lat.mean_us, lat.p99_us);
    out << buf;
  }
  out << "Frames evaluated: " << report.frames_evaluated << " (mode " << to_string(report.mode)
      << ")\n";
}

}  // namespace sentry
