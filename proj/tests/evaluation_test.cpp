#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "sentry/error.hpp"
#include "sentry/evaluation.hpp"
#include "sentry/pgm.hpp"
#include "sentry/synth.hpp"
#include "test_util.hpp"

namespace sentry {
namespace {

using testing::TempDir;

TEST(Accuracy, FieldTrialMatrices) {
  // Detector tables from the field trial: 1114 frames each.
  const ConfusionMatrix motion{1027, 11, 28, 48};
  const ConfusionMatrix roi{1040, 16, 17, 41};
  EXPECT_EQ(motion.total(), 1114u);
  EXPECT_EQ(roi.total(), 1114u);
  EXPECT_NEAR(accuracy(motion), 96.5, 0.05);
  EXPECT_NEAR(accuracy(roi), 97.0, 0.05);
  EXPECT_EQ(format_accuracy(accuracy(motion)), "96.5");
  EXPECT_EQ(format_accuracy(accuracy(roi)), "97.0");
}

TEST(Accuracy, IndependentRatio) {
  // 1075 / 1114 and 1081 / 1114 by hand.
  EXPECT_DOUBLE_EQ(accuracy({1027, 11, 28, 48}), 1075.0 * 100.0 / 1114.0);
  EXPECT_DOUBLE_EQ(accuracy({1040, 16, 17, 41}), 1081.0 * 100.0 / 1114.0);
}

TEST(Accuracy, EdgeCases) {
  EXPECT_DOUBLE_EQ(accuracy({10, 0, 0, 0}), 100.0);
  EXPECT_DOUBLE_EQ(accuracy({0, 0, 0, 10}), 100.0);
  EXPECT_DOUBLE_EQ(accuracy({0, 5, 5, 0}), 0.0);
  EXPECT_THROW(accuracy({}), DataError);
}

std::vector<GroundTruthLabel> labels_from(const std::vector<bool>& present) {
  std::vector<GroundTruthLabel> labels;
  for (std::size_t i = 0; i < present.size(); ++i) labels.push_back({i, present[i], {}});
  return labels;
}

TEST(Confusion, FourCells) {
  const auto labels = labels_from({true, false, true, false});
  const auto cm = confusion(std::vector<bool>{true, true, false, false}, labels);
  EXPECT_EQ(cm, (ConfusionMatrix{1, 1, 1, 1}));
}

TEST(Confusion, RandomTallyOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng() % 300;
    std::vector<bool> pred(n), actual(n);
    std::uint64_t cells[2][2] = {};
    for (std::size_t i = 0; i < n; ++i) {
      pred[i] = rng() & 1;
      actual[i] = rng() & 1;
      ++cells[pred[i]][actual[i]];
    }
    const auto cm = confusion(pred, labels_from(actual));
    EXPECT_EQ(cm.tp, cells[1][1]);
    EXPECT_EQ(cm.fp, cells[1][0]);
    EXPECT_EQ(cm.fn, cells[0][1]);
    EXPECT_EQ(cm.tn, cells[0][0]);
    EXPECT_EQ(cm.total(), n);
  }
}

TEST(Confusion, Mismatches) {
  const auto labels = labels_from({true, false});
  EXPECT_THROW(confusion(std::vector<bool>{true}, labels), DataError);
  const std::vector<Prediction> shifted = {{1, true}, {2, false}};
  EXPECT_THROW(confusion(std::span<const Prediction>(shifted), labels), DataError);
  const std::vector<Prediction> aligned = {{0, true}, {1, false}};
  EXPECT_EQ(confusion(std::span<const Prediction>(aligned), labels), (ConfusionMatrix{1, 0, 0, 1}));
}

TEST(Labels, ParseAndRoundTrip) {
  const auto labels = parse_labels(
      "frame,present,quadrants\n2,0,\n0,1,Q0;Q3\r\n1,true,\n\n");
  ASSERT_EQ(labels.size(), 3u);
  EXPECT_EQ(labels[0], (GroundTruthLabel{0, true, {Quadrant::Q0, Quadrant::Q3}}));
  EXPECT_EQ(labels[1], (GroundTruthLabel{1, true, {}}));
  EXPECT_EQ(labels[2], (GroundTruthLabel{2, false, {}}));

  std::ostringstream out;
  write_labels(labels, out);
  EXPECT_EQ(out.str(), "frame,present,quadrants\n0,1,Q0;Q3\n1,1,\n2,0,\n");
  EXPECT_EQ(parse_labels(out.str()), labels);
}

TEST(Labels, Errors) {
  EXPECT_THROW(parse_labels(""), FormatError);
  EXPECT_THROW(parse_labels("frame,present\n0,1\n"), FormatError);
  EXPECT_THROW(parse_labels("frame,present,quadrants\nx,1,\n"), FormatError);
  EXPECT_THROW(parse_labels("frame,present,quadrants\n0,yes,\n"), FormatError);
  EXPECT_THROW(parse_labels("frame,present,quadrants\n0,1,Q4\n"), FormatError);
  EXPECT_THROW(parse_labels("frame,present,quadrants\n0,0,Q1\n"), FormatError);
  EXPECT_THROW(parse_labels("frame,present,quadrants\n0,1,\n0,0,\n"), FormatError);
  EXPECT_THROW(parse_labels("frame,present,quadrants\n0,1\n"), FormatError);
  EXPECT_THROW(read_labels("/nonexistent/labels.csv"), IoError);
}

TEST(Latency, NearestRankP99) {
  std::vector<double> samples(200);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = static_cast<double>(200 - i);
  const auto s = summarize_latency(samples);
  EXPECT_DOUBLE_EQ(s.max_us, 200.0);
  EXPECT_DOUBLE_EQ(s.mean_us, 100.5);
  EXPECT_DOUBLE_EQ(s.p99_us, 198.0);  // rank ceil(0.99 * 200) = 198
  const std::vector<double> one = {7.0};
  EXPECT_DOUBLE_EQ(summarize_latency(one).p99_us, 7.0);
  EXPECT_DOUBLE_EQ(summarize_latency({}).max_us, 0.0);
}

synth::SceneSpec static_scene(std::uint64_t frames) {
  synth::SceneSpec s;
  s.width = 32;
  s.height = 24;
  s.frames = frames;
  s.ambient = 100;
  s.noise_sigma = 1.0;
  s.seed = 9;
  return s;
}

synth::SceneSpec crossing_scene() {
  synth::SceneSpec s = static_scene(60);
  s.blobs.push_back({120.0, 3.0, {{5, -8, 6}, {25, 40, 18}, {45, 8, 18}}, true});
  return s;
}

TEST(Evaluate, StaticSceneHasNoMotionPositives) {
  TempDir dir;
  synth::generate(static_scene(50), dir.path());
  const auto report = run_eval(dir.path(), dir / "labels.csv", {}, {}, CombineMode::ParallelOr);
  EXPECT_EQ(report.frames_evaluated, 50u);
  EXPECT_EQ(report.matrix(Method::MethodA).fp, 0u);
  EXPECT_EQ(report.matrix(Method::MethodA).tn, 50u);
  EXPECT_EQ(report.matrix(Method::MethodB).fp, 0u);
  EXPECT_DOUBLE_EQ(report.accuracy_of(Method::Hybrid), 100.0);
}

TEST(Evaluate, ConservationAndUnion) {
  const auto data = synth::render(crossing_scene());
  const auto report = evaluate(data.frames, data.labels, {}, {}, CombineMode::ParallelOr);
  std::uint64_t positives = 0;
  for (const auto& l : data.labels) positives += l.human_present ? 1 : 0;
  for (Method m : kMethods) {
    const auto& cm = report.matrix(m);
    EXPECT_EQ(cm.total(), data.frames.size());
    EXPECT_EQ(cm.tp + cm.fn, positives);
    EXPECT_EQ(report.predictions[static_cast<std::size_t>(m)].size(), data.frames.size());
  }
  const auto& a = report.matrix(Method::MethodA);
  const auto& b = report.matrix(Method::MethodB);
  const auto& h = report.matrix(Method::Hybrid);
  EXPECT_GE(h.tp, std::max(a.tp, b.tp));
  EXPECT_LE(h.tn, std::min(a.tn, b.tn));
  for (std::size_t i = 0; i < data.frames.size(); ++i) {
    EXPECT_EQ(report.predictions[2][i], report.predictions[0][i] || report.predictions[1][i]) << i;
  }
  EXPECT_GT(h.tp, 0u);
  for (Method m : kMethods) {
    EXPECT_GE(report.latency_of(m).max_us, report.latency_of(m).mean_us);
    EXPECT_GE(report.latency_of(m).max_us, report.latency_of(m).p99_us);
  }
}

TEST(Evaluate, MissingLabelNamesTheFrame) {
  TempDir dir;
  const auto summary = synth::generate(static_scene(6), dir.path());
  ASSERT_EQ(summary.frames, 6u);
  auto labels = read_labels(dir / "labels.csv");
  labels.erase(labels.begin() + 4);
  write_labels(labels, dir / "labels.csv");
  try {
    run_eval(dir.path(), dir / "labels.csv", {}, {}, CombineMode::ParallelOr);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("missing label for frame 4"), std::string::npos) << e.what();
  }
}

TEST(Evaluate, ExtraLabelIsAnError) {
  const auto data = synth::render(static_scene(4));
  auto labels = data.labels;
  labels.push_back({4, false, {}});
  EXPECT_THROW(evaluate(data.frames, labels, {}, {}, CombineMode::ParallelOr), DataError);
}

TEST(Evaluate, IndexIsFilenameOrder) {
  TempDir dir;
  const auto data = synth::render(static_scene(3));
  // Written out of order with non-contiguous names: position decides the index.
  write_pgm(data.frames[2], dir / "c_30.pgm");
  write_pgm(data.frames[0], dir / "a_10.pgm");
  write_pgm(data.frames[1], dir / "b_20.pgm");
  const auto paths = list_frames(dir.path());
  ASSERT_EQ(paths.size(), 3u);
  EXPECT_EQ(paths[0].filename(), "a_10.pgm");
  EXPECT_EQ(paths[2].filename(), "c_30.pgm");
  write_labels(data.labels, dir / "labels.csv");
  EXPECT_EQ(run_eval(dir.path(), dir / "labels.csv", {}, {}, CombineMode::ParallelOr).frames_evaluated,
            3u);
}

TEST(Evaluate, DimensionChangeIsAnError) {
  TempDir dir;
  write_pgm(ThermalFrame::filled(4, 4, 10), dir / "a.pgm");
  write_pgm(ThermalFrame::filled(6, 4, 10), dir / "b.pgm");
  write_labels(labels_from({false, false}), dir / "labels.csv");
  EXPECT_THROW(run_eval(dir.path(), dir / "labels.csv", {}, {}, CombineMode::ParallelOr),
               DimensionError);
}

TEST(Report, TableShowsAccuracy) {
  std::ostringstream out;
  print_matrix_table(out, "Method A", {1027, 11, 28, 48});
  const std::string text = out.str();
  EXPECT_NE(text.find("Accuracy: 96.5% (1075/1114)"), std::string::npos) << text;
  EXPECT_NE(text.find("1027 TP"), std::string::npos);
  EXPECT_NE(text.find("48 TN"), std::string::npos);
}

}  // namespace
}  // namespace sentry
