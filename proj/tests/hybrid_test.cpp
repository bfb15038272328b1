#include <gtest/gtest.h>

#include "sentry/hybrid.hpp"
#include "sentry/synth.hpp"
#include "test_util.hpp"

namespace sentry {
namespace {

using testing::quadrant_frame;

// 8x8 scenes: a cool uniform background, a uniform warm-up (movement, no
// quadrant stands out) and a hot Q0 (quadrant flag).
ThermalFrame cool(std::uint64_t i) { return ThermalFrame::filled(8, 8, 100, i); }
ThermalFrame warm(std::uint64_t i) { return ThermalFrame::filled(8, 8, 200, i); }
ThermalFrame hot_q0(std::uint64_t i) { return quadrant_frame(8, 8, {400, 100, 100, 100}, i); }

TEST(HybridStep, MovementOnlyIsPositive) {
  MotionState m;
  hybrid_step(m, cool(0), {});
  const auto d = hybrid_step(m, warm(1), {});
  ASSERT_TRUE(d.motion && d.roi);
  EXPECT_TRUE(d.motion->movement);
  EXPECT_FALSE(d.roi->any);
  EXPECT_TRUE(d.verdict);
}

TEST(HybridStep, NeitherMethodIsNegative) {
  MotionState m;
  hybrid_step(m, cool(0), {});
  const auto d = hybrid_step(m, cool(1), {});
  EXPECT_FALSE(d.motion->movement);
  EXPECT_FALSE(d.roi->any);
  EXPECT_FALSE(d.verdict);
}

TEST(HybridStep, BothMethodsPositive) {
  MotionState m;
  hybrid_step(m, cool(0), {});
  const auto d = hybrid_step(m, hot_q0(1), {});
  EXPECT_TRUE(d.motion->movement);
  EXPECT_TRUE(d.roi->any);
  EXPECT_TRUE(d.verdict);
}

TEST(HybridStep, FirstFrameCarriedByRegionTest) {
  synth::SceneSpec scene;
  scene.ambient = 40;
  scene.blobs.push_back({150.0, 14.0, {{0, 120, 90}}, true});
  MotionState m;
  const auto d = hybrid_step(m, synth::render_frame(scene, 0), {});
  EXPECT_TRUE(d.motion->indeterminate);
  EXPECT_FALSE(d.motion->movement);
  EXPECT_TRUE(d.roi->flagged(Quadrant::Q3));
  EXPECT_TRUE(d.verdict);
}

TEST(HybridStep, SequentialWithholdsMotionWhenRegionFlags) {
  MotionState m;
  const auto first = hybrid_step(m, hot_q0(0), {}, CombineMode::SequentialBThenA);
  EXPECT_TRUE(first.roi->any);
  EXPECT_FALSE(first.motion);
  EXPECT_TRUE(first.verdict);
  // Motion still ran: the background was established by frame 0.
  ASSERT_TRUE(m.background());
  EXPECT_EQ(m.background()->frame_index(), 0u);

  const auto second = hybrid_step(m, hot_q0(1), {}, CombineMode::SequentialBThenA);
  EXPECT_FALSE(second.motion);
  const auto third = hybrid_step(m, cool(2), {}, CombineMode::SequentialBThenA);
  ASSERT_TRUE(third.motion);
  EXPECT_TRUE(third.motion->movement);  // hot_q0 background vs cool frame
  EXPECT_TRUE(third.verdict);
}

TEST(HybridStep, ModesAgreeOnVerdictAndBackground) {
  const auto data = synth::render(synth::reference_scene());
  MotionState par, seq;
  for (std::size_t i = 0; i < 300; ++i) {
    const auto a = hybrid_step(par, data.frames[i], {}, CombineMode::ParallelOr);
    const auto b = hybrid_step(seq, data.frames[i], {}, CombineMode::SequentialBThenA);
    ASSERT_EQ(a.verdict, b.verdict) << i;
    ASSERT_TRUE(a.motion && a.roi && b.roi);
    EXPECT_EQ(b.motion.has_value(), !b.roi->any);
    EXPECT_EQ(*par.background(), *seq.background());
  }
}

TEST(HybridStep, ParallelVerdictIsUnionOfStandaloneMethods) {
  synth::SceneSpec scene = synth::reference_scene();
  scene.frames = 400;
  const auto data = synth::render(scene);
  MotionState hybrid_state, alone;
  for (const auto& f : data.frames) {
    const auto d = hybrid_step(hybrid_state, f, {});
    const auto a = alone.step(f);
    const auto b = roi_analyze(f);
    const bool a_pos = a.movement && !a.indeterminate;
    ASSERT_EQ(d.verdict, a_pos || b.any) << f.frame_index();
    // Monotone: the verdict is an OR of component verdicts.
    if (a_pos || b.any) EXPECT_TRUE(d.verdict);
  }
}

TEST(HybridStep, RecordsElapsedTime) {
  MotionState m;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto d = hybrid_step(m, cool(i), {});
    EXPECT_GT(d.elapsed_us, 0.0);
    EXPECT_EQ(d.frame_index, i);
  }
}

TEST(CombineMode, Parse) {
  EXPECT_EQ(parse_combine_mode("Parallel"), CombineMode::ParallelOr);
  EXPECT_EQ(parse_combine_mode("sequential"), CombineMode::SequentialBThenA);
  EXPECT_FALSE(parse_combine_mode("vote"));
  EXPECT_EQ(to_string(CombineMode::SequentialBThenA), "sequential");
}

}  // namespace
}  // namespace sentry
