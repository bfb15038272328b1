#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "sentry/frame.hpp"

namespace sentry {

struct MotionConfig {
  // A pixel is active when |frame - background| >= this many counts.
  std::uint16_t active_pixel_delta = 20;
  // Fraction of the frame's pixels that must be active to report movement.
  double active_fraction = 0.05;
  // When set, a background held through this many consecutive movement
  // frames is force-replaced on the next one.
  std::optional<std::uint32_t> max_hold_frames;

  void validate() const;
};

// ceil(fraction * pixel_count), guarding against products that land a hair
// above an integer because of binary rounding (0.05 * 19200 -> 960).
std::size_t required_active_count(double active_fraction, std::size_t pixel_count);

struct MotionResult {
  bool movement = false;
  std::size_t active_count = 0;
  std::size_t required_count = 0;
  bool background_updated = false;
  // Set only for the first frame of a stream, which has nothing to compare to.
  bool indeterminate = false;
  // Background replaced because max_hold_frames elapsed during movement.
  bool forced_refresh = false;
};

/**
 * Background-subtraction movement detector.
 *
 * The first frame becomes the background. Each later frame is compared
 * against it: if at least `required_count` pixels are active the frame is a
 * movement frame and the background is kept; otherwise the frame replaces the
 * background, which tracks slow ambient drift.
 *
 * One state per stream; not safe for concurrent mutation.
 */
class MotionState {
 public:
  explicit MotionState(MotionConfig config = {});

  const MotionConfig& config() const { return config_; }
  const std::optional<ThermalFrame>& background() const { return background_; }
  std::uint32_t frames_since_update() const { return frames_since_update_; }

  MotionResult step(const ThermalFrame& frame);

 private:
  MotionConfig config_;
  std::optional<ThermalFrame> background_;
  std::uint32_t frames_since_update_ = 0;
  std::optional<std::uint64_t> last_index_;
};

inline MotionState motion_init(MotionConfig config = {}) { return MotionState(config); }
inline MotionResult motion_step(MotionState& state, const ThermalFrame& frame) {
  return state.step(frame);
}

}  // namespace sentry
