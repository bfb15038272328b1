#include "sentry/motion.hpp"

#include <cmath>
#include <string>

#include "sentry/error.hpp"
#include "sentry/kernels.hpp"

namespace sentry {

void MotionConfig::validate() const {
  if (active_pixel_delta < 1) throw ConfigError("active_pixel_delta must be >= 1");
  if (!(active_fraction > 0.0 && active_fraction <= 1.0)) {
    throw ConfigError("active_fraction must be in (0, 1], got " + std::to_string(active_fraction));
  }
  if (max_hold_frames && *max_hold_frames == 0) throw ConfigError("max_hold_frames must be positive");
}

std::size_t required_active_count(double active_fraction, std::size_t pixel_count) {
  const double exact = active_fraction * static_cast<double>(pixel_count);
  const double nearest = std::round(exact);
  if (std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(exact));
}

MotionState::MotionState(MotionConfig config) : config_(config) { config_.validate(); }

MotionResult MotionState::step(const ThermalFrame& frame) {
  if (last_index_ && frame.frame_index() <= *last_index_) {
    throw DataError("frame_index " + std::to_string(frame.frame_index()) +
                    " does not follow " + std::to_string(*last_index_));
  }
  MotionResult result;
  result.required_count = required_active_count(config_.active_fraction, frame.pixel_count());

  if (!background_) {
    last_index_ = frame.frame_index();
    background_ = frame;
    frames_since_update_ = 0;
    result.indeterminate = true;
    result.background_updated = true;
    return result;
  }
  if (!frame.same_shape(*background_)) {
    throw DimensionError("frame " + std::to_string(frame.frame_index()) + " is " +
                         std::to_string(frame.width()) + "x" + std::to_string(frame.height()) +
                         ", stream is " + std::to_string(background_->width()) + "x" +
                         std::to_string(background_->height()));
  }
  last_index_ = frame.frame_index();

  result.active_count =
      kernels::count_diff_at_least(frame.pixels(), background_->pixels(), config_.active_pixel_delta);
  result.movement = result.active_count >= result.required_count;

  if (!result.movement) {
    background_ = frame;
    frames_since_update_ = 0;
    result.background_updated = true;
  } else {
    ++frames_since_update_;
    if (config_.max_hold_frames && frames_since_update_ > *config_.max_hold_frames) {
      background_ = frame;
      frames_since_update_ = 0;
      result.background_updated = true;
      result.forced_refresh = true;
    }
  }
  return result;
}

}  // namespace sentry
