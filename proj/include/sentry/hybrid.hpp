#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "sentry/motion.hpp"
#include "sentry/roi.hpp"

namespace sentry {

enum class CombineMode : std::uint8_t {
  // Both detectors run on every frame; verdict is their OR.
  ParallelOr,
  // Region test first; the movement result only feeds the verdict when no
  // quadrant is flagged. Movement detection still runs every frame so the
  // background evolves exactly as in ParallelOr.
  SequentialBThenA,
};

std::string_view to_string(CombineMode mode);
// Accepts "parallel" / "sequential" (case-insensitive).
std::optional<CombineMode> parse_combine_mode(std::string_view text);

struct Detection {
  std::uint64_t frame_index = 0;
  std::optional<MotionResult> motion;
  std::optional<RoiResult> roi;
  bool verdict = false;
  CombineMode mode = CombineMode::ParallelOr;
  // Processing wall time, nanosecond resolution.
  double elapsed_us = 0.0;
};

// An indeterminate first-frame motion result counts as "no movement".
Detection hybrid_step(MotionState& motion_state, const ThermalFrame& frame,
                      const RoiConfig& roi_config, CombineMode mode = CombineMode::ParallelOr);

}  // namespace sentry
