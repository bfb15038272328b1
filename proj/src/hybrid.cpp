#include "sentry/hybrid.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <string>

namespace sentry {

std::string_view to_string(CombineMode mode) {
  return mode == CombineMode::ParallelOr ? "parallel" : "sequential";
}

std::optional<CombineMode> parse_combine_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "parallel" || lower == "parallel-or") return CombineMode::ParallelOr;
  if (lower == "sequential" || lower == "sequential-b-then-a") return CombineMode::SequentialBThenA;
  return std::nullopt;
}

Detection hybrid_step(MotionState& motion_state, const ThermalFrame& frame,
                      const RoiConfig& roi_config, CombineMode mode) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  Detection detection;
  detection.frame_index = frame.frame_index();
  detection.mode = mode;

  RoiResult roi = roi_analyze(frame, roi_config);
  MotionResult motion = motion_state.step(frame);
  const bool moved = motion.movement && !motion.indeterminate;

  detection.verdict = roi.any || moved;
  if (mode == CombineMode::ParallelOr || !roi.any) detection.motion = motion;
  detection.roi = std::move(roi);

  detection.elapsed_us =
      std::chrono::duration<double, std::micro>(Clock::now() - start).count();
  return detection;
}

}  // namespace sentry
