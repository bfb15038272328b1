#include "sentry/roi.hpp"

#include <cmath>
#include <string>

#include "sentry/error.hpp"

namespace sentry {

void RoiConfig::validate() const {
  if (!(ratio >= 1.0) || !std::isfinite(ratio)) {
    throw ConfigError("roi ratio must be >= 1.0, got " + std::to_string(ratio));
  }
  if (!(min_quadrant_mean >= 0.0)) throw ConfigError("min_quadrant_mean must be >= 0");
}

RoiResult roi_analyze(const ThermalFrame& frame, const RoiConfig& config) {
  config.validate();
  const QuadrantArray<std::uint64_t> sums = quadrant_sums(frame);
  const auto quadrant_pixels = static_cast<double>(frame.pixel_count() / 4);

  RoiResult result;
  const std::uint64_t total = sums[0] + sums[1] + sums[2] + sums[3];
  result.frame_mean = static_cast<double>(total) / static_cast<double>(frame.pixel_count());
  const double threshold = config.ratio * result.frame_mean;
  for (Quadrant q : kQuadrants) {
    const std::size_t i = index_of(q);
    result.quadrant_means[i] = static_cast<double>(sums[i]) / quadrant_pixels;
    result.flags[i] =
        result.quadrant_means[i] > threshold && result.quadrant_means[i] >= config.min_quadrant_mean;
    result.any = result.any || result.flags[i];
  }
  return result;
}

}  // namespace sentry
