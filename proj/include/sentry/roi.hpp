#pragma once

#include "sentry/frame.hpp"

namespace sentry {

struct RoiConfig {
  // A quadrant is of interest when its mean is strictly greater than
  // ratio * frame mean.
  double ratio = 1.20;
  // Quadrants darker than this are never flagged (keeps near-black frames negative).
  double min_quadrant_mean = 1.0;

  void validate() const;
};

struct RoiResult {
  double frame_mean = 0.0;
  QuadrantArray<double> quadrant_means{};
  QuadrantArray<bool> flags{};
  bool any = false;

  bool flagged(Quadrant q) const { return flags[index_of(q)]; }
  double mean(Quadrant q) const { return quadrant_means[index_of(q)]; }
};

// Stateless quadrant region-of-interest test.
RoiResult roi_analyze(const ThermalFrame& frame, const RoiConfig& config = {});

}  // namespace sentry
