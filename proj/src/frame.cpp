#include "sentry/frame.hpp"

#include <algorithm>
#include <string>

#include "sentry/error.hpp"
#include "sentry/kernels.hpp"

namespace sentry {

void validate_dimensions(std::uint32_t width, std::uint32_t height, std::size_t pixel_count) {
  if (width < 2 || height < 2) {
    throw DimensionError("frame must be at least 2x2, got " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  if (width % 2 != 0 || height % 2 != 0) {
    throw DimensionError("frame dimensions must be even, got " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  if (pixel_count != std::size_t{width} * height) {
    throw DimensionError("pixel count " + std::to_string(pixel_count) + " does not match " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
}

ThermalFrame::ThermalFrame(std::uint32_t width, std::uint32_t height, std::vector<Pixel> pixels,
                           std::uint64_t frame_index, std::optional<std::uint64_t> timestamp_ms)
    : width_(width),
      height_(height),
      pixels_(std::move(pixels)),
      frame_index_(frame_index),
      timestamp_ms_(timestamp_ms) {
  validate_dimensions(width_, height_, pixels_.size());
}

ThermalFrame ThermalFrame::filled(std::uint32_t width, std::uint32_t height, Pixel value,
                                  std::uint64_t frame_index) {
  return ThermalFrame(width, height, std::vector<Pixel>(std::size_t{width} * height, value),
                      frame_index);
}

ThermalFrame ThermalFrame::with_index(std::uint64_t frame_index,
                                      std::optional<std::uint64_t> timestamp_ms) const {
  ThermalFrame copy = *this;
  copy.frame_index_ = frame_index;
  copy.timestamp_ms_ = timestamp_ms;
  return copy;
}

std::string_view to_string(Quadrant q) {
  static constexpr std::array<std::string_view, 4> kNames = {"Q0", "Q1", "Q2", "Q3"};
  return kNames[index_of(q)];
}

std::optional<Quadrant> parse_quadrant(std::string_view text) {
  if (text.size() != 2 || (text[0] != 'Q' && text[0] != 'q')) return std::nullopt;
  if (text[1] < '0' || text[1] > '3') return std::nullopt;
  return static_cast<Quadrant>(text[1] - '0');
}

ThermalFrame abs_diff(const ThermalFrame& a, const ThermalFrame& b) {
  if (!a.same_shape(b)) throw DimensionError("abs_diff: frames differ in size");
  std::vector<Pixel> out(a.pixel_count());
  kernels::abs_diff(a.pixels(), b.pixels(), out);
  return ThermalFrame(a.width(), a.height(), std::move(out), a.frame_index(), a.timestamp_ms());
}

std::uint64_t frame_sum(const ThermalFrame& frame) { return kernels::sum(frame.pixels()); }

double frame_mean(const ThermalFrame& frame) {
  return static_cast<double>(frame_sum(frame)) / static_cast<double>(frame.pixel_count());
}

FrameStats frame_stats(const ThermalFrame& frame) {
  const auto [lo, hi] = std::minmax_element(frame.pixels().begin(), frame.pixels().end());
  return FrameStats{frame_mean(frame), *lo, *hi};
}

QuadrantArray<Rect> split_quadrants(std::uint32_t width, std::uint32_t height) {
  if (width % 2 != 0 || height % 2 != 0) {
    throw DimensionError("cannot split odd-sized frame into quadrants");
  }
  const std::uint32_t hw = width / 2;
  const std::uint32_t hh = height / 2;
  return {Rect{0, 0, hw, hh}, Rect{hw, 0, hw, hh}, Rect{0, hh, hw, hh}, Rect{hw, hh, hw, hh}};
}

QuadrantArray<Rect> split_quadrants(const ThermalFrame& frame) {
  return split_quadrants(frame.width(), frame.height());
}

QuadrantArray<std::uint64_t> quadrant_sums(const ThermalFrame& frame) {
  const std::uint32_t hw = frame.width() / 2;
  const std::uint32_t hh = frame.height() / 2;
  const auto& k = kernels::active();
  QuadrantArray<std::uint64_t> sums{};
  for (std::uint32_t y = 0; y < frame.height(); ++y) {
    const Pixel* row = frame.row(y).data();
    const std::size_t top = y < hh ? 0 : 2;
    sums[top] += k.sum(row, hw);
    sums[top + 1] += k.sum(row + hw, hw);
  }
  return sums;
}

}  // namespace sentry
