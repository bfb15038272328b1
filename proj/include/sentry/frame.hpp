#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace sentry {

using Pixel = std::uint16_t;

/**
 * One radiometric thermal image: a row-major grid of unsigned 16-bit sensor
 * counts. Units are left uninterpreted; every threshold in the library is
 * expressed in the same counts.
 *
 * Width and height are both even and at least 2 so the frame splits exactly
 * into four quadrants. Frames are immutable once constructed.
 */
class ThermalFrame {
 public:
  ThermalFrame(std::uint32_t width, std::uint32_t height, std::vector<Pixel> pixels,
               std::uint64_t frame_index = 0,
               std::optional<std::uint64_t> timestamp_ms = std::nullopt);

  // Uniformly filled frame.
  static ThermalFrame filled(std::uint32_t width, std::uint32_t height, Pixel value,
                             std::uint64_t frame_index = 0);

  std::uint32_t width() const { return width_; }
  std::uint32_t height() const { return height_; }
  std::size_t pixel_count() const { return pixels_.size(); }
  std::uint64_t frame_index() const { return frame_index_; }
  std::optional<std::uint64_t> timestamp_ms() const { return timestamp_ms_; }

  std::span<const Pixel> pixels() const { return pixels_; }
  std::span<const Pixel> row(std::uint32_t y) const {
    return std::span<const Pixel>(pixels_).subspan(std::size_t{y} * width_, width_);
  }
  Pixel at(std::uint32_t x, std::uint32_t y) const { return pixels_[std::size_t{y} * width_ + x]; }

  bool same_shape(const ThermalFrame& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  // Copy with a different ordinal, for replaying a frame inside a new stream.
  ThermalFrame with_index(std::uint64_t frame_index,
                          std::optional<std::uint64_t> timestamp_ms = std::nullopt) const;

  friend bool operator==(const ThermalFrame&, const ThermalFrame&) = default;

 private:
  std::uint32_t width_;
  std::uint32_t height_;
  std::vector<Pixel> pixels_;
  std::uint64_t frame_index_;
  std::optional<std::uint64_t> timestamp_ms_;
};

// Throws DimensionError unless width/height are even, >= 2 and match the pixel count.
void validate_dimensions(std::uint32_t width, std::uint32_t height, std::size_t pixel_count);

enum class Quadrant : std::uint8_t { Q0 = 0, Q1 = 1, Q2 = 2, Q3 = 3 };

inline constexpr std::array<Quadrant, 4> kQuadrants = {Quadrant::Q0, Quadrant::Q1, Quadrant::Q2,
                                                       Quadrant::Q3};

constexpr std::size_t index_of(Quadrant q) { return static_cast<std::size_t>(q); }
std::string_view to_string(Quadrant q);
// Case-insensitive "Q0".."Q3".
std::optional<Quadrant> parse_quadrant(std::string_view text);

// Per-quadrant values indexed by Quadrant.
template <typename T>
using QuadrantArray = std::array<T, 4>;

struct Rect {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::uint32_t width = 0;
  std::uint32_t height = 0;

  std::size_t area() const { return std::size_t{width} * height; }
  bool contains(std::uint32_t px, std::uint32_t py) const {
    return px >= x && px < x + width && py >= y && py < y + height;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct FrameStats {
  double mean = 0.0;
  Pixel min = 0;
  Pixel max = 0;
};

// Per-pixel |a - b|. The result carries a's frame_index and timestamp.
ThermalFrame abs_diff(const ThermalFrame& a, const ThermalFrame& b);

// Exact 64-bit pixel sum.
std::uint64_t frame_sum(const ThermalFrame& frame);
double frame_mean(const ThermalFrame& frame);
FrameStats frame_stats(const ThermalFrame& frame);

// Q0 top-left, Q1 top-right, Q2 bottom-left, Q3 bottom-right; each (w/2)x(h/2).
QuadrantArray<Rect> split_quadrants(std::uint32_t width, std::uint32_t height);
QuadrantArray<Rect> split_quadrants(const ThermalFrame& frame);

// Exact pixel sums of the four quadrants.
QuadrantArray<std::uint64_t> quadrant_sums(const ThermalFrame& frame);

}  // namespace sentry
