#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "sentry/frame.hpp"
#include "sentry/hybrid.hpp"

namespace sentry {

enum class ZoneClass : std::uint8_t { Ignore, Warning, Critical };

// Ordered by severity.
enum class SafetyState : std::uint8_t { Run = 0, Slow = 1, Stop = 2 };

std::string_view to_string(ZoneClass c);
std::string_view to_string(SafetyState s);

struct ZoneConfig {
  QuadrantArray<ZoneClass> zone_class{ZoneClass::Ignore, ZoneClass::Ignore, ZoneClass::Ignore,
                                      ZoneClass::Ignore};
  // Consecutive flagged frames before a quadrant counts as occupied.
  std::uint32_t debounce_frames = 3;
  // Consecutive unflagged frames before an occupied quadrant clears.
  std::uint32_t clear_frames = 3;

  ZoneClass class_of(Quadrant q) const { return zone_class[index_of(q)]; }
  void validate() const;
};

/**
 * Text format, one setting per line, case-insensitive:
 *
 *     # comment
 *     Q3=critical
 *     Q2=warning
 *     debounce=3
 *     clear=3
 *
 * Quadrants not mentioned are Ignore.
 */
ZoneConfig parse_zone_config(std::string_view text);
ZoneConfig load_zone_config(const std::filesystem::path& path);

enum class ZoneEventKind : std::uint8_t { Entered, Cleared, StateChanged };
std::string_view to_string(ZoneEventKind k);

struct ZoneEvent {
  std::uint64_t frame_index = 0;
  ZoneEventKind kind = ZoneEventKind::StateChanged;
  std::optional<Quadrant> quadrant;
  std::optional<SafetyState> from_state;
  std::optional<SafetyState> to_state;

  friend bool operator==(const ZoneEvent&, const ZoneEvent&) = default;
};

struct ZoneUpdate {
  SafetyState state = SafetyState::Run;
  // Entered/Cleared first, then at most one StateChanged.
  std::vector<ZoneEvent> events;
};

/**
 * Debounced quadrant occupancy and the Run/Slow/Stop safety state derived
 * from it. Ignore quadrants are not tracked. A positive verdict with no
 * flagged quadrant (movement only, no localization) holds the state at
 * Slow or above for debounce_frames frames.
 */
class ZoneState {
 public:
  explicit ZoneState(ZoneConfig config = {});

  const ZoneConfig& config() const { return config_; }
  SafetyState state() const { return state_; }
  bool occupied(Quadrant q) const { return quadrants_[index_of(q)].occupied; }

  // Throws DataError if the detection carries no RoiResult.
  ZoneUpdate update(const Detection& detection);

 private:
  struct Track {
    std::uint32_t flagged_run = 0;
    std::uint32_t clear_run = 0;
    bool occupied = false;
  };

  ZoneConfig config_;
  QuadrantArray<Track> quadrants_{};
  std::uint32_t unlocalized_hold_ = 0;
  SafetyState state_ = SafetyState::Run;
};

inline ZoneUpdate zone_update(ZoneState& state, const Detection& detection) {
  return state.update(detection);
}

}  // namespace sentry
