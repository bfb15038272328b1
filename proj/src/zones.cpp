#include "sentry/zones.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <string>

#include "sentry/error.hpp"

namespace sentry {
namespace {

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  const auto first = std::find_if(s.begin(), s.end(), not_space);
  const auto last = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return first < last ? std::string_view(&*first, static_cast<std::size_t>(last - first))
                      : std::string_view{};
}

std::uint32_t parse_positive(std::string_view value, const std::string& key, std::size_t line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || v < 1 || v > UINT32_MAX) {
    throw ConfigError("zone config line " + std::to_string(line) + ": " + key +
                      " must be a positive integer");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

std::string_view to_string(ZoneClass c) {
  switch (c) {
    case ZoneClass::Ignore:
      return "ignore";
    case ZoneClass::Warning:
      return "warning";
    case ZoneClass::Critical:
      return "critical";
  }
  return "?";
}

std::string_view to_string(SafetyState s) {
  switch (s) {
    case SafetyState::Run:
      return "Run";
    case SafetyState::Slow:
      return "Slow";
    case SafetyState::Stop:
      return "Stop";
  }
  return "?";
}

std::string_view to_string(ZoneEventKind k) {
  switch (k) {
    case ZoneEventKind::Entered:
      return "Entered";
    case ZoneEventKind::Cleared:
      return "Cleared";
    case ZoneEventKind::StateChanged:
      return "StateChanged";
  }
  return "?";
}

void ZoneConfig::validate() const {
  if (debounce_frames < 1) throw ConfigError("debounce_frames must be >= 1");
  if (clear_frames < 1) throw ConfigError("clear_frames must be >= 1");
}

ZoneConfig parse_zone_config(std::string_view text) {
  ZoneConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("zone config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = lowercase(trim(line.substr(0, eq)));
    const std::string value = lowercase(trim(line.substr(eq + 1)));

    if (key == "debounce") {
      config.debounce_frames = parse_positive(value, key, line_no);
    } else if (key == "clear") {
      config.clear_frames = parse_positive(value, key, line_no);
    } else if (const auto q = parse_quadrant(key)) {
      ZoneClass cls;
      if (value == "ignore") {
        cls = ZoneClass::Ignore;
      } else if (value == "warning") {
        cls = ZoneClass::Warning;
      } else if (value == "critical") {
        cls = ZoneClass::Critical;
      } else {
        throw ConfigError("zone config line " + std::to_string(line_no) + ": unknown class '" +
                          value + "'");
      }
      config.zone_class[index_of(*q)] = cls;
    } else {
      throw ConfigError("zone config line " + std::to_string(line_no) + ": unknown key '" + key +
                        "'");
    }
  }
  config.validate();
  return config;
}

ZoneConfig load_zone_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open zone config " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_zone_config(text);
}

ZoneState::ZoneState(ZoneConfig config) : config_(config) { config_.validate(); }

ZoneUpdate ZoneState::update(const Detection& detection) {
  if (!detection.roi) {
    throw DataError("zone update for frame " + std::to_string(detection.frame_index) +
                    " has no region-of-interest result");
  }
  ZoneUpdate out;
  const std::uint64_t frame = detection.frame_index;

  for (Quadrant q : kQuadrants) {
    if (config_.class_of(q) == ZoneClass::Ignore) continue;
    Track& t = quadrants_[index_of(q)];
    if (detection.roi->flagged(q)) {
      ++t.flagged_run;
      t.clear_run = 0;
      if (!t.occupied && t.flagged_run >= config_.debounce_frames) {
        t.occupied = true;
        out.events.push_back({frame, ZoneEventKind::Entered, q, std::nullopt, std::nullopt});
      }
    } else {
      t.flagged_run = 0;
      if (t.occupied && ++t.clear_run >= config_.clear_frames) {
        t.occupied = false;
        t.clear_run = 0;
        out.events.push_back({frame, ZoneEventKind::Cleared, q, std::nullopt, std::nullopt});
      }
    }
  }

  if (detection.verdict && !detection.roi->any) unlocalized_hold_ = config_.debounce_frames;

  SafetyState target = SafetyState::Run;
  for (Quadrant q : kQuadrants) {
    if (!occupied(q)) continue;
    const SafetyState implied =
        config_.class_of(q) == ZoneClass::Critical ? SafetyState::Stop : SafetyState::Slow;
    target = std::max(target, implied);
  }
  if (unlocalized_hold_ > 0) {
    target = std::max(target, SafetyState::Slow);
    --unlocalized_hold_;
  }

  if (target != state_) {
    out.events.push_back({frame, ZoneEventKind::StateChanged, std::nullopt, state_, target});
    state_ = target;
  }
  out.state = state_;
  return out;
}

}  // namespace sentry
