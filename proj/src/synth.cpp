#include "sentry/synth.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>

#include "sentry/error.hpp"
#include "sentry/pgm.hpp"

namespace sentry::synth {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const std::size_t at = s.find(sep);
    parts.push_back(trim(s.substr(0, at)));
    if (at == std::string_view::npos) break;
    s = s.substr(at + 1);
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw FormatError("scene line " + std::to_string(line) + ": bad " + std::string(what) + " '" +
                      std::string(text) + "'");
  }
  return value;
}

BlobSpec parse_blob(std::string_view value, std::size_t line) {
  const auto fields = split(value, ',');
  if (fields.size() != 4) {
    throw FormatError("scene line " + std::to_string(line) +
                      ": blob needs amplitude,sigma,kind,waypoints");
  }
  BlobSpec blob;
  blob.amplitude = parse_number<double>(fields[0], "amplitude", line);
  blob.sigma = parse_number<double>(fields[1], "sigma", line);
  std::string kind(fields[2]);
  std::transform(kind.begin(), kind.end(), kind.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (kind == "human") {
    blob.is_human = true;
  } else if (kind == "equipment") {
    blob.is_human = false;
  } else {
    throw FormatError("scene line " + std::to_string(line) + ": blob kind must be human or equipment");
  }
  for (std::string_view wp : split(fields[3], ';')) {
    const auto parts = split(wp, ':');
    if (parts.size() != 3) {
      throw FormatError("scene line " + std::to_string(line) + ": waypoint must be t:x:y");
    }
    blob.path.push_back({parse_number<std::uint64_t>(parts[0], "waypoint frame", line),
                         parse_number<double>(parts[1], "waypoint x", line),
                         parse_number<double>(parts[2], "waypoint y", line)});
  }
  return blob;
}

}  // namespace

void BlobSpec::validate() const {
  if (!(amplitude > 0.0)) throw ConfigError("blob amplitude must be > 0");
  if (!(sigma > 0.0)) throw ConfigError("blob sigma must be > 0");
  if (path.empty()) throw ConfigError("blob needs at least one waypoint");
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (path[i].frame <= path[i - 1].frame) {
      throw ConfigError("blob waypoint frames must be strictly increasing");
    }
  }
}

void SceneSpec::validate() const {
  validate_dimensions(width, height, std::size_t{width} * height);
  if (frames < 1) throw ConfigError("scene needs at least one frame");
  if (!(fps > 0.0)) throw ConfigError("fps must be > 0");
  if (!(noise_sigma >= 0.0)) throw ConfigError("noise sigma must be >= 0");
  for (const auto& blob : blobs) blob.validate();
}

std::optional<BlobPosition> blob_position(const BlobSpec& blob, std::uint64_t t) {
  const auto& path = blob.path;
  if (path.empty() || t < path.front().frame) return std::nullopt;
  if (path.size() == 1) return BlobPosition{path.front().x, path.front().y};
  if (t > path.back().frame) return std::nullopt;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Waypoint& a = path[i - 1];
    const Waypoint& b = path[i];
    if (t <= b.frame) {
      const double s = static_cast<double>(t - a.frame) / static_cast<double>(b.frame - a.frame);
      return BlobPosition{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
    }
  }
  return std::nullopt;
}

SceneSpec parse_scene(std::string_view text) {
  SceneSpec spec;
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
      throw FormatError("scene line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "width") {
      spec.width = parse_number<std::uint32_t>(value, key, line_no);
    } else if (key == "height") {
      spec.height = parse_number<std::uint32_t>(value, key, line_no);
    } else if (key == "frames") {
      spec.frames = parse_number<std::uint64_t>(value, key, line_no);
    } else if (key == "fps") {
      spec.fps = parse_number<double>(value, key, line_no);
    } else if (key == "ambient") {
      spec.ambient = parse_number<double>(value, key, line_no);
    } else if (key == "drift") {
      spec.drift_per_frame = parse_number<double>(value, key, line_no);
    } else if (key == "noise") {
      spec.noise_sigma = parse_number<double>(value, key, line_no);
    } else if (key == "seed") {
      spec.seed = parse_number<std::uint64_t>(value, key, line_no);
    } else if (key == "blob") {
      spec.blobs.push_back(parse_blob(value, line_no));
    } else {
      throw FormatError("scene line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
  }
  spec.validate();
  return spec;
}

SceneSpec load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scene file " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_scene(text);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

NoiseStream::NoiseStream(std::uint64_t seed, std::uint64_t frame_index)
    : state_(splitmix64(seed ^ splitmix64(frame_index))) {}

std::uint64_t NoiseStream::next_u64() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double NoiseStream::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double NoiseStream::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - next_uniform();  // (0, 1]
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

ThermalFrame render_frame(const SceneSpec& spec, std::uint64_t t) {
  const double base = spec.ambient + static_cast<double>(t) * spec.drift_per_frame;
  std::vector<double> field(std::size_t{spec.width} * spec.height, base);

  for (const BlobSpec& blob : spec.blobs) {
    const auto pos = blob_position(blob, t);
    if (!pos) continue;
    const double inv = 1.0 / (2.0 * blob.sigma * blob.sigma);
    for (std::uint32_t y = 0; y < spec.height; ++y) {
      const double dy = y - pos->y;
      double* row = field.data() + std::size_t{y} * spec.width;
      for (std::uint32_t x = 0; x < spec.width; ++x) {
        const double dx = x - pos->x;
        row[x] += blob.amplitude * std::exp(-(dx * dx + dy * dy) * inv);
      }
    }
  }

  std::vector<Pixel> pixels(field.size());
  NoiseStream noise(spec.seed, t);
  for (std::size_t i = 0; i < field.size(); ++i) {
    double v = field[i];
    if (spec.noise_sigma > 0.0) v += spec.noise_sigma * noise.next_normal();
    v = std::floor(v + 0.5);
    pixels[i] = static_cast<Pixel>(std::clamp(v, 0.0, 65535.0));
  }
  const auto timestamp = static_cast<std::uint64_t>(std::llround(static_cast<double>(t) * 1000.0 / spec.fps));
  return ThermalFrame(spec.width, spec.height, std::move(pixels), t, timestamp);
}

GroundTruthLabel label_frame(const SceneSpec& spec, std::uint64_t t) {
  GroundTruthLabel label;
  label.frame_index = t;
  QuadrantArray<bool> occupied{};
  for (const BlobSpec& blob : spec.blobs) {
    if (!blob.is_human) continue;
    const auto pos = blob_position(blob, t);
    if (!pos || pos->x < 0.0 || pos->y < 0.0 || pos->x >= spec.width || pos->y >= spec.height) {
      continue;
    }
    label.human_present = true;
    const std::size_t col = pos->x < spec.width / 2.0 ? 0 : 1;
    const std::size_t row = pos->y < spec.height / 2.0 ? 0 : 1;
    occupied[row * 2 + col] = true;
  }
  for (Quadrant q : kQuadrants) {
    if (occupied[index_of(q)]) label.occupied_quadrants.push_back(q);
  }
  return label;
}

Dataset render(const SceneSpec& spec) {
  spec.validate();
  Dataset data;
  data.frames.reserve(spec.frames);
  data.labels.reserve(spec.frames);
  for (std::uint64_t t = 0; t < spec.frames; ++t) {
    data.frames.push_back(render_frame(spec, t));
    data.labels.push_back(label_frame(spec, t));
  }
  return data;
}

DatasetSummary summarize(std::span<const GroundTruthLabel> labels) {
  DatasetSummary s;
  s.frames = labels.size();
  for (const auto& label : labels) {
    (label.human_present ? s.positives : s.negatives) += 1;
    for (Quadrant q : label.occupied_quadrants) ++s.quadrant_counts[index_of(q)];
  }
  return s;
}

DatasetSummary generate(const SceneSpec& spec, const std::filesystem::path& out_dir) {
  spec.validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  std::vector<GroundTruthLabel> labels;
  labels.reserve(spec.frames);
  for (std::uint64_t t = 0; t < spec.frames; ++t) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06llu.pgm", static_cast<unsigned long long>(t));
    write_pgm(render_frame(spec, t), out_dir / name);
    labels.push_back(label_frame(spec, t));
  }
  write_labels(labels, out_dir / "labels.csv");
  return summarize(labels);
}

SceneSpec reference_scene() {
  SceneSpec spec;
  spec.width = 160;
  spec.height = 120;
  spec.frames = 1000;
  spec.fps = 4.0;
  spec.ambient = 40.0;
  spec.drift_per_frame = 0.005;
  spec.noise_sigma = 1.0;
  spec.seed = 2023;
  // Enters from the left, stands in Q0, pauses on the frame centre, stands in
  // Q3, leaves right.
  spec.blobs.push_back(BlobSpec{150.0, 14.0,
                                {{60, -45, 30},
                                 {66, 40, 30},
                                 {200, 40, 30},
                                 {204, 80, 60},
                                 {240, 80, 60},
                                 {246, 120, 90},
                                 {450, 120, 90},
                                 {455, 190, 90}},
                                true});
  // Enters from the top, stands in Q1, crosses to Q2, leaves slowly left.
  spec.blobs.push_back(BlobSpec{150.0, 14.0,
                                {{400, 120, -45},
                                 {406, 120, 30},
                                 {600, 120, 30},
                                 {607, 40, 90},
                                 {800, 40, 90},
                                 {830, -45, 90}},
                                true});
  // Warm equipment, always on.
  spec.blobs.push_back(BlobSpec{60.0, 3.0, {{0, 140, 20}}, false});
  return spec;
}

}  // namespace sentry::synth
