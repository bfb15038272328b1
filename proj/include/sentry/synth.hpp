#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sentry/evaluation.hpp"
#include "sentry/frame.hpp"

namespace sentry::synth {

struct Waypoint {
  std::uint64_t frame = 0;
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

// Isotropic Gaussian heat source.
//
// A blob exists from its first waypoint's frame through its last waypoint's
// frame, moving linearly between waypoints. A blob with a single waypoint is
// static from that frame to the end of the scene.
struct BlobSpec {
  double amplitude = 0.0;
  double sigma = 1.0;
  std::vector<Waypoint> path;
  // false for equipment that radiates heat but is not a person.
  bool is_human = true;

  void validate() const;
  friend bool operator==(const BlobSpec&, const BlobSpec&) = default;
};

struct BlobPosition {
  double x = 0.0;
  double y = 0.0;
};

// Centre of the blob at frame t, or nullopt if it does not exist then.
std::optional<BlobPosition> blob_position(const BlobSpec& blob, std::uint64_t t);

struct SceneSpec {
  std::uint32_t width = 160;
  std::uint32_t height = 120;
  std::uint64_t frames = 1;
  double fps = 4.0;
  double ambient = 0.0;
  double drift_per_frame = 0.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  std::vector<BlobSpec> blobs;

  void validate() const;
  friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

/**
 * Scene file: `key=value` lines with `#` comments.
 *
 *     width=160          height=120        frames=1000     fps=4
 *     ambient=40         drift=0.005       noise=1.0       seed=2023
 *     blob=<amplitude>,<sigma>,<human|equipment>,<t:x:y>[;<t:x:y>...]
 *
 * One setting per line; `blob` may repeat.
 */
SceneSpec parse_scene(std::string_view text);
SceneSpec load_scene(const std::filesystem::path& path);

// Portable noise source: SplitMix64 for uniforms, Box-Muller (both outputs
// used) for normals. Frame t draws from a fresh stream seeded with
// splitmix64(seed ^ splitmix64(t)), so frames can be rendered independently.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::uint64_t frame_index);
  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 bits of precision.
  double next_uniform();
  double next_normal();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

// value = clamp(round(ambient + t*drift + sum(blobs) + noise), 0, 65535),
// pixel centres at integer coordinates; rounding is half-up.
ThermalFrame render_frame(const SceneSpec& spec, std::uint64_t t);
// human_present: some human blob's centre lies inside [0,w)x[0,h);
// occupied_quadrants: the quadrants holding such centres.
GroundTruthLabel label_frame(const SceneSpec& spec, std::uint64_t t);

struct Dataset {
  std::vector<ThermalFrame> frames;
  std::vector<GroundTruthLabel> labels;
};

Dataset render(const SceneSpec& spec);

struct DatasetSummary {
  std::uint64_t frames = 0;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  QuadrantArray<std::uint64_t> quadrant_counts{};
};

DatasetSummary summarize(std::span<const GroundTruthLabel> labels);

// Writes frame_NNNNNN.pgm files plus labels.csv into out_dir (created if needed).
DatasetSummary generate(const SceneSpec& spec, const std::filesystem::path& out_dir);

// Documented evaluation scenario: two people walking through and pausing in
// different quadrants, one static piece of warm equipment, mild drift and
// sensor noise, 1000 frames at 4 fps.
SceneSpec reference_scene();

}  // namespace sentry::synth
