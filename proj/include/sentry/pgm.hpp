#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "sentry/frame.hpp"

namespace sentry {

// Reads a binary (P5) or ASCII (P2) PGM with maxval <= 65535. Samples are
// stored as-is: an 8-bit file's 255 stays 255. Multi-byte P5 samples are
// big-endian.
ThermalFrame load_pgm(const std::filesystem::path& path, std::uint64_t frame_index = 0);
ThermalFrame parse_pgm(std::string_view bytes, std::uint64_t frame_index = 0);

// Writes a 16-bit binary PGM (P5, maxval 65535, big-endian samples).
void write_pgm(const ThermalFrame& frame, const std::filesystem::path& path);
void write_pgm(const ThermalFrame& frame, std::ostream& out);

}  // namespace sentry
