#include "sentry/pgm.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <string>
#include <vector>

#include "sentry/error.hpp"

namespace sentry {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view magic() {
    if (bytes_.size() < 2) throw FormatError("PGM: file too short");
    pos_ = 2;
    return bytes_.substr(0, 2);
  }

  // Whitespace and '#' comments may separate header fields.
  std::uint64_t next_uint(const char* what) {
    skip_separators();
    const char* first = bytes_.data() + pos_;
    const char* last = bytes_.data() + bytes_.size();
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) {
      throw FormatError(std::string("PGM: expected ") + what);
    }
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  // Exactly one whitespace byte ends the header of a P5 file.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw FormatError("PGM: missing whitespace after maxval");
    }
    return pos_ + 1;
  }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

void check_sample(std::uint64_t value, std::uint64_t maxval) {
  if (value > maxval) {
    throw FormatError("PGM: sample " + std::to_string(value) + " exceeds maxval " +
                      std::to_string(maxval));
  }
}

}  // namespace

ThermalFrame parse_pgm(std::string_view bytes, std::uint64_t frame_index) {
  HeaderReader header(bytes);
  const std::string_view magic = header.magic();
  const bool binary = magic == "P5";
  if (!binary && magic != "P2") throw FormatError("PGM: unsupported magic number");

  const std::uint64_t width = header.next_uint("width");
  const std::uint64_t height = header.next_uint("height");
  const std::uint64_t maxval = header.next_uint("maxval");
  if (maxval == 0 || maxval > 65535) {
    throw FormatError("PGM: maxval must be in 1..65535, got " + std::to_string(maxval));
  }
  if (width > UINT32_MAX || height > UINT32_MAX) throw DimensionError("PGM: dimensions too large");
  const auto w = static_cast<std::uint32_t>(width);
  const auto h = static_cast<std::uint32_t>(height);
  if (w < 2 || h < 2 || w % 2 != 0 || h % 2 != 0) {
    // Reject before allocating for a bogus header.
    validate_dimensions(w, h, std::size_t{w} * h);
  }
  const std::size_t count = std::size_t{w} * h;
  std::vector<Pixel> pixels;
  pixels.reserve(count);

  if (binary) {
    const std::size_t start = header.raster_start();
    const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
    const std::size_t available = (bytes.size() - start) / sample_bytes;
    if (available < count) {
      throw DimensionError("PGM: header declares " + std::to_string(count) + " samples, file has " +
                           std::to_string(available));
    }
    const auto* raster = reinterpret_cast<const unsigned char*>(bytes.data() + start);
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t v =
          sample_bytes == 1 ? raster[i]
                            : (std::uint64_t{raster[2 * i]} << 8) | raster[2 * i + 1];
      check_sample(v, maxval);
      pixels.push_back(static_cast<Pixel>(v));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t v = 0;
      try {
        v = header.next_uint("sample");
      } catch (const FormatError&) {
        throw DimensionError("PGM: header declares " + std::to_string(count) +
                             " samples, file has " + std::to_string(i));
      }
      check_sample(v, maxval);
      pixels.push_back(static_cast<Pixel>(v));
    }
  }
  return ThermalFrame(w, h, std::move(pixels), frame_index);
}

ThermalFrame load_pgm(const std::filesystem::path& path, std::uint64_t frame_index) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return parse_pgm(bytes, frame_index);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const DimensionError& e) {
    throw DimensionError(path.string() + ": " + e.what());
  }
}

void write_pgm(const ThermalFrame& frame, std::ostream& out) {
  validate_dimensions(frame.width(), frame.height(), frame.pixel_count());
  out << "P5\n" << frame.width() << ' ' << frame.height() << "\n65535\n";
  std::string raster(frame.pixel_count() * 2, '\0');
  std::size_t i = 0;
  for (Pixel p : frame.pixels()) {
    raster[i++] = static_cast<char>(p >> 8);
    raster[i++] = static_cast<char>(p & 0xFF);
  }
  out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
}

void write_pgm(const ThermalFrame& frame, const std::filesystem::path& path) {
  validate_dimensions(frame.width(), frame.height(), frame.pixel_count());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_pgm(frame, out);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace sentry
