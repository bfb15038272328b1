#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "sentry/error.hpp"
#include "sentry/pgm.hpp"
#include "test_util.hpp"

namespace sentry {
namespace {

using testing::TempDir;

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream(p, std::ios::binary) << bytes;
}

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Pgm, UniformAsciiFile) {
  TempDir dir;
  std::string text = "P2\n4 4\n255\n";
  for (int i = 0; i < 16; ++i) text += "100 ";
  write_bytes(dir / "u.pgm", text);
  const auto f = load_pgm(dir / "u.pgm");
  EXPECT_EQ(f.width(), 4u);
  EXPECT_EQ(f.height(), 4u);
  for (Pixel p : f.pixels()) EXPECT_EQ(p, 100);
}

TEST(Pgm, DeclaredSizeLargerThanPayload) {
  std::string text = "P2\n160 120\n255\n";
  for (int i = 0; i < 19199; ++i) text += "1\n";
  EXPECT_THROW(parse_pgm(text), DimensionError);

  std::string binary = "P5\n160 120\n255\n" + std::string(19199, '\x01');
  EXPECT_THROW(parse_pgm(binary), DimensionError);
}

TEST(Pgm, EightBitSamplesAreNotRescaled) {
  // Hand-built 8-bit P5: header, then one byte per sample.
  TempDir dir;
  std::string bytes = "P5\n2 2\n255\n";
  bytes += std::string("\xff\x00\x7f\x01", 4);
  write_bytes(dir / "e.pgm", bytes);
  const auto f = load_pgm(dir / "e.pgm");
  EXPECT_EQ(f.at(0, 0), 255);
  EXPECT_EQ(f.at(1, 0), 0);
  EXPECT_EQ(f.at(0, 1), 127);
  EXPECT_EQ(f.at(1, 1), 1);

  // Write it back out and decode the bytes independently of parse_pgm.
  write_pgm(f, dir / "w.pgm");
  const std::string out = read_bytes(dir / "w.pgm");
  const std::string header = "P5\n2 2\n65535\n";
  ASSERT_EQ(out.substr(0, header.size()), header);
  const auto* raster = reinterpret_cast<const unsigned char*>(out.data() + header.size());
  EXPECT_EQ(raster[0] * 256 + raster[1], 255);
}

TEST(Pgm, SixteenBitPayloadIsBigEndian) {
  TempDir dir;
  std::vector<Pixel> px(4, 0);
  px[0] = 40000;  // 0x9C40
  px[3] = 1;
  write_pgm(ThermalFrame(2, 2, px), dir / "b.pgm");
  const std::string out = read_bytes(dir / "b.pgm");
  const std::string header = "P5\n2 2\n65535\n";
  ASSERT_EQ(out.size(), header.size() + 8);
  EXPECT_EQ(out.substr(0, header.size()), header);
  EXPECT_EQ(static_cast<unsigned char>(out[header.size()]), 0x9C);
  EXPECT_EQ(static_cast<unsigned char>(out[header.size() + 1]), 0x40);
  EXPECT_EQ(static_cast<unsigned char>(out[header.size() + 7]), 0x01);
}

TEST(Pgm, CommentsAndWhitespaceInHeader) {
  const std::string text = "P2 # ascii\n# a comment line\n2\t2 # dims\n 1000\n1 2\n3 1000\n";
  const auto f = parse_pgm(text);
  EXPECT_EQ(f.at(1, 1), 1000);
}

TEST(Pgm, Errors) {
  EXPECT_THROW(parse_pgm("P6\n2 2\n255\n"), FormatError);
  EXPECT_THROW(parse_pgm("P"), FormatError);
  EXPECT_THROW(parse_pgm("P2\n2 x\n255\n"), FormatError);
  EXPECT_THROW(parse_pgm("P2\n2 2\n65536\n1 1 1 1"), FormatError);
  EXPECT_THROW(parse_pgm("P2\n2 2\n0\n0 0 0 0"), FormatError);
  EXPECT_THROW(parse_pgm("P2\n2 2\n10\n1 1 1 11"), FormatError);  // sample > maxval
  EXPECT_THROW(parse_pgm("P2\n3 2\n255\n1 1 1 1 1 1"), DimensionError);
  EXPECT_THROW(load_pgm("/nonexistent/frame.pgm"), IoError);
}

TEST(Pgm, RoundTripRandomFramesProperty) {
  TempDir dir;
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t w = 2 * (1 + rng() % 90);
    const std::uint32_t h = 2 * (1 + rng() % 70);
    const auto f = testing::random_frame(rng, w, h, trial);
    write_pgm(f, dir / "r.pgm");
    EXPECT_EQ(load_pgm(dir / "r.pgm", trial), f);
  }
}

TEST(Pgm, StreamWriterMatchesFileWriter) {
  TempDir dir;
  std::mt19937_64 rng(29);
  const auto f = testing::random_frame(rng, 6, 4);
  std::ostringstream ss;
  write_pgm(f, ss);
  write_pgm(f, dir / "s.pgm");
  EXPECT_EQ(ss.str(), read_bytes(dir / "s.pgm"));
}

}  // namespace
}  // namespace sentry
