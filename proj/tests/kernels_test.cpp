#include <gtest/gtest.h>

#include <random>

#include "sentry/error.hpp"
#include "sentry/kernels.hpp"

namespace sentry::kernels {
namespace {

std::vector<std::uint16_t> random_values(std::mt19937_64& rng, std::size_t n) {
  // Mix full-range values with small ones so thresholds near zero and the
  // unsigned wrap region are both hit.
  std::uniform_int_distribution<int> full(0, 65535);
  std::uniform_int_distribution<int> small(0, 64);
  std::bernoulli_distribution pick(0.5);
  std::vector<std::uint16_t> v(n);
  for (auto& x : v) x = static_cast<std::uint16_t>(pick(rng) ? full(rng) : small(rng));
  return v;
}

class KernelEquivalence : public ::testing::TestWithParam<Isa> {};

TEST_P(KernelEquivalence, AbsDiffMatchesScalar) {
  const KernelTable& ref = scalar::table();
  const KernelTable& simd = table_for(GetParam());
  std::mt19937_64 rng(1);
  for (std::size_t n : {0, 1, 7, 15, 16, 17, 31, 33, 80, 255, 19200}) {
    const auto a = random_values(rng, n);
    const auto b = random_values(rng, n);
    std::vector<std::uint16_t> expected(n), actual(n);
    ref.abs_diff(a.data(), b.data(), expected.data(), n);
    simd.abs_diff(a.data(), b.data(), actual.data(), n);
    EXPECT_EQ(expected, actual) << "n=" << n;
  }
}

TEST_P(KernelEquivalence, CountDiffMatchesScalar) {
  const KernelTable& ref = scalar::table();
  const KernelTable& simd = table_for(GetParam());
  std::mt19937_64 rng(2);
  for (std::size_t n : {0, 1, 15, 16, 17, 47, 80, 19200}) {
    const auto a = random_values(rng, n);
    const auto b = random_values(rng, n);
    for (std::uint16_t delta : {1, 2, 20, 32767, 32768, 65535}) {
      EXPECT_EQ(ref.count_diff_at_least(a.data(), b.data(), n, delta),
                simd.count_diff_at_least(a.data(), b.data(), n, delta))
          << "n=" << n << " delta=" << delta;
    }
  }
}

TEST_P(KernelEquivalence, SumMatchesScalar) {
  const KernelTable& ref = scalar::table();
  const KernelTable& simd = table_for(GetParam());
  std::mt19937_64 rng(3);
  for (std::size_t n : {0, 1, 15, 16, 17, 80, 1000, 19200, 1 << 20}) {
    const auto v = random_values(rng, n);
    EXPECT_EQ(ref.sum(v.data(), n), simd.sum(v.data(), n)) << "n=" << n;
  }
  // Saturated input: the sum must not wrap in any lane.
  const std::vector<std::uint16_t> max(1 << 20, 65535);
  EXPECT_EQ(simd.sum(max.data(), max.size()), std::uint64_t{65535} << 20);
}

TEST_P(KernelEquivalence, ExtremeDifferences) {
  const KernelTable& simd = table_for(GetParam());
  const std::vector<std::uint16_t> lo(32, 0);
  const std::vector<std::uint16_t> hi(32, 65535);
  std::vector<std::uint16_t> out(32);
  simd.abs_diff(lo.data(), hi.data(), out.data(), 32);
  for (auto v : out) EXPECT_EQ(v, 65535);
  EXPECT_EQ(simd.count_diff_at_least(lo.data(), hi.data(), 32, 65535), 32u);
  EXPECT_EQ(simd.count_diff_at_least(hi.data(), hi.data(), 32, 1), 0u);
}

INSTANTIATE_TEST_SUITE_P(AvailableIsas, KernelEquivalence, ::testing::ValuesIn(available()),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(KernelDispatch, ScalarAlwaysAvailable) {
  EXPECT_TRUE(is_available(Isa::Scalar));
  EXPECT_EQ(available().front(), Isa::Scalar);
}

TEST(KernelDispatch, SelectAndRestore) {
  select(Isa::Scalar);
  EXPECT_EQ(active().isa, Isa::Scalar);
  select_auto();
  EXPECT_EQ(active().isa, available().back());
}

TEST(KernelDispatch, UnavailableIsaRejected) {
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (!is_available(isa)) EXPECT_THROW(select(isa), ConfigError);
  }
}

TEST(KernelDispatch, ParseIsa) {
  EXPECT_EQ(parse_isa("AVX2"), Isa::Avx2);
  EXPECT_EQ(parse_isa("scalar"), Isa::Scalar);
  EXPECT_FALSE(parse_isa("sse9"));
}

TEST(KernelDispatch, SpanWrappersCheckLengths) {
  const std::vector<std::uint16_t> a(4), b(5);
  std::vector<std::uint16_t> out(4);
  EXPECT_THROW(abs_diff(a, b, out), DimensionError);
  EXPECT_THROW(count_diff_at_least(a, b, 1), DimensionError);
}

}  // namespace
}  // namespace sentry::kernels
