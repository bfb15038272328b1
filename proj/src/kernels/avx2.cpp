// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <bit>

#include "sentry/kernels.hpp"

namespace sentry::kernels::avx2 {
namespace {

constexpr std::size_t kLanes = 16;

inline __m256i load(const std::uint16_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

// |a - b| for unsigned 16-bit lanes: one of the two saturating differences is zero.
inline __m256i absdiff_epu16(__m256i a, __m256i b) {
  return _mm256_or_si256(_mm256_subs_epu16(a, b), _mm256_subs_epu16(b, a));
}

void abs_diff(const std::uint16_t* a, const std::uint16_t* b, std::uint16_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), absdiff_epu16(load(a + i), load(b + i)));
  }
  scalar::table().abs_diff(a + i, b + i, out + i, n - i);
}

std::size_t count_diff_at_least(const std::uint16_t* a, const std::uint16_t* b, std::size_t n,
                                std::uint16_t delta) {
  const __m256i threshold = _mm256_set1_epi16(static_cast<short>(delta));
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i d = absdiff_epu16(load(a + i), load(b + i));
    // d >= t  <=>  max(d, t) == d  (unsigned)
    const __m256i ge = _mm256_cmpeq_epi16(_mm256_max_epu16(d, threshold), d);
    // Two mask bits per 16-bit lane.
    count += static_cast<std::size_t>(
                 std::popcount(static_cast<std::uint32_t>(_mm256_movemask_epi8(ge)))) /
             2;
  }
  return count + scalar::table().count_diff_at_least(a + i, b + i, n - i, delta);
}

std::uint64_t sum(const std::uint16_t* values, std::size_t n) {
  // sum(v) = sum(low bytes) + 256 * sum(high bytes); SAD against zero gives
  // overflow-free 64-bit partial sums of bytes.
  const __m256i zero = _mm256_setzero_si256();
  const __m256i low_mask = _mm256_set1_epi16(0x00FF);
  __m256i low = zero;
  __m256i high = zero;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i v = load(values + i);
    low = _mm256_add_epi64(low, _mm256_sad_epu8(_mm256_and_si256(v, low_mask), zero));
    high = _mm256_add_epi64(high, _mm256_sad_epu8(_mm256_srli_epi16(v, 8), zero));
  }
  alignas(32) std::uint64_t lo[4];
  alignas(32) std::uint64_t hi[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lo), low);
  _mm256_store_si256(reinterpret_cast<__m256i*>(hi), high);
  const std::uint64_t body = (lo[0] + lo[1] + lo[2] + lo[3]) + 256 * (hi[0] + hi[1] + hi[2] + hi[3]);
  return body + scalar::table().sum(values + i, n - i);
}

}  // namespace

const KernelTable& table() {
  static constexpr KernelTable kTable{Isa::Avx2, &abs_diff, &count_diff_at_least, &sum};
  return kTable;
}

}  // namespace sentry::kernels::avx2
