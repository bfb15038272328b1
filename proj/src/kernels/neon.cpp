#include <arm_neon.h>

#include "sentry/kernels.hpp"

namespace sentry::kernels::neon {
namespace {

constexpr std::size_t kLanes = 8;

void abs_diff(const std::uint16_t* a, const std::uint16_t* b, std::uint16_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    vst1q_u16(out + i, vabdq_u16(vld1q_u16(a + i), vld1q_u16(b + i)));
  }
  scalar::table().abs_diff(a + i, b + i, out + i, n - i);
}

std::size_t count_diff_at_least(const std::uint16_t* a, const std::uint16_t* b, std::size_t n,
                                std::uint16_t delta) {
  const uint16x8_t threshold = vdupq_n_u16(delta);
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const uint16x8_t d = vabdq_u16(vld1q_u16(a + i), vld1q_u16(b + i));
    // 0xFFFF >> 15 == 1 per matching lane
    const uint16x8_t hits = vshrq_n_u16(vcgeq_u16(d, threshold), 15);
    acc = vpadalq_u32(acc, vpaddlq_u16(hits));
  }
  const std::size_t body = static_cast<std::size_t>(vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1));
  return body + scalar::table().count_diff_at_least(a + i, b + i, n - i, delta);
}

std::uint64_t sum(const std::uint16_t* values, std::size_t n) {
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    acc = vpadalq_u32(acc, vpaddlq_u16(vld1q_u16(values + i)));
  }
  const std::uint64_t body = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  return body + scalar::table().sum(values + i, n - i);
}

}  // namespace

const KernelTable& table() {
  static constexpr KernelTable kTable{Isa::Neon, &abs_diff, &count_diff_at_least, &sum};
  return kTable;
}

}  // namespace sentry::kernels::neon
