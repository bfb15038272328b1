#include "sentry/kernels.hpp"

namespace sentry::kernels::scalar {
namespace {

void abs_diff(const std::uint16_t* a, const std::uint16_t* b, std::uint16_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a[i] > b[i] ? static_cast<std::uint16_t>(a[i] - b[i])
                         : static_cast<std::uint16_t>(b[i] - a[i]);
  }
}

std::size_t count_diff_at_least(const std::uint16_t* a, const std::uint16_t* b, std::size_t n,
                                std::uint16_t delta) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned d = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
    count += d >= delta ? 1 : 0;
  }
  return count;
}

std::uint64_t sum(const std::uint16_t* values, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += values[i];
  return total;
}

}  // namespace

const KernelTable& table() {
  static constexpr KernelTable kTable{Isa::Scalar, &abs_diff, &count_diff_at_least, &sum};
  return kTable;
}

}  // namespace sentry::kernels::scalar
