#pragma once

// Pixel-level inner loops shared by both detectors.
//
// Every kernel has a portable scalar reference implementation plus, where the
// target supports it, an AVX2 (x86-64) or NEON (AArch64) variant. The variant
// is chosen once at runtime from CPU features and can be overridden for tests
// and benchmarking. All variants must produce bit-identical results.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace sentry::kernels {

enum class Isa : std::uint8_t { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);
std::optional<Isa> parse_isa(std::string_view text);

struct KernelTable {
  Isa isa;
  // out[i] = |a[i] - b[i]|; all three spans have equal length.
  void (*abs_diff)(const std::uint16_t* a, const std::uint16_t* b, std::uint16_t* out,
                   std::size_t n);
  // Number of i with |a[i] - b[i]| >= delta.
  std::size_t (*count_diff_at_least)(const std::uint16_t* a, const std::uint16_t* b,
                                     std::size_t n, std::uint16_t delta);
  // Exact sum of n values.
  std::uint64_t (*sum)(const std::uint16_t* values, std::size_t n);
};

namespace scalar {
const KernelTable& table();
}
#if defined(SENTRY_KERNELS_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif
#if defined(SENTRY_KERNELS_NEON)
namespace neon {
const KernelTable& table();
}
#endif

// ISAs compiled into this build and supported by the running CPU.
std::vector<Isa> available();
bool is_available(Isa isa);

// Table for a specific ISA; throws ConfigError if unavailable.
const KernelTable& table_for(Isa isa);

// Currently selected table (best available unless overridden).
const KernelTable& active();

// Override the active ISA process-wide. Throws ConfigError if unavailable.
void select(Isa isa);
// Return to automatic selection.
void select_auto();

// Span conveniences over the active table.
void abs_diff(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
              std::span<std::uint16_t> out);
std::size_t count_diff_at_least(std::span<const std::uint16_t> a,
                                std::span<const std::uint16_t> b, std::uint16_t delta);
std::uint64_t sum(std::span<const std::uint16_t> values);

}  // namespace sentry::kernels
