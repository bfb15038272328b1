#include <algorithm>
#include <atomic>
#include <cctype>
#include <string>

#include "sentry/error.hpp"
#include "sentry/kernels.hpp"

namespace sentry::kernels {
namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(SENTRY_KERNELS_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(SENTRY_KERNELS_NEON)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& best_table() {
#if defined(SENTRY_KERNELS_AVX2)
  if (cpu_supports(Isa::Avx2)) return avx2::table();
#endif
#if defined(SENTRY_KERNELS_NEON)
  return neon::table();
#endif
  return scalar::table();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&best_table()};
  return slot;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (lower == to_string(isa)) return isa;
  }
  return std::nullopt;
}

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

bool is_available(Isa isa) { return cpu_supports(isa); }

const KernelTable& table_for(Isa isa) {
  if (!cpu_supports(isa)) {
    throw ConfigError("kernel ISA '" + std::string(to_string(isa)) + "' is not available on this CPU");
  }
  switch (isa) {
#if defined(SENTRY_KERNELS_AVX2)
    case Isa::Avx2:
      return avx2::table();
#endif
#if defined(SENTRY_KERNELS_NEON)
    case Isa::Neon:
      return neon::table();
#endif
    default:
      return scalar::table();
  }
}

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

void select(Isa isa) { active_slot().store(&table_for(isa), std::memory_order_release); }

void select_auto() { active_slot().store(&best_table(), std::memory_order_release); }

void abs_diff(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
              std::span<std::uint16_t> out) {
  if (a.size() != b.size() || a.size() != out.size()) {
    throw DimensionError("abs_diff: operand lengths differ");
  }
  active().abs_diff(a.data(), b.data(), out.data(), a.size());
}

std::size_t count_diff_at_least(std::span<const std::uint16_t> a,
                                std::span<const std::uint16_t> b, std::uint16_t delta) {
  if (a.size() != b.size()) throw DimensionError("count_diff_at_least: operand lengths differ");
  return active().count_diff_at_least(a.data(), b.data(), a.size(), delta);
}

std::uint64_t sum(std::span<const std::uint16_t> values) {
  return active().sum(values.data(), values.size());
}

}  // namespace sentry::kernels
