#include <atomic>
#include <cstdlib>
#include <string_view>

#include "unisum/kernels.hpp"

namespace unisum::kernels {

#if defined(UNISUM_BUILD_AVX2)
const BitKernels* avx2_kernels_unchecked() noexcept;
#endif

const BitKernels* avx2_kernels() noexcept {
#if defined(UNISUM_BUILD_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  return supported ? avx2_kernels_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const BitKernels* initial_choice() noexcept {
  if (const char* env = std::getenv("UNISUM_KERNELS")) {
    if (std::string_view(env) == "scalar") return &scalar_kernels();
  }
  if (const BitKernels* k = avx2_kernels()) return k;
  return &scalar_kernels();
}

std::atomic<const BitKernels*>& current() noexcept {
  static std::atomic<const BitKernels*> k{initial_choice()};
  return k;
}

}  // namespace

const BitKernels& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select(Isa isa) noexcept {
  const BitKernels* k = isa == Isa::kScalar ? &scalar_kernels() : avx2_kernels();
  if (k == nullptr) return false;
  current().store(k, std::memory_order_release);
  return true;
}

}  // namespace unisum::kernels
