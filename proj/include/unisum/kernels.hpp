#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Word-level bitset kernels. Every operation has a portable scalar reference
// and, on x86-64 builds, an AVX2 variant picked at runtime. The two must agree
// bit for bit; tests/test_kernels.cpp checks that on random inputs.
namespace unisum::kernels {

using Words = std::span<std::uint64_t>;
using ConstWords = std::span<const std::uint64_t>;

struct BitKernels {
  std::string_view name;
  // dst |= src, over min(dst, src) words.
  void (*or_into)(Words dst, ConstWords src);
  // dst |= src << shift (bit shift toward higher indices; overflow dropped).
  void (*shl_or)(Words dst, ConstWords src, std::size_t shift);
  // dst |= src >> shift.
  void (*shr_or)(Words dst, ConstWords src, std::size_t shift);
  std::uint64_t (*and_popcount)(ConstWords a, ConstWords b);
  bool (*intersects)(ConstWords a, ConstWords b);
  std::uint64_t (*popcount)(ConstWords a);
};

enum class Isa { kScalar, kAvx2 };

const BitKernels& scalar_kernels() noexcept;
/// nullptr when the binary was built without AVX2 or the CPU lacks it.
const BitKernels* avx2_kernels() noexcept;

/// Kernels used by the library. Defaults to the best supported ISA; the
/// environment variable UNISUM_KERNELS=scalar forces the reference path.
const BitKernels& active() noexcept;
/// Returns false (and leaves the selection alone) if the ISA is unavailable.
bool select(Isa isa) noexcept;

}  // namespace unisum::kernels
