#include <algorithm>
#include <bit>

#include "unisum/kernels.hpp"

namespace unisum::kernels {
namespace {

void or_into(Words dst, ConstWords src) {
  const std::size_t n = std::min(dst.size(), src.size());
  for (std::size_t i = 0; i < n; ++i) dst[i] |= src[i];
}

void shl_or(Words dst, ConstWords src, std::size_t shift) {
  const std::size_t q = shift / 64;
  const unsigned r = shift % 64;
  // dst[i] takes src[i-q] << r and the carry src[i-q-1] >> (64-r).
  for (std::size_t i = q; i < dst.size(); ++i) {
    const std::size_t j = i - q;
    std::uint64_t w = j < src.size() ? src[j] << r : 0;
    if (r != 0 && j >= 1 && j - 1 < src.size()) w |= src[j - 1] >> (64 - r);
    dst[i] |= w;
  }
}

void shr_or(Words dst, ConstWords src, std::size_t shift) {
  const std::size_t q = shift / 64;
  const unsigned r = shift % 64;
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const std::size_t j = i + q;
    if (j >= src.size()) break;
    std::uint64_t w = src[j] >> r;
    if (r != 0 && j + 1 < src.size()) w |= src[j + 1] << (64 - r);
    dst[i] |= w;
  }
}

std::uint64_t and_popcount(ConstWords a, ConstWords b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

bool intersects(ConstWords a, ConstWords b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

std::uint64_t popcount(ConstWords a) {
  std::uint64_t c = 0;
  for (std::uint64_t w : a) c += std::popcount(w);
  return c;
}

constexpr BitKernels kScalar{"scalar", or_into, shl_or, shr_or, and_popcount, intersects, popcount};

}  // namespace

const BitKernels& scalar_kernels() noexcept { return kScalar; }

}  // namespace unisum::kernels
