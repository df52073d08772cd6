#include <immintrin.h>

#include <algorithm>
#include <bit>

#include "unisum/kernels.hpp"

namespace unisum::kernels {
namespace {

inline std::uint64_t shl_word(ConstWords src, std::size_t j, unsigned r) {
  std::uint64_t w = j < src.size() ? src[j] << r : 0;
  if (r != 0 && j >= 1 && j - 1 < src.size()) w |= src[j - 1] >> (64 - r);
  return w;
}

inline std::uint64_t shr_word(ConstWords src, std::size_t j, unsigned r) {
  if (j >= src.size()) return 0;
  std::uint64_t w = src[j] >> r;
  if (r != 0 && j + 1 < src.size()) w |= src[j + 1] << (64 - r);
  return w;
}

// Nibble-table popcount of a 256-bit vector, summed into four 64-bit lanes.
inline __m256i popcount_lanes(__m256i v) {
  const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(table, lo), _mm256_shuffle_epi8(table, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::uint64_t horizontal_sum(__m256i v) {
  return static_cast<std::uint64_t>(_mm256_extract_epi64(v, 0)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 1)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 2)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 3));
}

void or_into(Words dst, ConstWords src) {
  const std::size_t n = std::min(dst.size(), src.size());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    __m256i a = _mm256_loadu_si256(d);
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    _mm256_storeu_si256(d, _mm256_or_si256(a, b));
  }
  for (; i < n; ++i) dst[i] |= src[i];
}

void shl_or(Words dst, ConstWords src, std::size_t shift) {
  const std::size_t q = shift / 64;
  const unsigned r = shift % 64;
  const __m128i left = _mm_cvtsi32_si128(static_cast<int>(r));
  const __m128i right = _mm_cvtsi32_si128(static_cast<int>(64 - r));  // 64 shifts to zero
  std::size_t i = q;
  // Leading word has no carry-in from src[-1].
  for (; i < dst.size() && i - q < 1; ++i) dst[i] |= shl_word(src, i - q, r);
  for (; i + 4 <= dst.size() && i - q + 4 <= src.size(); i += 4) {
    const std::size_t j = i - q;
    __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + j));
    __m256i prev = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + j - 1));
    __m256i w = _mm256_or_si256(_mm256_sll_epi64(cur, left), _mm256_srl_epi64(prev, right));
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    _mm256_storeu_si256(d, _mm256_or_si256(_mm256_loadu_si256(d), w));
  }
  for (; i < dst.size(); ++i) dst[i] |= shl_word(src, i - q, r);
}

void shr_or(Words dst, ConstWords src, std::size_t shift) {
  const std::size_t q = shift / 64;
  const unsigned r = shift % 64;
  const __m128i right = _mm_cvtsi32_si128(static_cast<int>(r));
  const __m128i left = _mm_cvtsi32_si128(static_cast<int>(64 - r));
  std::size_t i = 0;
  for (; i + 4 <= dst.size() && i + q + 5 <= src.size(); i += 4) {
    const std::size_t j = i + q;
    __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + j));
    __m256i next = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + j + 1));
    __m256i w = _mm256_or_si256(_mm256_srl_epi64(cur, right), _mm256_sll_epi64(next, left));
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    _mm256_storeu_si256(d, _mm256_or_si256(_mm256_loadu_si256(d), w));
  }
  for (; i < dst.size(); ++i) {
    if (i + q >= src.size()) break;
    dst[i] |= shr_word(src, i + q, r);
  }
}

std::uint64_t and_popcount(ConstWords a, ConstWords b) {
  const std::size_t n = std::min(a.size(), b.size());
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_and_si256(x, y)));
  }
  std::uint64_t c = horizontal_sum(acc);
  for (; i < n; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

bool intersects(ConstWords a, ConstWords b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    if (!_mm256_testz_si256(x, y)) return true;
  }
  for (; i < n; ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

std::uint64_t popcount(ConstWords a) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    acc = _mm256_add_epi64(acc, popcount_lanes(x));
  }
  std::uint64_t c = horizontal_sum(acc);
  for (; i < a.size(); ++i) c += std::popcount(a[i]);
  return c;
}

constexpr BitKernels kAvx2{"avx2", or_into, shl_or, shr_or, and_popcount, intersects, popcount};

}  // namespace

const BitKernels* avx2_kernels_unchecked() noexcept { return &kAvx2; }

}  // namespace unisum::kernels
