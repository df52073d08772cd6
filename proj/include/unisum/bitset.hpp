#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "unisum/group.hpp"
#include "unisum/kernels.hpp"

namespace unisum {

/// Dense membership bitmap over all elements of a group, indexed by Elem::index.
class ElemBitset {
 public:
  ElemBitset() = default;
  explicit ElemBitset(const GroupSpec& group)
      : group_(group), words_((group.order() + 63) / 64, 0) {}
  ElemBitset(const GroupSpec& group, const GSet& set);

  const GroupSpec& group() const noexcept { return group_; }
  std::uint64_t bits() const noexcept { return group_.order(); }

  void set(Elem e) noexcept { words_[e.index >> 6] |= std::uint64_t{1} << (e.index & 63); }
  void reset(Elem e) noexcept { words_[e.index >> 6] &= ~(std::uint64_t{1} << (e.index & 63)); }
  bool test(Elem e) const noexcept { return (words_[e.index >> 6] >> (e.index & 63)) & 1U; }
  void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

  std::uint64_t count() const noexcept { return kernels::active().popcount(words_); }
  bool intersects(const ElemBitset& other) const noexcept {
    return kernels::active().intersects(words_, other.words_);
  }
  std::uint64_t and_count(const ElemBitset& other) const noexcept {
    return kernels::active().and_popcount(words_, other.words_);
  }
  void or_with(const ElemBitset& other) noexcept { kernels::active().or_into(words_, other.words_); }

  /// this |= other + g (translation by g).
  void or_translated(const ElemBitset& other, Elem g);
  ElemBitset translated(Elem g) const;

  GSet to_set() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
        f(Elem{static_cast<std::uint32_t>(w * 64 + b)});
        bits &= bits - 1;
      }
    }
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  friend bool operator==(const ElemBitset& a, const ElemBitset& b) noexcept {
    return a.words_ == b.words_;
  }

 private:

  GroupSpec group_;
  std::vector<std::uint64_t> words_;
};

/// Cyclic rotation on an n-bit bitmap: dst |= rot(src, shift), 0 <= shift < n.
void rotate_or(kernels::Words dst, kernels::ConstWords src, std::uint64_t nbits,
               std::uint64_t shift);

}  // namespace unisum
