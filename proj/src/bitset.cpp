#include "unisum/bitset.hpp"

namespace unisum {

ElemBitset::ElemBitset(const GroupSpec& group, const GSet& set) : ElemBitset(group) {
  require_same_group(group, set.group(), "ElemBitset");
  for (Elem e : set) this->set(e);
}

void rotate_or(kernels::Words dst, kernels::ConstWords src, std::uint64_t nbits,
               std::uint64_t shift) {
  const auto& k = kernels::active();
  if (shift == 0) {
    k.or_into(dst, src);
    return;
  }
  k.shl_or(dst, src, shift);
  k.shr_or(dst, src, nbits - shift);
  const std::uint64_t rem = nbits % 64;
  if (rem != 0) dst[dst.size() - 1] &= (std::uint64_t{1} << rem) - 1;
}

void ElemBitset::or_translated(const ElemBitset& other, Elem g) {
  if (group_.is_cyclic()) {
    rotate_or(words_, other.words_, bits(), g.index);
    return;
  }
  other.for_each([&](Elem e) { set(group_.add(e, g)); });
}

ElemBitset ElemBitset::translated(Elem g) const {
  ElemBitset out(group_);
  out.or_translated(*this, g);
  return out;
}

GSet ElemBitset::to_set() const {
  std::vector<Elem> elems;
  elems.reserve(count());
  for_each([&](Elem e) { elems.push_back(e); });
  return GSet(group_, std::move(elems));
}

}  // namespace unisum
