#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "unisum/group.hpp"

namespace unisum {

/// Representation counts of A + A.
///
/// `ordered` is r_A(g), the number of ordered pairs (a, a') with a + a' = g.
/// `unordered` counts sets {a, a'} (a = a' allowed). Only realized g appear;
/// both vectors are sorted by element.
struct SumTable {
  GSet source;
  std::vector<std::pair<Elem, std::uint64_t>> ordered;
  std::vector<std::pair<Elem, std::uint64_t>> unordered;

  std::uint64_t ordered_at(Elem g) const noexcept;
  std::uint64_t unordered_at(Elem g) const noexcept;
};

enum class SumRoute {
  kPairs,   // enumerate all |A|^2 ordered pairs
  kBitset,  // r_A(g) = |A ∩ (g - A)| via word-parallel rotate and popcount
};

SumTable sum_table(const GSet& a, SumRoute route = SumRoute::kPairs);

/// Elements g with exactly one unordered representation.
GSet unique_sums(const GSet& a);
bool has_no_unique_sum(const GSet& a);

struct BalanceCheck {
  bool ok = true;
  std::optional<Elem> failing;  // least element that is not a midpoint
};

BalanceCheck is_balanced(const GSet& b);
/// Witness pair (b1 < b2) with 2b = b1 + b2, lexicographically least.
std::optional<std::pair<Elem, Elem>> midpoint_witness(const GSet& set, Elem b);

GSet translate(const GSet& a, Elem g);
/// u * A; throws kInvalidDilation unless gcd(u, |G|) = 1.
GSet dilate(const GSet& a, std::int64_t u);
GSet sumset(const GSet& a, const GSet& b);
GSet negate(const GSet& a);
GSet difference_set(const GSet& a, const GSet& b);

/// <C + g>, saturated by breadth-first search from 0.
GSet subgroup_generated(const GSet& c, Elem translate_by);
std::uint64_t subgroup_order(const GSet& c, Elem translate_by);

struct MinspanResult {
  std::uint64_t value = 0;
  Elem argmin;  // least g attaining the minimum
};

inline constexpr std::uint64_t kDefaultMinspanCap = 1'000'000;

/// min over g of |<C + g>|, iterating every translate. Throws kSizeLimit when
/// the group order exceeds `cap`.
MinspanResult minspan(const GSet& c, std::uint64_t cap = kDefaultMinspanCap);

}  // namespace unisum
