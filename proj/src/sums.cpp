#include "unisum/sums.hpp"

#include <algorithm>
#include <numeric>

#include "unisum/bitset.hpp"
#include "unisum/error.hpp"

namespace unisum {

namespace {

std::uint64_t lookup(const std::vector<std::pair<Elem, std::uint64_t>>& v, Elem g) {
  auto it = std::lower_bound(v.begin(), v.end(), g,
                             [](const auto& entry, Elem key) { return entry.first < key; });
  return it != v.end() && it->first == g ? it->second : 0;
}

std::vector<std::uint64_t> ordered_by_pairs(const GSet& a) {
  const GroupSpec& g = a.group();
  std::vector<std::uint64_t> counts(g.order(), 0);
  for (Elem x : a) {
    for (Elem y : a) ++counts[g.add(x, y).index];
  }
  return counts;
}

std::vector<std::uint64_t> ordered_by_bitset(const GSet& a) {
  const GroupSpec& g = a.group();
  ElemBitset set(g, a);
  ElemBitset neg(g);
  for (Elem x : a) neg.set(g.neg(x));
  std::vector<std::uint64_t> counts(g.order(), 0);
  ElemBitset shifted(g);
  for (std::uint64_t i = 0; i < g.order(); ++i) {
    shifted.clear();
    shifted.or_translated(neg, Elem{static_cast<std::uint32_t>(i)});
    counts[i] = set.and_count(shifted);
  }
  return counts;
}

// Size of the closure of {0} under adding the generators, or limit + 1 once
// the closure grows past limit.
std::uint64_t closure_size(const GroupSpec& g, const std::vector<Elem>& gens,
                           std::uint64_t limit, ElemBitset* out) {
  ElemBitset seen(g);
  std::vector<Elem> queue{g.zero()};
  seen.set(g.zero());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elem x = queue[head];
    for (Elem s : gens) {
      const Elem y = g.add(x, s);
      if (seen.test(y)) continue;
      seen.set(y);
      queue.push_back(y);
      if (queue.size() > limit) return limit + 1;
    }
  }
  if (out) *out = std::move(seen);
  return queue.size();
}

std::vector<Elem> translated_gens(const GSet& c, Elem t) {
  std::vector<Elem> gens;
  gens.reserve(c.size());
  for (Elem x : c) gens.push_back(c.group().add(x, t));
  return gens;
}

}  // namespace

std::uint64_t SumTable::ordered_at(Elem g) const noexcept { return lookup(ordered, g); }
std::uint64_t SumTable::unordered_at(Elem g) const noexcept { return lookup(unordered, g); }

SumTable sum_table(const GSet& a, SumRoute route) {
  const GroupSpec& g = a.group();
  std::vector<std::uint64_t> counts =
      route == SumRoute::kPairs ? ordered_by_pairs(a) : ordered_by_bitset(a);
  std::vector<std::uint64_t> doubles(g.order(), 0);
  for (Elem x : a) ++doubles[g.add(x, x).index];

  SumTable t;
  t.source = a;
  for (std::uint64_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    const Elem e{static_cast<std::uint32_t>(i)};
    t.ordered.emplace_back(e, counts[i]);
    // ordered = 2 * unordered - doubles
    t.unordered.emplace_back(e, (counts[i] + doubles[i]) / 2);
  }
  return t;
}

GSet unique_sums(const GSet& a) {
  SumTable t = sum_table(a);
  std::vector<Elem> out;
  for (const auto& [e, n] : t.unordered) {
    if (n == 1) out.push_back(e);
  }
  return GSet(a.group(), std::move(out));
}

bool has_no_unique_sum(const GSet& a) {
  require(!a.empty(), ErrorCode::kPrecondition, "has_no_unique_sum: empty set");
  return unique_sums(a).empty();
}

std::optional<std::pair<Elem, Elem>> midpoint_witness(const GSet& set, Elem b) {
  const GroupSpec& g = set.group();
  const Elem twice = g.add(b, b);
  for (Elem b1 : set) {
    const Elem b2 = g.sub(twice, b1);
    if (b1 < b2 && set.contains(b2)) return std::make_pair(b1, b2);
  }
  return std::nullopt;
}

BalanceCheck is_balanced(const GSet& b) {
  const GroupSpec& g = b.group();
  if (b.empty()) return {};
  ElemBitset bits(g, b);
  for (Elem x : b) {
    const Elem twice = g.add(x, x);
    bool found = false;
    for (Elem b1 : b) {
      const Elem b2 = g.sub(twice, b1);
      if (b1 != b2 && bits.test(b2)) {
        found = true;
        break;
      }
    }
    if (!found) return {false, x};
  }
  return {};
}

GSet translate(const GSet& a, Elem g) {
  std::vector<Elem> out;
  out.reserve(a.size());
  for (Elem x : a) out.push_back(a.group().add(x, g));
  return GSet(a.group(), std::move(out));
}

GSet dilate(const GSet& a, std::int64_t u) {
  const GroupSpec& g = a.group();
  const std::int64_t n = static_cast<std::int64_t>(g.order());
  const std::int64_t r = ((u % n) + n) % n;
  require(std::gcd(r, n) == 1, ErrorCode::kInvalidDilation,
          "dilation by " + std::to_string(u) + " is not a unit modulo " + std::to_string(n));
  std::vector<Elem> out;
  out.reserve(a.size());
  for (Elem x : a) out.push_back(g.times(x, u));
  return GSet(g, std::move(out));
}

GSet sumset(const GSet& a, const GSet& b) {
  require_same_group(a.group(), b.group(), "sumset");
  const GroupSpec& g = a.group();
  ElemBitset bits(g);
  for (Elem x : a) {
    for (Elem y : b) bits.set(g.add(x, y));
  }
  return bits.to_set();
}

GSet negate(const GSet& a) {
  std::vector<Elem> out;
  out.reserve(a.size());
  for (Elem x : a) out.push_back(a.group().neg(x));
  return GSet(a.group(), std::move(out));
}

GSet difference_set(const GSet& a, const GSet& b) { return sumset(a, negate(b)); }

GSet subgroup_generated(const GSet& c, Elem translate_by) {
  const GroupSpec& g = c.group();
  require(g.contains(translate_by), ErrorCode::kInvalidElement, "translate outside group");
  ElemBitset bits(g);
  closure_size(g, translated_gens(c, translate_by), g.order(), &bits);
  return bits.to_set();
}

std::uint64_t subgroup_order(const GSet& c, Elem translate_by) {
  const GroupSpec& g = c.group();
  return closure_size(g, translated_gens(c, translate_by), g.order(), nullptr);
}

MinspanResult minspan(const GSet& c, std::uint64_t cap) {
  const GroupSpec& g = c.group();
  require(!c.empty(), ErrorCode::kPrecondition, "minspan: empty set");
  require(g.order() <= cap, ErrorCode::kSizeLimit,
          "minspan: group order " + std::to_string(g.order()) + " exceeds cap " +
              std::to_string(cap));
  // Every <C + g> contains C - C, so |<C - C>| is a floor the loop may stop at.
  const std::uint64_t floor = subgroup_order(difference_set(c, c), g.zero());
  MinspanResult best{g.order() + 1, g.zero()};
  for (std::uint64_t i = 0; i < g.order(); ++i) {
    const Elem t{static_cast<std::uint32_t>(i)};
    // Abort a translate as soon as it cannot beat the incumbent.
    const std::uint64_t n = closure_size(g, translated_gens(c, t), best.value - 1, nullptr);
    if (n < best.value) best = {n, t};
    if (best.value == floor) break;
  }
  return best;
}

}  // namespace unisum
