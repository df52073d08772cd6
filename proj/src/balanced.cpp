#include "unisum/balanced.hpp"

#include <algorithm>
#include <deque>

#include "unisum/bitset.hpp"
#include "unisum/error.hpp"
#include "unisum/sums.hpp"

namespace unisum {

namespace {

// Midpoint structure of a small set, with subsets as bitmasks over its
// canonical order.
struct MaskView {
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> pairs;  // pairs[i]: masks {j,k} with 2b_i = b_j + b_k

  explicit MaskView(const GSet& b) : n(b.size()), pairs(b.size()) {
    const GroupSpec& g = b.group();
    for (std::size_t i = 0; i < n; ++i) {
      const Elem twice = g.add(b[i], b[i]);
      for (std::size_t j = 0; j < n; ++j) {
        auto k = b.position(g.sub(twice, b[j]));
        if (k && *k > j) pairs[i].push_back((1U << j) | (1U << *k));
      }
    }
  }

  bool balanced(std::uint32_t m) const {
    for (std::uint32_t rest = m; rest; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      bool ok = false;
      for (std::uint32_t p : pairs[i]) {
        if ((p & m) == p) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
    return true;
  }
};

struct BalancedLattice {
  std::vector<std::uint8_t> has_balanced;  // some balanced subset inside mask
  std::vector<std::uint32_t> minimal;
};

BalancedLattice lattice(const MaskView& v) {
  BalancedLattice out;
  const std::uint32_t full = v.n == 32 ? ~0U : (1U << v.n) - 1;
  out.has_balanced.assign(static_cast<std::size_t>(full) + 1, 0);
  for (std::uint32_t m = 1; m <= full && m != 0; ++m) {
    bool below = false;
    for (std::uint32_t rest = m; rest && !below; rest &= rest - 1) {
      below = out.has_balanced[m & ~(rest & -rest)];
    }
    if (below) {
      out.has_balanced[m] = 1;
    } else if (v.balanced(m)) {
      out.has_balanced[m] = 1;
      out.minimal.push_back(m);
    }
    if (m == full) break;
  }
  return out;
}

GSet from_mask(const GSet& b, std::uint32_t m) {
  std::vector<Elem> out;
  for (std::uint32_t rest = m; rest; rest &= rest - 1) out.push_back(b[std::countr_zero(rest)]);
  return GSet(b.group(), std::move(out));
}

void require_balanced(const GSet& b, const char* where) {
  require(!b.empty() && is_balanced(b).ok, ErrorCode::kPrecondition,
          std::string(where) + ": set is not balanced");
}

GSet without(const GSet& b, Elem x) {
  std::vector<Elem> out;
  out.reserve(b.size());
  for (Elem e : b) {
    if (e != x) out.push_back(e);
  }
  return GSet(b.group(), std::move(out));
}

}  // namespace

GSet balanced_core(const GSet& b) {
  const GroupSpec& g = b.group();
  if (b.empty()) return b;
  ElemBitset alive(g, b);
  std::vector<Elem> cur(b.begin(), b.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Elem> keep;
    keep.reserve(cur.size());
    for (Elem x : cur) {
      const Elem twice = g.add(x, x);
      bool ok = false;
      for (Elem y : cur) {
        const Elem z = g.sub(twice, y);
        if (y != z && alive.test(y) && alive.test(z)) {
          ok = true;
          break;
        }
      }
      if (ok) {
        keep.push_back(x);
      } else {
        alive.reset(x);
        changed = true;
      }
    }
    cur = std::move(keep);
  }
  return GSet(g, std::move(cur));
}

GSet minimal_balanced_subset(const GSet& b) {
  require_balanced(b, "minimal_balanced_subset");
  GSet cur = b;
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (Elem x : cur) {
      GSet core = balanced_core(without(cur, x));
      if (!core.empty()) {
        cur = std::move(core);
        shrunk = true;
        break;
      }
    }
  }
  return cur;
}

std::vector<GSet> minimal_balanced_subsets(const GSet& b, std::size_t cap) {
  require(b.size() <= cap && b.size() <= 26, ErrorCode::kSizeLimit,
          "minimal_balanced_subsets: |B| = " + std::to_string(b.size()) + " exceeds cap " +
              std::to_string(cap));
  if (b.empty()) return {};
  MaskView v(b);
  auto lat = lattice(v);
  std::vector<GSet> out;
  for (std::uint32_t m : lat.minimal) out.push_back(from_mask(b, m));
  std::sort(out.begin(), out.end(), [](const GSet& x, const GSet& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  return out;
}

bool is_irreducible(const GSet& b, std::size_t cap) {
  require_balanced(b, "is_irreducible");
  require(b.size() <= cap && b.size() <= 26, ErrorCode::kSizeLimit,
          "is_irreducible: |B| = " + std::to_string(b.size()) + " exceeds cap " +
              std::to_string(cap));
  MaskView v(b);
  auto lat = lattice(v);
  const std::uint32_t full = (1U << b.size()) - 1;
  // Disjoint balanced subsets exist iff some minimal one has a balanced
  // subset in its complement.
  for (std::uint32_t m : lat.minimal) {
    if (lat.has_balanced[full & ~m]) return false;
  }
  return true;
}

HGraph build_H(const GSet& b, std::optional<Elem> anchor) {
  require_balanced(b, "build_H");
  HGraph h;
  h.vertices = b;
  h.preferred_core = minimal_balanced_subset(b);
  h.anchor = anchor.value_or(h.preferred_core.front());
  require(h.preferred_core.contains(h.anchor), ErrorCode::kPrecondition,
          "build_H: anchor must lie in the minimal balanced subset");
  for (Elem x : b) {
    const GSet& pool = h.preferred_core.contains(x) ? h.preferred_core : b;
    auto w = midpoint_witness(pool, x);
    require(w.has_value(), ErrorCode::kInternal, "build_H: missing witness pair");
    h.edges.push_back(*w);
  }
  // Reverse BFS from the anchor.
  const std::size_t n = b.size();
  std::vector<std::vector<std::size_t>> into(n);
  for (std::size_t i = 0; i < n; ++i) {
    into[h.index(h.edges[i].first)].push_back(i);
    into[h.index(h.edges[i].second)].push_back(i);
  }
  h.dist.assign(n, std::nullopt);
  std::deque<std::size_t> queue{h.index(h.anchor)};
  h.dist[queue.front()] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t u : into[v]) {
      if (h.dist[u]) continue;
      h.dist[u] = *h.dist[v] + 1;
      queue.push_back(u);
    }
  }
  return h;
}

bool reachability_check(const HGraph& h) {
  const std::size_t n = h.vertices.size();
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (Elem next : {h.edges[v].first, h.edges[v].second}) {
        const std::size_t u = h.index(next);
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    for (Elem c : h.preferred_core) {
      if (!seen[h.index(c)]) return false;
    }
  }
  return true;
}

GSet WeightedRep::selected() const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i] != anchor && coeffs[i] == 1) out.push_back(base[i]);
  }
  return GSet(base.group(), std::move(out));
}

WeightedRep weight_compress(const GSet& b, Elem y, std::optional<Elem> anchor, std::size_t cap) {
  require(is_irreducible(b, cap), ErrorCode::kPrecondition,
          "weight_compress: B is not irreducible");
  const GroupSpec& g = b.group();
  require(g.contains(y), ErrorCode::kInvalidElement, "weight_compress: target outside group");
  require(g.order() <= (1ULL << 26), ErrorCode::kSizeLimit,
          "weight_compress: group too large for the breadth-first search");
  const HGraph h = build_H(b, anchor);
  const std::size_t n = b.size();

  WeightedRep r;
  r.base = b;
  r.target = y;
  r.anchor = h.anchor;
  r.shift = g.neg(h.anchor);
  for (const auto& d : h.dist) {
    require(d.has_value(), ErrorCode::kInternal, "weight_compress: vertex cannot reach g'");
    r.s.push_back(*d);
  }

  // Breadth-first search over <B + g>: shortest word gives the least N_y.
  std::vector<std::int32_t> via(g.order(), -1);
  std::vector<std::uint32_t> queue{g.zero().index};
  via[g.zero().index] = static_cast<std::int32_t>(n);
  for (std::size_t head = 0; head < queue.size() && via[y.index] < 0; ++head) {
    const Elem x{queue[head]};
    for (std::size_t i = 0; i < n; ++i) {
      const Elem z = g.add(x, g.add(b[i], r.shift));
      if (via[z.index] >= 0) continue;
      via[z.index] = static_cast<std::int32_t>(i);
      queue.push_back(z.index);
    }
  }
  require(via[y.index] >= 0, ErrorCode::kNotInSubgroup,
          "weight_compress: " + g.format(y) + " is not in <B + g>");
  r.coeffs.assign(n, 0);
  for (Elem cur = y; cur != g.zero();) {
    const auto i = static_cast<std::size_t>(via[cur.index]);
    ++r.coeffs[i];
    cur = g.sub(cur, g.add(b[i], r.shift));
  }
  r.initial = r.coeffs;
  for (auto c : r.coeffs) r.n_y += c;

  const std::uint32_t smax = *std::max_element(r.s.begin(), r.s.end());
  auto weight = [&] {
    BigInt w = 0;
    for (std::size_t i = 0; i < n; ++i) w += BigInt(r.coeffs[i]) << (smax - r.s[i]);
    return w;
  };
  r.initial_weight = weight();
  BigInt w = r.initial_weight;
  const std::size_t anchor_i = h.index(h.anchor);

  while (true) {
    std::size_t i = 0;
    while (i < n && (i == anchor_i || r.coeffs[i] < 2)) ++i;
    if (i == n) break;
    // b1 is the out-neighbour on a shortest path to g'.
    auto [e1, e2] = h.edges[i];
    std::size_t j1 = h.index(e1), j2 = h.index(e2);
    if (r.s[j1] + 1 != r.s[i]) std::swap(j1, j2);
    require(r.s[j1] + 1 == r.s[i], ErrorCode::kInternal, "weight_compress: no shortest edge");
    r.coeffs[i] -= 2;
    ++r.coeffs[j1];
    ++r.coeffs[j2];
    ++r.rewrites;
    BigInt next = weight();
    require(next > w, ErrorCode::kInternal, "weight_compress: weight did not increase");
    w = std::move(next);
    std::uint64_t total = 0;
    for (auto c : r.coeffs) total += c;
    require(total == r.n_y, ErrorCode::kInternal, "weight_compress: Σ k_b changed");
  }
  r.final_weight = w;

  Elem check = g.zero();
  for (std::size_t i = 0; i < n; ++i) {
    check = g.add(check, g.times(g.add(b[i], r.shift), static_cast<std::int64_t>(r.coeffs[i] % g.exponent())));
  }
  require(check == y, ErrorCode::kInternal, "weight_compress: lost the target");
  return r;
}

AdditiveBasisResult verify_additive_basis(const GSet& b, const SpanCaps& caps) {
  const GroupSpec& g = b.group();
  AdditiveBasisResult out;
  std::vector<Elem> order;
  std::size_t core_size = 0;
  if (!b.empty() && is_balanced(b).ok) {
    GSet core = minimal_balanced_subset(b);
    core_size = core.size();
    for (Elem x : core) order.push_back(g.neg(x));
    for (Elem x : b) {
      if (!core.contains(x)) order.push_back(g.neg(x));
    }
  } else {
    for (Elem x : b) order.push_back(g.neg(x));
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Elem t = order[k];
    out.tried.push_back(t);
    const GSet shifted = translate(b, t);
    if (sigma_span(shifted, caps) == subgroup_generated(b, t)) {
      out.successes.push_back(t);
      if (!out.g) {
        out.g = t;
        out.g_in_core = k < core_size;
      }
    }
  }
  std::sort(out.successes.begin(), out.successes.end());
  out.ok = out.g.has_value();
  return out;
}

BalancedBounds balanced_bounds(const GSet& b, std::optional<bool> irreducible) {
  require_balanced(b, "balanced_bounds");
  const GroupSpec& g = b.group();
  BalancedBounds r;
  r.minspan = minspan(b).value;
  const BigInt lhs = BigInt(1) << (b.size() - 1);  // 2^{|B| - 1}
  if (g.is_cyclic_prime()) r.cor_prime = lhs >= g.order();
  const bool irr = irreducible ? *irreducible : is_irreducible(b, 26);
  if (irr) r.cor_minspan = lhs >= r.minspan;
  const BigInt p = g.smallest_prime();
  r.cor_combined = lhs >= std::min<BigInt>(BigInt(r.minspan), 2 * p * p);
  return r;
}

}  // namespace unisum
