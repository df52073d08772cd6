#include "unisum/construct.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "unisum/error.hpp"
#include "unisum/sums.hpp"

namespace unisum {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

GSet balanced_multiplicative(std::uint32_t p) {
  require(p != 2, ErrorCode::kUnsupported, "balanced_multiplicative: p = 2 has no balanced set");
  require(is_prime(p), ErrorCode::kPrecondition,
          "balanced_multiplicative: " + std::to_string(p) + " is not prime");
  std::vector<bool> in(p, false);
  std::vector<std::int64_t> out{0};
  // <2, -1> = <2> ∪ -<2>
  std::uint64_t x = 1;
  do {
    for (std::uint64_t y : {x, p - x}) {
      if (!in[y]) {
        in[y] = true;
        out.push_back(static_cast<std::int64_t>(y));
      }
    }
    x = x * 2 % p;
  } while (x != 1);
  GSet b = GSet::of(GroupSpec::cyclic(p), out);
  require(is_balanced(b).ok, ErrorCode::kInternal, "balanced_multiplicative: not balanced");
  return b;
}

std::vector<std::uint32_t> small_multiplicative_primes(std::uint32_t limit, std::size_t max_size) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 3; p < limit; p += 2) {
    if (!is_prime(p)) continue;
    std::uint64_t x = 2 % p, ord = 1;
    while (x != 1) {
      x = x * 2 % p;
      ++ord;
    }
    // |<2, -1>| is ord or 2 ord
    bool has_minus = false;
    x = 1;
    for (std::uint64_t i = 0; i < ord; ++i, x = x * 2 % p) {
      if (x == p - 1) has_minus = true;
    }
    const std::uint64_t size = 1 + (has_minus ? ord : 2 * ord);
    if (size <= max_size) out.push_back(p);
  }
  return out;
}

std::optional<GSet> balanced_search(std::uint32_t p, std::size_t max_size, const SearchOptions& opt) {
  require(is_prime(p), ErrorCode::kPrecondition, "balanced_search: " + std::to_string(p) + " is not prime");
  SearchOptions o = opt;
  o.max_size = max_size;
  auto c = b_exact(GroupSpec::cyclic(p), o);
  if (!c) return std::nullopt;
  return c->witness;
}

namespace {

void require_balanced_cyclic(const GSet& b, const char* where) {
  require(b.group().is_cyclic(), ErrorCode::kGroupMismatch, std::string(where) + ": B must lie in a cyclic group");
  require(!b.empty() && is_balanced(b).ok, ErrorCode::kPrecondition, std::string(where) + ": B is not balanced");
}

}  // namespace

GSet grid_construction(const GSet& b) {
  require_balanced_cyclic(b, "grid_construction");
  const std::int64_t n = b.group().order();
  const GroupSpec g2 = make_group({n, n});
  std::vector<Elem> v;
  for (Elem x : b)
    for (Elem y : b) v.push_back(g2.from_residues({x.index, y.index}));
  GSet a(g2, v);
  require(has_no_unique_sum(a), ErrorCode::kInternal, "grid_construction: unique sum found");
  return a;
}

GSet sumset_construction(const GSet& b) {
  require_balanced_cyclic(b, "sumset_construction");
  GSet a = sumset(b, b);
  require(a.size() <= b.size() * (b.size() + 1) / 2, ErrorCode::kInternal, "sumset_construction: too large");
  require(has_no_unique_sum(a), ErrorCode::kInternal, "sumset_construction: unique sum found");
  return a;
}

std::optional<EmbedResult> freiman_embed(const GSet& a, std::optional<std::uint32_t> r_limit) {
  const GroupSpec& g = a.group();
  const auto mod = g.moduli();
  require(mod.size() == 2 && mod[0] == mod[1] && is_prime(mod[0]), ErrorCode::kGroupMismatch,
          "freiman_embed: A must lie in Z/p x Z/p, got " + g.describe());
  const std::uint32_t p = mod[0];
  if (a.size() > p) return std::nullopt;
  const GSet aa = sumset(a, a);
  if (aa.size() > p) return std::nullopt;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> uv;
  for (Elem s : aa) uv.emplace_back(g.residue(s, 0), g.residue(s, 1));

  const GroupSpec z = GroupSpec::cyclic(p);
  std::vector<std::uint32_t> seen(p, 0);
  const std::uint32_t limit = std::min(p, r_limit.value_or(p));
  for (std::uint32_t r = 0; r < limit; ++r) {
    bool injective = true;
    for (auto [u, v] : uv) {
      const auto img = static_cast<std::uint32_t>((u + std::uint64_t{r} * v) % p);
      if (seen[img] == r + 1) {
        injective = false;
        break;
      }
      seen[img] = r + 1;
    }
    if (!injective) continue;
    EmbedResult out;
    out.r = r;
    std::vector<Elem> v;
    for (Elem x : a) v.push_back(Elem{static_cast<std::uint32_t>((g.residue(x, 0) + std::uint64_t{r} * g.residue(x, 1)) % p)});
    out.image = GSet(z, v);
    // injective on A + A already forces injective on A (2a determines a, p odd)
    out.verified = out.image.size() == a.size();
    return out;
  }
  return std::nullopt;
}

bool is_freiman_iso_to_integers(const GSet& z, const std::vector<std::int64_t>& img) {
  const GroupSpec& g = z.group();
  const std::size_t n = z.size();
  if (img.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (img[i] == img[j]) return false;
  // a1 + a2 = a3 + a4 in G iff the integer sums agree: the pair classes must
  // be the same partition.
  std::unordered_map<std::uint32_t, std::int64_t> g_to_int;
  std::unordered_map<std::int64_t, std::uint32_t> int_to_g;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const std::uint32_t s = g.add(z[i], z[j]).index;
      const std::int64_t t = img[i] + img[j];
      auto [it, fresh] = g_to_int.emplace(s, t);
      if (!fresh && it->second != t) return false;
      auto [jt, fresh2] = int_to_g.emplace(t, s);
      if (!fresh2 && jt->second != s) return false;
    }
  return true;
}

std::optional<RectifyResult> rectify(const GSet& z, std::uint64_t scan_cap) {
  const GroupSpec& g = z.group();
  const auto mod = g.moduli();
  const std::uint64_t big_n = g.exponent();
  auto lift = [&](const std::vector<std::int64_t>& c) {
    std::vector<std::int64_t> img;
    for (Elem x : z) {
      std::uint64_t v = 0;
      for (std::size_t i = 0; i < mod.size(); ++i) {
        const std::uint64_t c_i = static_cast<std::uint64_t>(c[i]) % mod[i];
        v = (v + c_i * g.residue(x, i) % mod[i] * (big_n / mod[i])) % big_n;
      }
      img.push_back(static_cast<std::int64_t>(v));
    }
    return img;
  };
  // The least-residue lift of chi(z) - chi(z_j): cutting the circle just
  // below each point in turn catches images that wrap around 0.
  auto attempt = [&](const std::vector<std::int64_t>& c) -> std::optional<RectifyResult> {
    const auto base = lift(c);
    for (std::size_t j = 0; j < base.size(); ++j) {
      std::vector<std::int64_t> img(base.size());
      for (std::size_t i = 0; i < base.size(); ++i) {
        img[i] = ((base[i] - base[j]) % static_cast<std::int64_t>(big_n) + static_cast<std::int64_t>(big_n)) %
                 static_cast<std::int64_t>(big_n);
      }
      if (!is_freiman_iso_to_integers(z, img)) continue;
      RectifyResult r;
      r.character = c;
      r.dilation = c[0];
      r.offset = base[j];
      r.integer_image = std::move(img);
      r.verified = true;
      return r;
    }
    return std::nullopt;
  };

  if (g.is_cyclic()) {
    const std::uint64_t n = g.order();
    for (std::uint64_t u = 1; u < std::max<std::uint64_t>(n, 2) && u <= scan_cap; ++u) {
      if (std::gcd(u, n) != 1) continue;
      if (auto r = attempt({static_cast<std::int64_t>(u)})) return r;
    }
    return std::nullopt;
  }
  // Characters of Z/n_1 x ... x Z/n_k, indexed like group elements.
  const std::uint64_t limit = std::min<std::uint64_t>(g.order(), scan_cap);
  for (std::uint64_t idx = 1; idx < limit; ++idx) {
    auto res = g.residues(g.from_index(idx));
    if (auto r = attempt(res)) return r;
  }
  return std::nullopt;
}

std::uint32_t SAssignment::mask_of(const GSet& x) const {
  std::uint32_t m = 0;
  for (Elem e : x) {
    auto pos = s.position(e);
    require(pos.has_value(), ErrorCode::kInvalidElement, "s_assignment: element outside S");
    m |= 1U << *pos;
  }
  return m;
}

SAssignment s_assignment(const GSet& s) {
  require(!s.empty(), ErrorCode::kPrecondition, "s_assignment: empty S");
  require(s.size() <= kAssignmentCap, ErrorCode::kSizeLimit,
          "s_assignment: |S| = " + std::to_string(s.size()) + " exceeds " + std::to_string(kAssignmentCap));
  auto phi = rectify(s);
  require(phi.has_value(), ErrorCode::kRectificationRequired, "s_assignment: S is not rectified");
  SAssignment out;
  out.s = s;
  out.phi = *phi;
  const std::size_t n = s.size();
  const std::uint32_t full = (1U << n) - 1;
  out.by_mask.assign(full + 1, Elem{});
  for (std::uint32_t m = 1; m <= full; ++m) {
    std::size_t arg = n;
    for (std::size_t i = 0; i < n; ++i) {
      if ((m >> i & 1) && (arg == n || phi->integer_image[i] > phi->integer_image[arg])) arg = i;
    }
    out.by_mask[m] = s[arg];
  }
  const GroupSpec& g = s.group();
  for (std::uint32_t x = 1; x <= full; ++x)
    for (std::uint32_t y = 1; y <= full; ++y) {
      const Elem target = g.add(out.by_mask[x], out.by_mask[y]);
      for (std::size_t i = 0; i < n; ++i) {
        if (!(x >> i & 1)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!(y >> j & 1)) continue;
          if (g.add(s[i], s[j]) == target) {
            require(s[i] == out.by_mask[x] && s[j] == out.by_mask[y], ErrorCode::kInternal,
                    "s_assignment: s_X + s_Y has a second representation");
          }
        }
      }
    }
  return out;
}

}  // namespace unisum
