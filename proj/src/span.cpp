#include "unisum/span.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "unisum/bitset.hpp"
#include "unisum/error.hpp"

namespace unisum {

namespace {

// Membership over group elements: a bitmap for moderate orders, a hash set
// otherwise, so huge groups with few elements stay cheap.
class ElemSet {
 public:
  explicit ElemSet(const GroupSpec& g) : dense_(g.order() <= (1ULL << 28)) {
    if (dense_) bits_ = ElemBitset(g);
  }
  bool test(Elem e) const { return dense_ ? bits_.test(e) : hash_.count(e.index) != 0; }
  void set(Elem e) {
    if (dense_) {
      bits_.set(e);
    } else {
      hash_.insert(e.index);
    }
  }
  void reset(Elem e) {
    if (dense_) {
      bits_.reset(e);
    } else {
      hash_.erase(e.index);
    }
  }

 private:
  bool dense_;
  ElemBitset bits_;
  std::unordered_set<std::uint32_t> hash_;
};

// Σ(D) for a growing dissociated D, with O(2^|D|) extension test. Sums are
// kept in packed coordinates (one bit field per factor) so adding needs no
// division; the membership bitmap is indexed by the packed code.
class DissociatedBuilder {
 public:
  explicit DissociatedBuilder(const GroupSpec& g) : g_(g) {
    const auto m = g.moduli();
    unsigned bits = 0;
    shift_.resize(m.size());
    width_.resize(m.size());
    // last factor in the low bits, like the index order
    for (std::size_t i = m.size(); i-- > 0;) {
      width_[i] = std::max(1, static_cast<int>(std::bit_width(m[i] - 1)));
      shift_[i] = bits;
      bits += width_[i];
    }
    moduli_.assign(m.begin(), m.end());
    packed_ = bits <= 30;
    if (packed_) {
      words_.assign(((std::uint64_t{1} << bits) + 63) / 64, 0);
    } else {
      hash_.emplace(g);
    }
    sums_.push_back(0);
    mark(0);
  }

  bool can_add(Elem e) const {
    if (e == g_.zero()) return false;
    const std::uint64_t x = encode(e);
    if (packed_ && moduli_.size() == 2) {
      // hot loop for grids, with the field layout in registers
      const std::uint32_t w = width_[1], mask = (1U << w) - 1;
      const std::uint32_t n0 = moduli_[1], n1 = moduli_[0];
      const std::uint32_t xl = x & mask, xh = x >> w;
      const std::uint64_t* words = words_.data();
      for (std::uint32_t s : sums_) {
        std::uint32_t lo = (s & mask) + xl, hi = (s >> w) + xh;
        if (lo >= n0) lo -= n0;
        if (hi >= n1) hi -= n1;
        const std::uint32_t c = hi << w | lo;
        if (words[c >> 6] >> (c & 63) & 1) return false;
      }
      return true;
    }
    for (std::uint32_t s : sums_) {
      if (marked(add(s, x))) return false;
    }
    return true;
  }

  void push(Elem e) {
    const std::uint64_t x = encode(e);
    const std::size_t n = sums_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t y = add(sums_[i], x);
      sums_.push_back(static_cast<std::uint32_t>(y));
      mark(y);
    }
    elems_.push_back(e);
  }

  void pop() {
    const std::size_t half = sums_.size() / 2;
    for (std::size_t i = half; i < sums_.size(); ++i) unmark(sums_[i]);
    sums_.resize(half);
    elems_.pop_back();
  }

  const std::vector<Elem>& elems() const { return elems_; }

 private:
  std::uint64_t encode(Elem e) const {
    if (!packed_) return e.index;
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) c |= std::uint64_t{g_.residue(e, i)} << shift_[i];
    return c;
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (!packed_) return g_.add(Elem{static_cast<std::uint32_t>(a)}, Elem{static_cast<std::uint32_t>(b)}).index;
    if (moduli_.size() == 2) {
      const std::uint64_t mask = (std::uint64_t{1} << width_[1]) - 1;
      std::uint64_t lo = (a & mask) + (b & mask), hi = (a >> width_[1]) + (b >> width_[1]);
      if (lo >= moduli_[1]) lo -= moduli_[1];
      if (hi >= moduli_[0]) hi -= moduli_[0];
      return hi << width_[1] | lo;
    }
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      const std::uint64_t mask = (std::uint64_t{1} << width_[i]) - 1;
      std::uint64_t d = (a >> shift_[i] & mask) + (b >> shift_[i] & mask);
      if (d >= moduli_[i]) d -= moduli_[i];
      out |= d << shift_[i];
    }
    return out;
  }
  bool marked(std::uint64_t c) const {
    return packed_ ? (words_[c >> 6] >> (c & 63) & 1) != 0 : hash_->test(Elem{static_cast<std::uint32_t>(c)});
  }
  void mark(std::uint64_t c) {
    if (packed_) {
      words_[c >> 6] |= std::uint64_t{1} << (c & 63);
    } else {
      hash_->set(Elem{static_cast<std::uint32_t>(c)});
    }
  }
  void unmark(std::uint64_t c) {
    if (packed_) {
      words_[c >> 6] &= ~(std::uint64_t{1} << (c & 63));
    } else {
      hash_->reset(Elem{static_cast<std::uint32_t>(c)});
    }
  }

  GroupSpec g_;
  std::vector<std::uint64_t> moduli_;
  std::vector<unsigned> shift_, width_;
  bool packed_ = false;
  std::vector<std::uint64_t> words_;
  std::optional<ElemSet> hash_;
  std::vector<std::uint32_t> sums_;  // codes fit in 32 bits either way
  std::vector<Elem> elems_;
};

void check_span_caps(const GMultiset& z, const SpanCaps& caps) {
  const GroupSpec& g = z.group();
  require(z.total() <= caps.span_terms || g.order() <= caps.span_order, ErrorCode::kSizeLimit,
          "sigma_span: |Z| = " + std::to_string(z.total()) + " exceeds cap " +
              std::to_string(caps.span_terms) + " and the group is too large for the DP");
  require(g.order() <= caps.span_memory_order, ErrorCode::kSizeLimit,
          "sigma_span: group order too large for a span bitmap");
}

std::uint64_t pow3(std::size_t n) {
  std::uint64_t r = 1;
  while (n--) r *= 3;
  return r;
}

Elem code_sum(const GroupSpec& g, std::span<const Elem> elems, std::uint64_t code) {
  Elem s = g.zero();
  for (Elem e : elems) {
    const unsigned digit = code % 3;
    code /= 3;
    if (digit == 1) s = g.add(s, e);
    if (digit == 2) s = g.sub(s, e);
  }
  return s;
}

void decode(std::uint64_t code, std::size_t n, std::vector<int>& out) {
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned digit = code % 3;
    code /= 3;
    out.push_back(digit == 0 ? 0 : digit == 1 ? 1 : -1);
  }
}

}  // namespace

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

GSet sigma_span(const GMultiset& z, const SpanCaps& caps) {
  check_span_caps(z, caps);
  const GroupSpec& g = z.group();
  ElemBitset cur(g);
  cur.set(g.zero());
  for (const auto& entry : z.entries()) {
    for (std::uint32_t c = 0; c < entry.count; ++c) {
      const ElemBitset prev = cur;
      cur.or_translated(prev, entry.elem);
    }
  }
  return cur.to_set();
}

std::optional<std::vector<int>> signed_combination(const GroupSpec& g,
                                                   std::span<const Elem> elems, Elem target,
                                                   bool require_nonzero) {
  const std::size_t n = elems.size();
  const std::size_t h = n / 2;
  auto left = elems.subspan(0, h);
  auto right = elems.subspan(h);

  std::vector<std::pair<std::uint32_t, std::uint64_t>> table;
  const std::uint64_t nl = pow3(h);
  table.reserve(nl);
  for (std::uint64_t c = 0; c < nl; ++c) table.emplace_back(code_sum(g, left, c).index, c);
  std::sort(table.begin(), table.end());

  const std::uint64_t nr = pow3(n - h);
  for (std::uint64_t c = 0; c < nr; ++c) {
    const Elem need = g.sub(target, code_sum(g, right, c));
    auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(need.index, std::uint64_t{0}));
    if (it == table.end() || it->first != need.index) continue;
    // Codes within one value are ascending, so code 0 (the zero vector) comes first.
    if (require_nonzero && c == 0 && it->second == 0) {
      ++it;
      if (it == table.end() || it->first != need.index) continue;
    }
    std::vector<int> mu;
    mu.reserve(n);
    decode(it->second, h, mu);
    decode(c, n - h, mu);
    return mu;
  }
  return std::nullopt;
}

bool is_dissociated(const GSet& s, const SpanCaps& caps) {
  require(s.size() <= caps.dissociated, ErrorCode::kSizeLimit,
          "is_dissociated: |S| = " + std::to_string(s.size()) + " exceeds cap " +
              std::to_string(caps.dissociated));
  if (s.contains(s.group().zero())) return false;
  return !signed_combination(s.group(), s.elements(), s.group().zero(), true).has_value();
}

DimWitness additive_dimension(const GMultiset& z, const SpanCaps& caps) {
  const GroupSpec& g = z.group();
  std::vector<Elem> cand;
  for (const auto& e : z.entries()) {
    if (e.elem != g.zero()) cand.push_back(e.elem);
  }
  require(cand.size() <= caps.dimension, ErrorCode::kSizeLimit,
          "additive_dimension: support size " + std::to_string(cand.size()) + " exceeds cap " +
              std::to_string(caps.dimension));
  // 2^dim <= |Σ(D)| <= |G|
  const std::size_t ceiling =
      std::min<std::size_t>(cand.size(), static_cast<std::size_t>(std::bit_width(g.order()) - 1));

  DissociatedBuilder cur(g);
  std::vector<Elem> best;
  bool done = false;
  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (cur.elems().size() > best.size()) {
      best = cur.elems();
      if (best.size() == ceiling) done = true;
    }
    if (done || i == cand.size()) return;
    if (cur.elems().size() + (cand.size() - i) <= best.size()) return;
    if (cur.can_add(cand[i])) {
      cur.push(cand[i]);
      self(self, i + 1);
      cur.pop();
      if (done) return;
    }
    self(self, i + 1);
  };
  dfs(dfs, 0);
  return {best.size(), GSet(g, best), true};
}

DimWitness greedy_dissociated(const GSet& s) {
  const GroupSpec& g = s.group();
  DissociatedBuilder cur(g);
  for (Elem x : s) {
    if (cur.can_add(x)) cur.push(x);
  }
  return {cur.elems().size(), GSet(g, cur.elems()), false};
}

Representation Representation::from_counts(const GMultiset& base,
                                           const std::map<Elem, std::uint64_t>& counts,
                                           Elem target, std::uint64_t budget) {
  Representation r{base, std::vector<std::uint64_t>(base.total(), 0), target, budget};
  std::size_t slot = 0;
  for (const auto& entry : base.entries()) {
    auto it = counts.find(entry.elem);
    if (it != counts.end()) {
      // Spread evenly over the copies, earlier copies taking the remainder.
      const std::uint64_t q = it->second / entry.count, rem = it->second % entry.count;
      for (std::uint32_t c = 0; c < entry.count; ++c) r.coeffs[slot + c] = q + (c < rem ? 1 : 0);
    }
    slot += entry.count;
  }
  for (const auto& [e, n] : counts) {
    require(n == 0 || base.multiplicity(e) > 0, ErrorCode::kInvalidRepresentation,
            "coefficient on an element outside Z");
  }
  return r;
}

std::uint64_t Representation::coefficient_sum() const {
  std::uint64_t s = 0;
  for (auto c : coeffs) s += c;
  return s;
}

std::vector<std::size_t> Representation::support_slots() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) out.push_back(i);
  }
  return out;
}

std::map<Elem, std::uint64_t> Representation::by_element() const {
  std::map<Elem, std::uint64_t> out;
  const auto slots = base.slots();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) out[slots[i]] += coeffs[i];
  }
  return out;
}

Elem Representation::evaluate() const {
  const GroupSpec& g = base.group();
  const auto slots = base.slots();
  Elem s = g.zero();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    s = g.add(s, g.times(slots[i], static_cast<std::int64_t>(coeffs[i] % g.exponent())));
  }
  return s;
}

bool Representation::valid() const {
  return coeffs.size() == base.total() && base.group().contains(target) &&
         evaluate() == target && coefficient_sum() <= weight_budget;
}

Representation span_representation(const GMultiset& z, Elem y, const SpanCaps& caps) {
  check_span_caps(z, caps);
  const GroupSpec& g = z.group();
  const auto slots = z.slots();
  const std::size_t n = slots.size();
  // reach[i] = Σ(slots[i..n))
  std::vector<ElemBitset> reach(n + 1, ElemBitset(g));
  reach[n].set(g.zero());
  for (std::size_t i = n; i-- > 0;) {
    reach[i] = reach[i + 1];
    reach[i].or_translated(reach[i + 1], slots[i]);
  }
  require(g.contains(y) && reach[0].test(y), ErrorCode::kNotInSubgroup,
          "span_representation: " + g.format(y) + " is not in the additive span");
  Representation r{z, std::vector<std::uint64_t>(n, 0), y, 0};
  Elem rest = y;
  for (std::size_t i = 0; i < n && rest != g.zero(); ++i) {
    const Elem after = g.sub(rest, slots[i]);
    if (reach[i + 1].test(after)) {
      r.coeffs[i] = 1;
      rest = after;
    }
  }
  r.weight_budget = r.coefficient_sum();
  return r;
}

CompressResult support_compress(const Representation& initial) {
  require(initial.valid(), ErrorCode::kInvalidRepresentation,
          "support_compress: initial representation does not reproduce its target within budget");
  const GroupSpec& g = initial.base.group();
  const auto slots = initial.base.slots();
  CompressResult out{initial, {}};
  Representation& rep = out.rep;

  while (true) {
    const auto supp = rep.support_slots();
    // Grow a prefix of the support; sums[mask] is the sum over the prefix
    // subset `mask`, and the prefix stays dissociated until a hit.
    std::vector<Elem> sums{g.zero()};
    std::unordered_map<std::uint32_t, std::uint64_t> where{{g.zero().index, 0}};
    std::optional<std::pair<std::uint64_t, std::uint64_t>> hit;  // (X, Y)
    std::size_t j = 0;
    for (; j < supp.size() && !hit; ++j) {
      const Elem x = slots[supp[j]];
      for (std::uint64_t y = 0; y < sums.size(); ++y) {
        auto it = where.find(g.add(sums[y], x).index);
        if (it != where.end()) {
          hit.emplace(it->second, y);
          break;
        }
      }
      if (hit) break;
      const std::size_t n = sums.size();
      for (std::size_t m = 0; m < n; ++m) {
        const Elem s = g.add(sums[m], x);
        sums.push_back(s);
        where.emplace(s.index, m | (std::uint64_t{1} << j));
      }
    }
    if (!hit) break;

    // sum(X) = sum(Y) + x_j; cancel the overlap.
    const auto [xm, ym] = *hit;
    std::vector<std::size_t> a, b;
    for (std::size_t i = 0; i < j; ++i) {
      const bool in_x = (xm >> i) & 1, in_y = (ym >> i) & 1;
      if (in_x && !in_y) a.push_back(supp[i]);
      if (in_y && !in_x) b.push_back(supp[i]);
    }
    b.push_back(supp[j]);
    CompressStep step;
    if (a.size() >= b.size()) {
      step.k1 = std::move(a);
      step.k2 = std::move(b);
    } else {
      step.k1 = std::move(b);
      step.k2 = std::move(a);
    }
    step.k_minus = rep.coeffs[step.k1.front()];
    for (auto i : step.k1) step.k_minus = std::min(step.k_minus, rep.coeffs[i]);
    for (auto i : step.k1) rep.coeffs[i] -= step.k_minus;
    for (auto i : step.k2) rep.coeffs[i] += step.k_minus;
    step.support_before = supp.size();
    step.support_after = rep.support_slots().size();
    require(step.support_after < step.support_before, ErrorCode::kInternal,
            "support_compress: support did not shrink");
    out.steps.push_back(std::move(step));
    require(out.steps.size() <= initial.base.total(), ErrorCode::kInternal,
            "support_compress: more steps than |Z|");
  }
  require(rep.valid(), ErrorCode::kInternal, "support_compress: lost the target");
  return out;
}

SpanBoundsReport span_bounds_report(const GMultiset& z, const SpanCaps& caps) {
  SpanBoundsReport r;
  r.span_size = sigma_span(z, caps).size();
  r.total = z.total();
  r.dim = additive_dimension(z, caps).dim;
  const std::uint64_t n = r.total, d = r.dim;
  r.lower = BigInt(1) << d;
  r.binomial = binomial(n, d) * binomial(n + d, d);
  r.corollary_num = 1;
  r.corollary_den = 1;
  for (std::uint64_t i = 0; i < 2 * d; ++i) {
    r.corollary_num *= 4 * n;
    r.corollary_den *= d;
  }
  r.lower_ok = r.lower <= r.span_size;
  r.binomial_ok = BigInt(r.span_size) <= r.binomial;
  r.corollary_ok = r.binomial * r.corollary_den <= r.corollary_num;
  return r;
}

KRatio k_ratio(const GMultiset& z, const SpanCaps& caps) {
  KRatio r;
  r.total = z.total();
  r.dim = additive_dimension(z, caps).dim;
  require(r.dim >= 1, ErrorCode::kPrecondition, "k_ratio: dim(Z) = 0");
  r.span_size = sigma_span(z, caps).size();
  r.k = boost::rational<std::int64_t>(static_cast<std::int64_t>(r.total),
                                      static_cast<std::int64_t>(r.dim));
  const double k = boost::rational_cast<double>(r.k);
  r.lhs = static_cast<double>(r.total);
  r.rhs = k / (2 * (2 + std::log2(k))) * std::log2(static_cast<double>(r.span_size));
  // Exact form: |Σ| d^{2d} <= (4|Z|)^{2d}
  BigInt num = 1, den = 1;
  for (std::size_t i = 0; i < 2 * r.dim; ++i) {
    num *= 4 * r.total;
    den *= r.dim;
  }
  r.inequality_ok = BigInt(r.span_size) * den <= num;
  return r;
}

std::optional<std::vector<int>> cube_coefficients(const GSet& d, Elem s, const SpanCaps& caps) {
  require(d.size() <= caps.dissociated, ErrorCode::kSizeLimit, "cube_coefficients: |D| exceeds cap");
  return signed_combination(d.group(), d.elements(), s, false);
}

}  // namespace unisum
