#include "unisum/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "unisum/construct.hpp"
#include "unisum/span.hpp"
#include "unisum/sums.hpp"

namespace unisum {

const char* to_string(CertKind kind) noexcept {
  switch (kind) {
    case CertKind::kMValue: return "m-value";
    case CertKind::kBValue: return "b-value";
    case CertKind::kDimValue: return "dim-value";
  }
  return "?";
}

std::optional<CertKind> cert_kind_from_string(const std::string& s) {
  for (auto k : {CertKind::kMValue, CertKind::kBValue, CertKind::kDimValue}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  require(EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) == 1,
          ErrorCode::kInternal, "sha256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string canonical_text(const Certificate& c) {
  std::ostringstream os;
  auto list = [&](const char* key, const auto& v) {
    os << key;
    for (const auto& x : v) os << ' ' << x;
    os << '\n';
  };
  os << "kind " << to_string(c.kind) << '\n';
  os << "group " << c.group.describe() << '\n';
  os << "value " << c.value << '\n';
  os << "witness " << c.witness.format() << '\n';
  os << "first_size " << c.space.first_size << '\n';
  list("symmetries", c.space.symmetries);
  list("candidates", c.space.candidates);
  list("orbits", c.space.orbits);
  if (c.kind == CertKind::kDimValue) os << "source " << c.source.format() << '\n';
  return os.str();
}

void seal(Certificate& c) { c.checksum = sha256_hex(canonical_text(c)); }

namespace {

std::uint32_t floor_log2(std::uint64_t x) { return 63 - static_cast<std::uint32_t>(__builtin_clzll(x)); }

std::vector<std::uint32_t> units_of(const GroupSpec& g) {
  std::vector<std::uint32_t> u;
  if (!g.is_cyclic()) return {1};
  const std::uint32_t n = static_cast<std::uint32_t>(g.order());
  for (std::uint32_t x = 1; x < n; ++x) {
    if (std::gcd(x, n) == 1) u.push_back(x);
  }
  if (u.empty()) u.push_back(1);  // Z/1 never occurs, Z/2 has u = 1
  return u;
}

// Saturating binomial; enough to compare against the cap.
std::uint64_t choose_sat(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

using Idx = std::vector<std::uint32_t>;

// Arithmetic on raw indices; cyclic groups skip the mixed-radix path.
struct Arith {
  GroupSpec g;
  bool cyclic;
  std::uint32_t n;

  explicit Arith(const GroupSpec& gs)
      : g(gs), cyclic(gs.is_cyclic()), n(static_cast<std::uint32_t>(gs.order())) {}

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (cyclic) {
      std::uint32_t s = a + b;
      return s >= n ? s - n : s;
    }
    return g.add(Elem{a}, Elem{b}).index;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    if (cyclic) return a >= b ? a - b : a + n - b;
    return g.sub(Elem{a}, Elem{b}).index;
  }
};

struct Workspace {
  std::vector<std::uint8_t> member, count;
  explicit Workspace(std::size_t n) : member(n, 0), count(n, 0) {}
};

bool no_unique_sum_raw(const Arith& ar, const Idx& s, Workspace& w) {
  const std::size_t k = s.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      auto& c = w.count[ar.add(s[i], s[j])];
      if (c < 2) ++c;
    }
  bool ok = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      auto& c = w.count[ar.add(s[i], s[j])];
      if (c == 1) ok = false;
      c = 0;
    }
  return ok;
}

bool balanced_raw(const Arith& ar, const Idx& s, Workspace& w) {
  for (auto x : s) w.member[x] = 1;
  bool ok = true;
  for (auto x : s) {
    const std::uint32_t two = ar.add(x, x);
    bool mid = false;
    for (auto y : s) {
      if (y == x) continue;
      const std::uint32_t z = ar.sub(two, y);
      if (z != y && w.member[z]) {
        mid = true;
        break;
      }
    }
    if (!mid) {
      ok = false;
      break;
    }
  }
  for (auto x : s) w.member[x] = 0;
  return ok;
}

// The least image of s under translation by -a and dilation by u, or empty
// when s itself is least.
bool is_canonical(const Arith& ar, const std::vector<std::uint32_t>& units, const Idx& s, Idx& tmp) {
  for (auto a : s) {
    for (auto u : units) {
      tmp.clear();
      for (auto x : s) {
        std::uint32_t d = ar.sub(x, a);
        if (ar.cyclic) d = static_cast<std::uint32_t>(std::uint64_t{d} * u % ar.n);
        tmp.push_back(d);
      }
      std::sort(tmp.begin(), tmp.end());
      if (tmp < s) return false;
    }
  }
  return true;
}

struct BlockResult {
  std::uint64_t candidates = 0;
  std::uint64_t orbits = 0;
  std::optional<Idx> best;
};

struct Level {
  Idx fixed;
  std::uint32_t pool_lo = 0;  // pool = [pool_lo, n)
  std::size_t r = 0;          // elements drawn from the pool
};

Level level_for(const GroupSpec& g, std::size_t k) {
  Level lv;
  if (g.is_cyclic_prime() && k >= 2) {
    lv.fixed = {0, 1};
    lv.pool_lo = 2;
  } else {
    lv.fixed = {0};
    lv.pool_lo = 1;
  }
  lv.r = k - lv.fixed.size();
  return lv;
}

template <class Pred>
BlockResult run_block(const Arith& ar, const std::vector<std::uint32_t>& units, const Level& lv,
                      std::optional<std::uint32_t> top, Pred&& pred, Workspace& w) {
  BlockResult out;
  Idx cur = lv.fixed, tmp;
  auto visit = [&](const Idx& chosen) {
    ++out.candidates;
    cur.resize(lv.fixed.size());
    cur.insert(cur.end(), chosen.begin(), chosen.end());
    if (!pred(ar, cur, w)) return;
    if (!is_canonical(ar, units, cur, tmp)) return;
    ++out.orbits;
    if (!out.best || cur < *out.best) out.best = cur;
  };
  if (!top) {
    visit({});
    return out;
  }
  // choose r-1 from [pool_lo, top) in colex order, then append top
  const std::size_t m = lv.r - 1;
  Idx c(m);
  for (std::size_t i = 0; i < m; ++i) c[i] = lv.pool_lo + static_cast<std::uint32_t>(i);
  if (lv.pool_lo + m > *top) return out;
  Idx chosen(m + 1);
  while (true) {
    std::copy(c.begin(), c.end(), chosen.begin());
    chosen[m] = *top;
    visit(chosen);
    std::size_t i = 0;
    while (i < m && c[i] + 1 == (i + 1 < m ? c[i + 1] : *top)) ++i;
    if (i == m) break;
    ++c[i];
    for (std::size_t j = 0; j < i; ++j) c[j] = lv.pool_lo + static_cast<std::uint32_t>(j);
  }
  return out;
}

template <class Pred>
std::optional<Certificate> exhaust(const GroupSpec& g, CertKind kind, const SearchOptions& opt,
                                   Pred pred) {
  require(g.valid(), ErrorCode::kInvalidGroup, "search: invalid group");
  const Arith ar(g);
  const auto units = units_of(g);
  Certificate cert;
  cert.kind = kind;
  cert.group = g;
  cert.space.first_size = search_floor(g, kind);
  cert.space.symmetries = {"translation"};
  if (g.is_cyclic() && units.size() > 1) cert.space.symmetries.push_back("unit-dilation");

  const std::size_t last = std::min<std::uint64_t>(opt.max_size, g.order());
  const unsigned threads = std::max(1U, opt.threads);
  std::uint64_t spent = 0;
  for (std::size_t k = cert.space.first_size; k <= last; ++k) {
    const Level lv = level_for(g, k);
    const std::uint64_t pool = g.order() - lv.pool_lo;
    const std::uint64_t total = choose_sat(pool, lv.r);
    if (total > opt.cap || spent + total > opt.cap) {
      throw SearchLimit("search: size " + std::to_string(k) + " needs " +
                            (total == std::numeric_limits<std::uint64_t>::max() ? std::string("over 2^64")
                                                                                 : std::to_string(total)) +
                            " candidates, cap " + std::to_string(opt.cap),
                        k, cert.space);
    }
    spent += total;

    std::vector<std::optional<std::uint32_t>> blocks;
    if (lv.r == 0) {
      blocks.push_back(std::nullopt);
    } else {
      for (std::uint32_t t = lv.pool_lo + static_cast<std::uint32_t>(lv.r - 1); t < g.order(); ++t)
        blocks.push_back(t);
    }
    if (opt.reverse_blocks) std::reverse(blocks.begin(), blocks.end());
    std::vector<BlockResult> results(blocks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      Workspace w(g.order());
      for (std::size_t b; (b = next.fetch_add(1)) < blocks.size();) {
        results[b] = run_block(ar, units, lv, blocks[b], pred, w);
      }
    };
    if (threads == 1 || blocks.size() < 2) {
      worker();
    } else {
      std::vector<std::thread> pool_threads;
      for (unsigned t = 0; t < std::min<std::size_t>(threads, blocks.size()); ++t)
        pool_threads.emplace_back(worker);
      for (auto& t : pool_threads) t.join();
    }

    BlockResult merged;
    for (auto& r : results) {
      merged.candidates += r.candidates;
      merged.orbits += r.orbits;
      if (r.best && (!merged.best || *r.best < *merged.best)) merged.best = r.best;
    }
    require(merged.candidates == total, ErrorCode::kInternal, "search: candidate count mismatch");
    cert.space.candidates.push_back(merged.candidates);
    cert.space.orbits.push_back(merged.orbits);
    if (merged.best) {
      std::vector<Elem> v;
      for (auto x : *merged.best) v.push_back(Elem{x});
      cert.value = k;
      cert.witness = GSet(g, v);
      seal(cert);
      return cert;
    }
  }
  return std::nullopt;
}

}  // namespace

std::size_t search_floor(const GroupSpec& g, CertKind kind) {
  const std::uint32_t p = g.smallest_prime();
  // Sets of size <= log2 p(G) rectify, so they have a unique sum and a
  // non-midpoint maximum.
  std::size_t floor = floor_log2(p) + 1;
  const bool odd_prime = g.is_cyclic_prime() && p > 2;
  if (kind == CertKind::kBValue) floor = std::max<std::size_t>(floor, 3);
  // In Z/p, p odd, balanced sets have 2^{|B|-1} >= p, and sets with no
  // unique sum are balanced.
  if (odd_prime && kind != CertKind::kDimValue) {
    std::size_t k = 1;
    while ((std::uint64_t{1} << (k - 1)) < p) ++k;
    floor = std::max(floor, k);
  }
  return floor;
}

std::optional<Certificate> m_exact(const GroupSpec& g, const SearchOptions& opt) {
  return exhaust(g, CertKind::kMValue, opt, no_unique_sum_raw);
}

std::optional<Certificate> b_exact(const GroupSpec& g, const SearchOptions& opt) {
  return exhaust(g, CertKind::kBValue, opt, balanced_raw);
}

GSet canonical_form(const GSet& s) {
  const GroupSpec& g = s.group();
  if (s.empty()) return s;
  const Arith ar(g);
  Idx best;
  for (auto a : s) {
    for (auto u : units_of(g)) {
      Idx img;
      for (auto x : s) {
        std::uint32_t d = ar.sub(x.index, a.index);
        if (ar.cyclic) d = static_cast<std::uint32_t>(std::uint64_t{d} * u % ar.n);
        img.push_back(d);
      }
      std::sort(img.begin(), img.end());
      if (best.empty() || img < best) best = img;
    }
  }
  std::vector<Elem> v;
  for (auto x : best) v.push_back(Elem{x});
  return GSet(g, v);
}

Certificate dim_certificate(const GSet& z) {
  const DimWitness d = additive_dimension(z);
  require(d.exact, ErrorCode::kSizeLimit, "dim_certificate: dimension not exact");
  Certificate c;
  c.kind = CertKind::kDimValue;
  c.group = z.group();
  c.value = d.dim;
  c.witness = d.witness;
  c.source = z;
  c.space.first_size = d.dim + 1;
  c.space.symmetries = {"none"};
  seal(c);
  return c;
}

CertificateCheck verify_certificate(const Certificate& c, bool rerun, unsigned threads) {
  CertificateCheck out;
  out.checksum_ok = sha256_hex(canonical_text(c)) == c.checksum;
  const GSet& w = c.witness;
  bool ok = w.group() == c.group && w.size() == c.value;
  if (ok) {
    switch (c.kind) {
      case CertKind::kMValue:
        ok = !w.empty() && has_no_unique_sum(w) && canonical_form(w) == w &&
             c.value >= c.space.first_size &&
             c.space.candidates.size() == c.value - c.space.first_size + 1;
        break;
      case CertKind::kBValue:
        ok = !w.empty() && is_balanced(w).ok && canonical_form(w) == w &&
             c.value >= c.space.first_size &&
             c.space.candidates.size() == c.value - c.space.first_size + 1;
        break;
      case CertKind::kDimValue:
        ok = c.source.group() == c.group && w.is_subset_of(c.source) && is_dissociated(w);
        break;
    }
  }
  out.witness_ok = ok;
  if (rerun) {
    if (c.kind == CertKind::kDimValue) {
      const Certificate again = dim_certificate(c.source);
      out.rerun_ok = again.value == c.value && again.witness == c.witness;
    } else {
      SearchOptions opt;
      opt.max_size = c.value;
      opt.threads = threads;
      opt.reverse_blocks = true;
      auto again = c.kind == CertKind::kMValue ? m_exact(c.group, opt) : b_exact(c.group, opt);
      out.rerun_ok = again && again->value == c.value && again->witness == c.witness &&
                     again->space.candidates == c.space.candidates &&
                     again->space.orbits == c.space.orbits && again->checksum == c.checksum;
    }
  }
  return out;
}

std::vector<DashboardRow> bounds_dashboard(const std::vector<std::uint32_t>& primes,
                                           const DashboardOptions& opt) {
  std::vector<DashboardRow> rows;
  for (std::uint32_t p : primes) {
    require(is_prime(p), ErrorCode::kPrecondition, "bounds_dashboard: " + std::to_string(p) + " is not prime");
    DashboardRow row;
    row.p = p;
    row.log_bound = std::log2(static_cast<double>(p)) + 1;
    const GroupSpec g = GroupSpec::cyclic(p);
    SearchOptions so;
    so.max_size = opt.max_size;
    so.cap = opt.cap;
    so.threads = opt.threads;
    auto fill = [&](CertKind kind, std::optional<std::uint64_t>& value, bool& exhausted,
                    std::uint64_t& lower) -> std::optional<Certificate> {
      try {
        auto c = kind == CertKind::kMValue ? m_exact(g, so) : b_exact(g, so);
        exhausted = c.has_value() || opt.max_size >= p;
        if (c) value = c->value;
        lower = c ? c->value : std::max<std::uint64_t>(search_floor(g, kind), opt.max_size + 1);
        return c;
      } catch (const SearchLimit& e) {
        exhausted = false;
        lower = e.lower_bound();
        return std::nullopt;
      }
    };
    auto bc = fill(CertKind::kBValue, row.b, row.b_exhausted, row.b_lower);
    fill(CertKind::kMValue, row.m, row.m_exhausted, row.m_lower);

    std::optional<GSet> source;
    if (bc) {
      source = bc->witness;
    } else if (p > 2) {
      source = balanced_multiplicative(p);
    }
    if (source) {
      row.balanced_source = source->size();
      row.construction = sumset_construction(*source).size();
    }
    if (row.b) row.b_ge_log = (std::uint64_t{1} << (*row.b - 1)) >= p;
    if (row.b && row.m) row.m_ge_b = *row.m >= *row.b;
    if (row.m && row.construction) row.m_le_construction = *row.m <= *row.construction;
    if (!row.m && row.construction) row.m_le_construction = row.m_lower <= *row.construction;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace unisum
