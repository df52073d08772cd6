#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unisum/error.hpp"
#include "unisum/group.hpp"

namespace unisum {

enum class CertKind { kMValue, kBValue, kDimValue };

const char* to_string(CertKind kind) noexcept;
std::optional<CertKind> cert_kind_from_string(const std::string& s);

struct SearchSpace {
  std::size_t first_size = 0;  // sizes first_size..value-1 were exhausted
  std::vector<std::string> symmetries;
  std::vector<std::uint64_t> candidates;  // per size from first_size on
  std::vector<std::uint64_t> orbits;      // canonical witnesses found at each size
};

struct Certificate {
  CertKind kind = CertKind::kMValue;
  GroupSpec group;
  std::uint64_t value = 0;
  GSet witness;
  SearchSpace space;
  GSet source;  // the multiset support searched, dim-value only
  std::string checksum;  // SHA-256 of canonical_text()
};

/// Deterministic text covering every field but the checksum.
std::string canonical_text(const Certificate& c);
std::string sha256_hex(const std::string& data);
void seal(Certificate& c);

struct SearchOptions {
  std::size_t max_size = 12;
  unsigned threads = 1;
  std::uint64_t cap = 2'000'000'000;  // candidate sets, summed over sizes
  bool reverse_blocks = false;        // visit prefix blocks high to low
};

/// Thrown when the next size would exceed the cap; sizes below lower_bound
/// were exhausted.
class SearchLimit : public Error {
 public:
  SearchLimit(const std::string& what, std::uint64_t lower_bound, SearchSpace space)
      : Error(ErrorCode::kSizeLimit, what), lower_bound_(lower_bound), space_(std::move(space)) {}
  std::uint64_t lower_bound() const noexcept { return lower_bound_; }
  const SearchSpace& space() const noexcept { return space_; }

 private:
  std::uint64_t lower_bound_;
  SearchSpace space_;
};

/// Least size the search starts from. No set of size <= log2 p(G) has either
/// property (rectification). For balanced sets in Z/p, p odd, sizes below
/// log2 p + 1 are skipped too.
std::size_t search_floor(const GroupSpec& g, CertKind kind);

/// Least |A| with no unique sum, lexicographically least canonical witness.
/// nullopt when nothing of size <= max_size exists.
std::optional<Certificate> m_exact(const GroupSpec& g, const SearchOptions& opt = {});
/// Same for balanced sets.
std::optional<Certificate> b_exact(const GroupSpec& g, const SearchOptions& opt = {});

/// Orbit representative under translation (and unit dilation for cyclic G).
GSet canonical_form(const GSet& s);

/// Certificate for dim(Z) from the exact dimension search.
Certificate dim_certificate(const GSet& z);

struct CertificateCheck {
  bool checksum_ok = false;
  bool witness_ok = false;  // size and defining predicate
  std::optional<bool> rerun_ok;
  bool ok() const { return checksum_ok && witness_ok && rerun_ok.value_or(true); }
};

/// Re-checks a certificate. With rerun, repeats the exhaustion with the blocks
/// in the opposite order and `threads` workers and compares every field.
CertificateCheck verify_certificate(const Certificate& c, bool rerun = false, unsigned threads = 2);

struct DashboardRow {
  std::uint32_t p = 0;
  double log_bound = 0;  // log2 p + 1
  std::optional<std::uint64_t> b, m;
  bool b_exhausted = false, m_exhausted = false;
  std::uint64_t b_lower = 0, m_lower = 0;   // proven lower bounds when not exhausted
  std::optional<std::uint64_t> balanced_source;  // |B| fed to the sumset construction
  std::optional<std::uint64_t> construction;     // |B + B|, an upper bound on m(p)
  bool b_ge_log = true;
  bool m_ge_b = true;
  bool m_le_construction = true;
  bool ok() const { return b_ge_log && m_ge_b && m_le_construction; }
};

struct DashboardOptions {
  std::size_t max_size = 12;
  std::uint64_t cap = 50'000'000;
  unsigned threads = 1;
};

std::vector<DashboardRow> bounds_dashboard(const std::vector<std::uint32_t>& primes,
                                           const DashboardOptions& opt = {});

}  // namespace unisum
