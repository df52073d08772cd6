#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "unisum/group.hpp"
#include "unisum/search.hpp"

namespace unisum {

bool is_prime(std::uint64_t n) noexcept;

/// {0} ∪ <2, -1> in Z/pZ. Throws kUnsupported for p = 2 and kPrecondition
/// unless p is prime.
GSet balanced_multiplicative(std::uint32_t p);

/// Odd primes below `limit` where the multiplicative set has at most
/// `max_size` elements, i.e. the order of 2 mod p is small.
std::vector<std::uint32_t> small_multiplicative_primes(std::uint32_t limit, std::size_t max_size);

/// Least balanced subset of Z/pZ of size <= max_size (canonical witness), or
/// nullopt. Size limits surface as SearchLimit.
std::optional<GSet> balanced_search(std::uint32_t p, std::size_t max_size,
                                    const SearchOptions& opt = {});

/// B x B in Z/n x Z/n for balanced B in Z/n.
GSet grid_construction(const GSet& b);
/// B + B, checked to have no unique sum and at most C(|B|+1, 2) elements.
GSet sumset_construction(const GSet& b);

struct EmbedResult {
  std::uint32_t r = 0;
  GSet image;
  bool verified = false;
};

/// Least r with (u, v) -> u + r v injective on A + A, for A in Z/p x Z/p.
/// nullopt when no r in [0, r_limit) works.
std::optional<EmbedResult> freiman_embed(const GSet& a, std::optional<std::uint32_t> r_limit = {});

struct RectifyResult {
  /// Character coefficients: z -> Σ c_i z_i (N / n_i) mod N, N the exponent.
  /// For cyclic G this is the single unit u.
  std::vector<std::int64_t> character;
  std::int64_t dilation = 0;  // character[0]
  std::int64_t offset = 0;    // subtracted before lifting to [0, N)
  std::vector<std::int64_t> integer_image;  // parallel to the input set
  bool verified = false;
};

inline constexpr std::uint64_t kRectifyScanCap = 1'000'000;

/// Scans units u (cyclic G) or characters (other G) in index order, and for
/// each the offsets chi(z_j) in set order; the first least-residue lift that
/// is a Freiman isomorphism onto integers wins.
std::optional<RectifyResult> rectify(const GSet& z, std::uint64_t scan_cap = kRectifyScanCap);

/// True iff x -> img[i] preserves and reflects a1 + a2 = a3 + a4 and is
/// injective. Runs over pairs, not quadruples.
bool is_freiman_iso_to_integers(const GSet& z, const std::vector<std::int64_t>& img);

inline constexpr std::size_t kAssignmentCap = 10;

struct SAssignment {
  GSet s;
  RectifyResult phi;
  /// by_mask[X] for X a non-empty bitmask over s (s[i] is bit i)
  std::vector<Elem> by_mask;

  Elem at(std::uint32_t mask) const { return by_mask.at(mask); }
  std::uint32_t mask_of(const GSet& x) const;
};

/// X -> φ^{-1}(max φ(X)) over all non-empty X ⊆ S, with the uniqueness of
/// s_X + s_Y checked for every pair. Throws kRectificationRequired when S is
/// not rectified, kSizeLimit above kAssignmentCap.
SAssignment s_assignment(const GSet& s);

}  // namespace unisum
