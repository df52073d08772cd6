#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "unisum/group.hpp"
#include "unisum/span.hpp"

namespace unisum {

/// Largest balanced subset of B, by deleting non-midpoints to a fixed point.
GSet balanced_core(const GSet& b);

/// Minimal balanced B' ⊆ B: try deleting elements in canonical order and
/// restart inside the core whenever it stays non-empty.
GSet minimal_balanced_subset(const GSet& b);

inline constexpr std::size_t kIrreducibleCap = 20;

/// All minimal balanced subsets of B, sorted. Exhaustive over subsets of B.
std::vector<GSet> minimal_balanced_subsets(const GSet& b, std::size_t cap = kIrreducibleCap);

/// No two disjoint balanced subsets. Throws kPrecondition if B is not
/// balanced and kSizeLimit above the cap.
bool is_irreducible(const GSet& b, std::size_t cap = kIrreducibleCap);

struct HGraph {
  GSet vertices;
  /// edges[i] = (b1, b2) for vertices[i], with b1 < b2 and 2b = b1 + b2.
  std::vector<std::pair<Elem, Elem>> edges;
  GSet preferred_core;
  Elem anchor;  // g', least element of preferred_core unless chosen
  /// Shortest directed distance to the anchor; nullopt when unreachable.
  std::vector<std::optional<std::uint32_t>> dist;

  std::size_t index(Elem b) const { return *vertices.position(b); }
};

/// Distances are measured to `anchor` (default min(B')), which must lie in B'.
HGraph build_H(const GSet& b, std::optional<Elem> anchor = std::nullopt);

/// Every vertex reaches every vertex of the preferred core.
bool reachability_check(const HGraph& h);

struct WeightedRep {
  GSet base;
  std::vector<std::uint64_t> coeffs;  // parallel to base
  std::vector<std::uint64_t> initial;
  Elem target;
  Elem anchor;                        // g'
  Elem shift;                         // g = -g'
  std::vector<std::uint32_t> s;       // shortest distance to g'
  std::uint64_t n_y = 0;              // Σ k_b, constant throughout
  std::uint64_t rewrites = 0;
  BigInt initial_weight;              // Σ k_b 2^{smax - s(b)}
  BigInt final_weight;

  /// The elements b ≠ g' with k_b = 1; their translates sum to the target.
  GSet selected() const;
};

/// The weight-compression procedure. Requires B irreducible balanced and
/// y ∈ <B + g> with g = -g'. The anchor g' defaults to min(B') and must lie in
/// B'. Every rewrite is checked to keep Σ k_b and strictly raise the weight.
WeightedRep weight_compress(const GSet& b, Elem y, std::optional<Elem> anchor = std::nullopt,
                            std::size_t cap = kIrreducibleCap);

struct AdditiveBasisResult {
  bool ok = false;
  std::optional<Elem> g;             // first success, preferring -B'
  bool g_in_core = false;
  std::vector<Elem> successes;       // every g in -B that works, canonical order
  std::vector<Elem> tried;           // order in which -B was scanned
};

/// Searches g ∈ -B with Σ(B + g) = <B + g>, trying -B' first when B is
/// balanced. Every candidate is checked, so `successes` is complete.
AdditiveBasisResult verify_additive_basis(const GSet& b, const SpanCaps& caps = {});

struct BalancedBounds {
  std::uint64_t minspan = 0;
  bool cor_prime = true;        // |B| >= log2 p + 1 (cyclic prime G only)
  bool cor_minspan = true;      // |B| >= log2 minspan + 1 (irreducible B only)
  bool cor_combined = true;     // |B| >= min(log2 minspan, 2 log2 p(G) + 1) + 1
  bool all_ok() const { return cor_prime && cor_minspan && cor_combined; }
};

/// The lower bounds on balanced sets, as exact integer inequalities.
BalancedBounds balanced_bounds(const GSet& b, std::optional<bool> irreducible = std::nullopt);

}  // namespace unisum
