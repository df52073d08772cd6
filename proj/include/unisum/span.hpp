#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "unisum/group.hpp"

namespace unisum {

using BigInt = boost::multiprecision::cpp_int;

struct SpanCaps {
  std::size_t span_terms = 30;            // |Z| with multiplicity
  std::uint64_t span_order = 1ULL << 20;  // or any |Z| if |G| is at most this
  std::uint64_t span_memory_order = 1ULL << 28;
  std::size_t dissociated = 26;
  std::size_t dimension = 24;             // distinct support elements
};

/// Σ(Z): every sub-multiset sum, by subset-sum DP over the group.
GSet sigma_span(const GMultiset& z, const SpanCaps& caps = {});
inline GSet sigma_span(const GSet& z, const SpanCaps& caps = {}) {
  return sigma_span(GMultiset::from_set(z), caps);
}

/// Meet in the middle over {-1,0,1}^S. A nonzero mu with Σ mu_s s = target, or
/// nullopt. With target 0 and require_nonzero this decides dissociation.
std::optional<std::vector<int>> signed_combination(const GroupSpec& g,
                                                   std::span<const Elem> elems, Elem target,
                                                   bool require_nonzero);

bool is_dissociated(const GSet& s, const SpanCaps& caps = {});

struct DimWitness {
  std::size_t dim = 0;
  GSet witness;
  bool exact = true;  // false when produced by the greedy fallback
};

/// Largest dissociated subset of supp(Z), lexicographically least among the
/// largest. A multiset contributes each distinct element at most once.
DimWitness additive_dimension(const GMultiset& z, const SpanCaps& caps = {});
inline DimWitness additive_dimension(const GSet& z, const SpanCaps& caps = {}) {
  return additive_dimension(GMultiset::from_set(z), caps);
}

/// Maximal (not maximum) dissociated subset, scanning in canonical order.
DimWitness greedy_dissociated(const GSet& s);

/// y = Σ coeffs[i] * slots[i], one coefficient per copy in Z (slots() order).
struct Representation {
  GMultiset base;
  std::vector<std::uint64_t> coeffs;
  Elem target;
  std::uint64_t weight_budget = 0;

  static Representation from_counts(const GMultiset& base, const std::map<Elem, std::uint64_t>& counts,
                                    Elem target, std::uint64_t budget);

  std::uint64_t coefficient_sum() const;
  std::vector<std::size_t> support_slots() const;
  /// coefficients aggregated per element
  std::map<Elem, std::uint64_t> by_element() const;
  Elem evaluate() const;
  bool valid() const;
};

/// A 0/1 representation of y using the lexicographically least sub-multiset
/// (as a sorted sequence); weight_budget = a(y). Throws kNotInSubgroup when y
/// is not in Σ(Z).
Representation span_representation(const GMultiset& z, Elem y, const SpanCaps& caps = {});

struct CompressStep {
  std::vector<std::size_t> k1;  // slot indices losing k^-
  std::vector<std::size_t> k2;  // slot indices gaining k^-
  std::uint64_t k_minus = 0;
  std::size_t support_before = 0;
  std::size_t support_after = 0;
};

struct CompressResult {
  Representation rep;
  std::vector<CompressStep> steps;
};

/// Repeated K1/K2 rewrites until the support is dissociated. Each relation is
/// the first found among support prefixes in canonical slot order.
CompressResult support_compress(const Representation& initial);

struct SpanBoundsReport {
  std::uint64_t span_size = 0;
  std::size_t total = 0;
  std::size_t dim = 0;
  BigInt lower;          // 2^d
  BigInt binomial;       // C(|Z|, d) C(|Z| + d, d)
  BigInt corollary_num;  // (4|Z|)^{2d}
  BigInt corollary_den;  // d^{2d}
  bool lower_ok = false;
  bool binomial_ok = false;
  bool corollary_ok = false;  // binomial <= corollary, hence |Σ| too
  bool all_ok() const { return lower_ok && binomial_ok && corollary_ok; }
};

SpanBoundsReport span_bounds_report(const GMultiset& z, const SpanCaps& caps = {});

struct KRatio {
  boost::rational<std::int64_t> k;
  std::size_t total = 0;
  std::size_t dim = 0;
  std::uint64_t span_size = 0;
  double lhs = 0;  // |Z|
  double rhs = 0;  // K / (2 (2 + log2 K)) * log2 |Σ(Z)|
  bool inequality_ok = false;
};

KRatio k_ratio(const GMultiset& z, const SpanCaps& caps = {});

/// Coefficients mu in {-1,0,1}^D with Σ mu_d d = s, if any.
std::optional<std::vector<int>> cube_coefficients(const GSet& d, Elem s, const SpanCaps& caps = {});

BigInt binomial(std::uint64_t n, std::uint64_t k);

}  // namespace unisum
