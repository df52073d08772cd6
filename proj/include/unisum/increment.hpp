#pragma once

#include <cstdint>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unisum/group.hpp"

namespace unisum {

// C1 bounds the size of two families of small sets; C > 2^11 C1 is the constant in the size
// condition |S|^4 <= |D|^6 / (C |A|^5).
inline constexpr std::uint64_t kC1 = 6;
inline constexpr std::uint64_t kC = (std::uint64_t{1} << 11) * kC1;

using Pair = std::pair<Elem, Elem>;  // first < second

struct TwoFamiliesCheck {
  std::size_t k = 0;
  bool hypotheses = false;  // P_i ∩ Q_i = ∅ and the cross condition
  bool within_bound = false;  // k <= C1
};

/// P_i, Q_i are sets of size <= 2 over any integer ground set. Throws
/// kPrecondition on a set of size > 2, a repeated element, or P_i ∩ Q_i ≠ ∅.
TwoFamiliesCheck two_families_check(const std::vector<std::vector<std::int64_t>>& p,
                                    const std::vector<std::vector<std::int64_t>>& q);
/// The cross condition holds and k <= C1. Families violating the cross
/// condition report false as well; use two_families_check to tell them apart.
bool two_families_bound(const std::vector<std::vector<std::int64_t>>& p,
                        const std::vector<std::vector<std::int64_t>>& q);

/// B1(D): d with d + v ∈ D for some v ∈ (2S - 2S) \ {0}.
GSet compute_bad_one(const GSet& d, const GSet& s);

struct GoodPairs {
  std::vector<Pair> bad;   // B2 over G1 = D \ B1
  std::vector<Pair> good;  // G2
  /// least (e, e', s, s') witnessing each bad pair, parallel to `bad`
  std::vector<std::array<Elem, 4>> bad_witness;
  bool unique_sums_ok = true;  // every good pair's sum is unique in (D+S) ∩ A
};

GoodPairs compute_good_pairs(const GSet& a, const GSet& d, const GSet& s,
                             const std::map<Elem, Elem>& s_d);

enum class CaseTag { kTranslate, kFinal, kPreconditionFailed };
const char* to_string(CaseTag t) noexcept;

struct LemmaCheck {
  std::string name;
  bool ok = true;
  std::string detail;  // the two sides, as integers
};

struct IncrementState {
  GSet a, d, s;
  std::uint64_t coverage = 0;  // |(D + S) ∩ A|
  std::map<Elem, GSet> s_sets;  // S_d
  std::map<Elem, Elem> s_d;
  GSet b1;
  GoodPairs pairs;
  std::vector<Pair> xy;  // (x(d,d'), y(d,d')) parallel to pairs.good
  std::map<Elem, std::vector<Pair>> n_map;  // N(a), pairs in good-pair order
  GSet script_n;
  GSet script_n_third;
  std::map<Elem, Elem> d_of;  // d(a) for a in script_n_third
};

struct IncrementOptions {
  bool enforce_bounds = true;  // false: record the size condition and |D| >= 10 but carry on
};

struct IncrementOutcome {
  GSet s_prime;
  CaseTag tag = CaseTag::kPreconditionFailed;
  std::uint64_t gain = 0;
  std::uint64_t gain_required = 0;  // ceil(|D|^2 / (36 |A|))
  std::optional<Elem> t;            // translate case
  std::optional<Elem> a_used;       // the a giving the translate
  std::vector<std::string> failed;  // precondition names that failed
  std::vector<LemmaCheck> checks;
  IncrementState state;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

/// One step of the increment. Throws kPrecondition when A has a unique sum,
/// D ⊄ A, D is not dissociated, or 0 ∉ S; the numeric preconditions come
/// back as a precondition-failed outcome.
IncrementOutcome increment_step(const GSet& a, const GSet& d, const GSet& s,
                                const IncrementOptions& opt = {});

struct TraceRecord {
  std::size_t i = 0;
  std::size_t s_size = 0;
  std::uint64_t coverage = 0;
  CaseTag tag = CaseTag::kPreconditionFailed;
  std::uint64_t gain = 0;
  bool coverage_ok = true;  // 36 |A| cov_i >= i |D|^2
  bool size_ok = true;      // |S_i| <= 2^{3^i}
  std::vector<LemmaCheck> checks;
  std::vector<std::string> failed;
};

struct IncrementTrace {
  GSet a, d;
  bool d_exact = true;  // D is a maximum dissociated subset
  std::vector<TraceRecord> steps;
  std::string exit_reason;
  bool ok() const;
};

/// Runs from S = {0} with D a maximum dissociated subset of A (greedy when
/// supp A exceeds the exact search), until a step fails.
IncrementTrace increment_iterate(const GSet& a, const IncrementOptions& opt = {},
                                 std::size_t max_steps = 64);
IncrementTrace increment_iterate(const GSet& a, const GSet& d, const IncrementOptions& opt = {},
                                 std::size_t max_steps = 64);

}  // namespace unisum
