#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace unisum {

/// A group element, stored as its mixed-radix index.
///
/// The first cyclic factor is the most significant digit, so comparing
/// indices is the same as comparing residue vectors lexicographically.
struct Elem {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(Elem, Elem) = default;
};

/// Finite abelian group given as an explicit product Z/n_1 x ... x Z/n_k.
///
/// No normal-form reduction is applied: Z/6 and Z/2 x Z/3 are different
/// GroupSpecs even though they are isomorphic. Copies share one immutable
/// description, so passing by value is cheap.
class GroupSpec {
 public:
  /// Empty placeholder (order 0); only useful as a default member value.
  GroupSpec() = default;

  static GroupSpec cyclic(std::int64_t n);

  std::size_t rank() const noexcept { return impl_ ? impl_->moduli.size() : 0; }
  std::span<const std::uint32_t> moduli() const noexcept;
  std::uint64_t order() const noexcept { return impl_ ? impl_->order : 0; }
  std::uint32_t smallest_prime() const noexcept { return impl_ ? impl_->smallest_prime : 0; }
  /// Least common multiple of the moduli.
  std::uint64_t exponent() const noexcept { return impl_ ? impl_->exponent : 0; }
  bool is_cyclic() const noexcept { return rank() == 1; }
  bool is_cyclic_prime() const noexcept;
  bool valid() const noexcept { return impl_ != nullptr; }

  Elem zero() const noexcept { return Elem{0}; }
  bool contains(Elem e) const noexcept { return e.index < order(); }

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  /// k * a for any integer k (negative k allowed).
  Elem times(Elem a, std::int64_t k) const noexcept;

  Elem from_residues(std::span<const std::int64_t> residues) const;
  Elem from_residues(std::initializer_list<std::int64_t> residues) const {
    return from_residues(std::span<const std::int64_t>(residues.begin(), residues.size()));
  }
  Elem from_index(std::uint64_t index) const;
  std::vector<std::int64_t> residues(Elem e) const;
  std::uint32_t residue(Elem e, std::size_t i) const noexcept {
    return static_cast<std::uint32_t>((e.index / impl_->strides[i]) % impl_->moduli[i]);
  }
  std::uint64_t element_order(Elem e) const noexcept;

  std::string describe() const;
  std::string format(Elem e) const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) noexcept;

 private:
  struct Impl {
    std::vector<std::uint32_t> moduli;
    std::vector<std::uint64_t> strides;
    std::uint64_t order = 1;
    std::uint64_t exponent = 1;
    std::uint32_t smallest_prime = 0;
  };

  explicit GroupSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  friend GroupSpec make_group(std::span<const std::int64_t> moduli);

  std::shared_ptr<const Impl> impl_;
};

/// Builds a group from its cyclic factors. Throws kInvalidGroup on an empty
/// list, a modulus below 2, or an order that does not fit 32-bit indices.
GroupSpec make_group(std::span<const std::int64_t> moduli);
inline GroupSpec make_group(std::initializer_list<std::int64_t> moduli) {
  return make_group(std::span<const std::int64_t>(moduli.begin(), moduli.size()));
}

/// Canonically sorted, duplicate-free set of elements of one group.
class GSet {
 public:
  GSet() = default;
  GSet(GroupSpec group, std::vector<Elem> elems);

  /// Convenience for cyclic groups: integers are reduced modulo n.
  static GSet of(const GroupSpec& group, std::initializer_list<std::int64_t> values);
  static GSet of(const GroupSpec& group, std::span<const std::int64_t> values);
  static GSet from_residues(const GroupSpec& group,
                            const std::vector<std::vector<std::int64_t>>& rows);
  static GSet whole(const GroupSpec& group);

  const GroupSpec& group() const noexcept { return group_; }
  std::span<const Elem> elements() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }
  Elem operator[](std::size_t i) const noexcept { return elems_[i]; }
  Elem front() const noexcept { return elems_.front(); }

  bool contains(Elem e) const noexcept;
  std::optional<std::size_t> position(Elem e) const noexcept;
  bool is_subset_of(const GSet& other) const;

  std::string format() const;

  friend bool operator==(const GSet& a, const GSet& b) noexcept {
    return a.group_ == b.group_ && a.elems_ == b.elems_;
  }

 private:
  GroupSpec group_;
  std::vector<Elem> elems_;
};

/// Finite multiset of group elements with positive multiplicities.
class GMultiset {
 public:
  struct Entry {
    Elem elem;
    std::uint32_t count = 1;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  GMultiset() = default;
  GMultiset(GroupSpec group, std::vector<Entry> entries);
  static GMultiset from_set(const GSet& set);
  /// Cyclic convenience: every listed value contributes one copy.
  static GMultiset of(const GroupSpec& group, std::initializer_list<std::int64_t> values);

  const GroupSpec& group() const noexcept { return group_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t distinct() const noexcept { return entries_.size(); }
  /// |Z| counted with multiplicity.
  std::size_t total() const noexcept { return total_; }
  std::uint32_t multiplicity(Elem e) const noexcept;
  GSet support() const;
  /// One entry per copy, in canonical order (copies of an element are adjacent).
  std::vector<Elem> slots() const;

  friend bool operator==(const GMultiset& a, const GMultiset& b) noexcept {
    return a.group_ == b.group_ && a.entries_ == b.entries_;
  }

 private:
  GroupSpec group_;
  std::vector<Entry> entries_;
  std::size_t total_ = 0;
};

void require_same_group(const GroupSpec& a, const GroupSpec& b, const char* where);

}  // namespace unisum

template <>
struct std::hash<unisum::Elem> {
  std::size_t operator()(unisum::Elem e) const noexcept {
    return std::hash<std::uint32_t>{}(e.index);
  }
};
