#include "unisum/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "unisum/error.hpp"

namespace unisum {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidGroup: return "invalid-group";
    case ErrorCode::kInvalidElement: return "invalid-element";
    case ErrorCode::kGroupMismatch: return "group-mismatch";
    case ErrorCode::kInvalidDilation: return "invalid-dilation";
    case ErrorCode::kSizeLimit: return "size-limit";
    case ErrorCode::kInvalidRepresentation: return "invalid-representation";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kNotInSubgroup: return "not-in-subgroup";
    case ErrorCode::kRectificationRequired: return "rectification-required";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

namespace {

std::uint32_t smallest_prime_factor(std::uint32_t n) {
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

std::int64_t reduce(std::int64_t x, std::int64_t n) {
  std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

}  // namespace

GroupSpec make_group(std::span<const std::int64_t> moduli) {
  require(!moduli.empty(), ErrorCode::kInvalidGroup, "group needs at least one cyclic factor");
  auto impl = std::make_shared<GroupSpec::Impl>();
  impl->smallest_prime = 0;
  for (std::int64_t n : moduli) {
    require(n >= 2, ErrorCode::kInvalidGroup,
            "modulus " + std::to_string(n) + " is below 2");
    require(n <= 0xFFFFFFFFLL, ErrorCode::kInvalidGroup, "modulus too large");
    impl->order *= static_cast<std::uint64_t>(n);
    require(impl->order <= 0xFFFFFFFFULL, ErrorCode::kInvalidGroup,
            "group order exceeds 2^32 - 1");
    impl->moduli.push_back(static_cast<std::uint32_t>(n));
    impl->exponent = std::lcm(impl->exponent, static_cast<std::uint64_t>(n));
    std::uint32_t p = smallest_prime_factor(static_cast<std::uint32_t>(n));
    if (impl->smallest_prime == 0 || p < impl->smallest_prime) impl->smallest_prime = p;
  }
  impl->strides.assign(impl->moduli.size(), 1);
  for (std::size_t i = impl->moduli.size(); i-- > 1;) {
    impl->strides[i - 1] = impl->strides[i] * impl->moduli[i];
  }
  return GroupSpec(std::move(impl));
}

GroupSpec GroupSpec::cyclic(std::int64_t n) { return make_group({n}); }

std::span<const std::uint32_t> GroupSpec::moduli() const noexcept {
  if (!impl_) return {};
  return impl_->moduli;
}

bool GroupSpec::is_cyclic_prime() const noexcept {
  return is_cyclic() && impl_->smallest_prime == impl_->moduli[0];
}

Elem GroupSpec::add(Elem a, Elem b) const noexcept {
  const auto& m = impl_->moduli;
  if (m.size() == 1) {
    std::uint64_t s = std::uint64_t{a.index} + b.index;
    if (s >= m[0]) s -= m[0];
    return Elem{static_cast<std::uint32_t>(s)};
  }
  std::uint64_t out = 0;
  std::uint64_t x = a.index, y = b.index;
  std::uint64_t place = 1;
  for (std::size_t i = m.size(); i-- > 0;) {
    std::uint64_t n = m[i];
    std::uint64_t d = x % n + y % n;
    if (d >= n) d -= n;
    out += d * place;
    place *= n;
    x /= n;
    y /= n;
  }
  return Elem{static_cast<std::uint32_t>(out)};
}

Elem GroupSpec::neg(Elem a) const noexcept {
  const auto& m = impl_->moduli;
  if (m.size() == 1) return Elem{a.index == 0 ? 0 : m[0] - a.index};
  std::uint64_t out = 0;
  std::uint64_t x = a.index;
  std::uint64_t place = 1;
  for (std::size_t i = m.size(); i-- > 0;) {
    std::uint64_t n = m[i];
    std::uint64_t d = x % n;
    out += (d == 0 ? 0 : n - d) * place;
    place *= n;
    x /= n;
  }
  return Elem{static_cast<std::uint32_t>(out)};
}

Elem GroupSpec::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem GroupSpec::times(Elem a, std::int64_t k) const noexcept {
  const auto& m = impl_->moduli;
  std::uint64_t out = 0;
  std::uint64_t x = a.index;
  std::uint64_t place = 1;
  for (std::size_t i = m.size(); i-- > 0;) {
    std::int64_t n = m[i];
    std::int64_t d = static_cast<std::int64_t>(x % m[i]);
    std::int64_t kk = reduce(k, n);
    auto prod = static_cast<std::int64_t>((static_cast<unsigned __int128>(d) * kk) % n);
    out += static_cast<std::uint64_t>(prod) * place;
    place *= m[i];
    x /= m[i];
  }
  return Elem{static_cast<std::uint32_t>(out)};
}

Elem GroupSpec::from_residues(std::span<const std::int64_t> residues) const {
  require(valid(), ErrorCode::kInvalidGroup, "element of an unset group");
  require(residues.size() == rank(), ErrorCode::kInvalidElement,
          "element has " + std::to_string(residues.size()) + " residues, group rank is " +
              std::to_string(rank()));
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    idx = idx * impl_->moduli[i] +
          static_cast<std::uint64_t>(reduce(residues[i], impl_->moduli[i]));
  }
  return Elem{static_cast<std::uint32_t>(idx)};
}

Elem GroupSpec::from_index(std::uint64_t index) const {
  require(index < order(), ErrorCode::kInvalidElement, "element index out of range");
  return Elem{static_cast<std::uint32_t>(index)};
}

std::vector<std::int64_t> GroupSpec::residues(Elem e) const {
  std::vector<std::int64_t> out(rank());
  for (std::size_t i = 0; i < rank(); ++i) out[i] = residue(e, i);
  return out;
}

std::uint64_t GroupSpec::element_order(Elem e) const noexcept {
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    std::uint64_t n = impl_->moduli[i];
    ord = std::lcm(ord, n / std::gcd(n, std::uint64_t{residue(e, i)}));
  }
  return ord;
}

std::string GroupSpec::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (i) os << " x ";
    os << "Z/" << impl_->moduli[i] << "Z";
  }
  return os.str();
}

std::string GroupSpec::format(Elem e) const {
  if (rank() == 1) return std::to_string(e.index);
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < rank(); ++i) {
    if (i) os << ',';
    os << residue(e, i);
  }
  os << ')';
  return os.str();
}

bool operator==(const GroupSpec& a, const GroupSpec& b) noexcept {
  if (a.impl_ == b.impl_) return true;
  if (!a.impl_ || !b.impl_) return false;
  return a.impl_->moduli == b.impl_->moduli;
}

void require_same_group(const GroupSpec& a, const GroupSpec& b, const char* where) {
  require(a == b, ErrorCode::kGroupMismatch,
          std::string(where) + ": operands live in different groups (" + a.describe() +
              " vs " + b.describe() + ")");
}

// --- GSet -------------------------------------------------------------------

GSet::GSet(GroupSpec group, std::vector<Elem> elems)
    : group_(std::move(group)), elems_(std::move(elems)) {
  for (Elem e : elems_) {
    require(group_.contains(e), ErrorCode::kInvalidElement, "element outside the group");
  }
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

GSet GSet::of(const GroupSpec& group, std::span<const std::int64_t> values) {
  require(group.is_cyclic(), ErrorCode::kInvalidElement,
          "integer shorthand needs a cyclic group");
  std::vector<Elem> elems;
  elems.reserve(values.size());
  for (std::int64_t v : values) elems.push_back(group.from_residues({v}));
  return GSet(group, std::move(elems));
}

GSet GSet::of(const GroupSpec& group, std::initializer_list<std::int64_t> values) {
  return of(group, std::span<const std::int64_t>(values.begin(), values.size()));
}

GSet GSet::from_residues(const GroupSpec& group,
                         const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<Elem> elems;
  elems.reserve(rows.size());
  for (const auto& r : rows) elems.push_back(group.from_residues(r));
  return GSet(group, std::move(elems));
}

GSet GSet::whole(const GroupSpec& group) {
  std::vector<Elem> elems(group.order());
  for (std::uint64_t i = 0; i < group.order(); ++i) elems[i] = Elem{static_cast<std::uint32_t>(i)};
  return GSet(group, std::move(elems));
}

bool GSet::contains(Elem e) const noexcept {
  return std::binary_search(elems_.begin(), elems_.end(), e);
}

std::optional<std::size_t> GSet::position(Elem e) const noexcept {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
  if (it == elems_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - elems_.begin());
}

bool GSet::is_subset_of(const GSet& other) const {
  require_same_group(group_, other.group_, "is_subset_of");
  return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

std::string GSet::format() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) out += ", ";
    out += group_.format(elems_[i]);
  }
  return out + "}";
}

// --- GMultiset --------------------------------------------------------------

GMultiset::GMultiset(GroupSpec group, std::vector<Entry> entries) : group_(std::move(group)) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.elem < b.elem; });
  for (const Entry& e : entries) {
    require(group_.contains(e.elem), ErrorCode::kInvalidElement, "element outside the group");
    require(e.count >= 1, ErrorCode::kInvalidElement, "multiplicity must be positive");
    if (!entries_.empty() && entries_.back().elem == e.elem) {
      entries_.back().count += e.count;
    } else {
      entries_.push_back(e);
    }
    total_ += e.count;
  }
}

GMultiset GMultiset::from_set(const GSet& set) {
  std::vector<Entry> entries;
  entries.reserve(set.size());
  for (Elem e : set) entries.push_back({e, 1});
  return GMultiset(set.group(), std::move(entries));
}

GMultiset GMultiset::of(const GroupSpec& group, std::initializer_list<std::int64_t> values) {
  require(group.is_cyclic(), ErrorCode::kInvalidElement,
          "integer shorthand needs a cyclic group");
  std::vector<Entry> entries;
  for (std::int64_t v : values) entries.push_back({group.from_residues({v}), 1});
  return GMultiset(group, std::move(entries));
}

std::uint32_t GMultiset::multiplicity(Elem e) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), e,
                             [](const Entry& a, Elem b) { return a.elem < b; });
  return (it != entries_.end() && it->elem == e) ? it->count : 0;
}

GSet GMultiset::support() const {
  std::vector<Elem> elems;
  elems.reserve(entries_.size());
  for (const Entry& e : entries_) elems.push_back(e.elem);
  return GSet(group_, std::move(elems));
}

std::vector<Elem> GMultiset::slots() const {
  std::vector<Elem> out;
  out.reserve(total_);
  for (const Entry& e : entries_) out.insert(out.end(), e.count, e.elem);
  return out;
}

}  // namespace unisum
