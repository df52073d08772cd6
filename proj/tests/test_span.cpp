#include <gtest/gtest.h>

#include <random>

#include "oracle/naive.hpp"
#include "unisum/error.hpp"
#include "unisum/span.hpp"

using namespace unisum;

namespace {

GMultiset random_multiset(const GroupSpec& g, std::mt19937_64& rng, std::size_t max_support) {
  std::vector<GMultiset::Entry> entries;
  const std::size_t n = 1 + rng() % max_support;
  for (std::size_t i = 0; i < n; ++i) {
    entries.push_back({Elem{static_cast<std::uint32_t>(rng() % g.order())},
                       static_cast<std::uint32_t>(1 + rng() % 3)});
  }
  return GMultiset(g, entries);
}

oracle::Pts expand(const GMultiset& z) {
  oracle::Pts out;
  for (Elem e : z.slots()) out.push_back(z.group().residues(e));
  return out;
}

}  // namespace

TEST(SigmaSpan, Examples) {
  auto g = GroupSpec::cyclic(5);
  EXPECT_EQ(sigma_span(GSet::of(g, {1, 2})), GSet::of(g, {0, 1, 2, 3}));
  EXPECT_EQ(sigma_span(GMultiset::of(g, {1, 1})), GSet::of(g, {0, 1, 2}));
  // k copies of each generator of (Z/(k+1))^d fill the box
  for (std::int64_t k : {1, 2, 3}) {
    auto h = make_group({k + 1, k + 1, k + 1});
    GMultiset z(h, {{h.from_residues({1, 0, 0}), static_cast<std::uint32_t>(k)},
                    {h.from_residues({0, 1, 0}), static_cast<std::uint32_t>(k)},
                    {h.from_residues({0, 0, 1}), static_cast<std::uint32_t>(k)}});
    EXPECT_EQ(sigma_span(z).size(), static_cast<std::size_t>((k + 1) * (k + 1) * (k + 1)));
  }
}

TEST(SigmaSpan, CapsAndOracle) {
  SpanCaps caps;
  caps.span_terms = 3;
  caps.span_order = 4;
  EXPECT_THROW(sigma_span(GSet::of(GroupSpec::cyclic(11), {1, 2, 3, 4}), caps), Error);
  std::mt19937_64 rng(41);
  for (auto g : {make_group({11}), make_group({2, 6}), make_group({3, 3, 3})}) {
    for (int rep = 0; rep < 15; ++rep) {
      auto z = random_multiset(g, rng, 5);
      EXPECT_EQ(sigma_span(z), oracle::to_set(g, oracle::span(oracle::from(g), expand(z))));
    }
  }
}

TEST(Dissociated, Examples) {
  EXPECT_TRUE(is_dissociated(GSet::of(GroupSpec::cyclic(5), {1, 2})));
  EXPECT_FALSE(is_dissociated(GSet::of(GroupSpec::cyclic(7), {1, 2, 3})));
  EXPECT_FALSE(is_dissociated(GSet::of(GroupSpec::cyclic(5), {2, 3})));
  EXPECT_FALSE(is_dissociated(GSet::of(GroupSpec::cyclic(5), {0})));
  EXPECT_TRUE(is_dissociated(GSet::of(GroupSpec::cyclic(1024), {1, 2, 4, 8, 16, 32, 64, 128, 256})));
  SpanCaps caps;
  caps.dissociated = 2;
  EXPECT_THROW(is_dissociated(GSet::of(GroupSpec::cyclic(7), {1, 2, 3}), caps), Error);
}

TEST(Dissociated, AgreesWithOracle) {
  std::mt19937_64 rng(43);
  for (auto g : {make_group({31}), make_group({2, 2, 2, 2}), make_group({4, 9}), make_group({64})}) {
    for (int rep = 0; rep < 60; ++rep) {
      std::vector<Elem> v;
      const int n = 1 + rng() % 6;
      for (int i = 0; i < n; ++i) v.push_back(Elem{static_cast<std::uint32_t>(rng() % g.order())});
      GSet s(g, v);
      EXPECT_EQ(is_dissociated(s), oracle::dissociated(oracle::from(g), oracle::points(s)))
          << s.format();
    }
  }
}

TEST(Dimension, Examples) {
  auto d5 = additive_dimension(GSet::of(GroupSpec::cyclic(5), {1, 2, 3}));
  EXPECT_EQ(d5.dim, 2u);
  EXPECT_EQ(d5.witness, GSet::of(GroupSpec::cyclic(5), {1, 2}));
  EXPECT_EQ(additive_dimension(GSet::of(GroupSpec::cyclic(7), {1, 2, 3})).dim, 2u);
  EXPECT_EQ(additive_dimension(GSet::of(GroupSpec::cyclic(9), {4})).dim, 1u);
  // duplicates never co-occur
  auto h = make_group({4, 4});
  GMultiset z(h, {{h.from_residues({1, 0}), 3}, {h.from_residues({0, 1}), 3}});
  EXPECT_EQ(additive_dimension(z).dim, 2u);
}

TEST(Dimension, AgreesWithOracleAndIsLexLeast) {
  std::mt19937_64 rng(47);
  for (auto g : {make_group({31}), make_group({2, 2, 2}), make_group({3, 9}), make_group({101})}) {
    auto og = oracle::from(g);
    for (int rep = 0; rep < 30; ++rep) {
      auto z = random_multiset(g, rng, 8);
      auto w = additive_dimension(z);
      EXPECT_EQ(static_cast<std::int64_t>(w.dim), oracle::dimension(og, expand(z)));
      EXPECT_TRUE(w.witness.is_subset_of(z.support()));
      EXPECT_TRUE(w.dim == 0 || is_dissociated(w.witness));
      // Cube containment for a maximum dissociated subset
      EXPECT_TRUE(oracle::in_cube(og, oracle::points(w.witness), oracle::points(z.support())));
      for (Elem s : z.support()) EXPECT_TRUE(cube_coefficients(w.witness, s).has_value());
      auto greedy = greedy_dissociated(z.support());
      EXPECT_LE(greedy.dim, w.dim);
      EXPECT_FALSE(greedy.exact);
    }
  }
}

TEST(Representation, SpreadsCounts) {
  auto g = GroupSpec::cyclic(5);
  auto z = GMultiset::of(g, {1, 1, 1, 2});
  auto r = Representation::from_counts(z, {{Elem{1}, 5}, {Elem{2}, 1}}, Elem{2}, 6);
  EXPECT_EQ(r.coeffs, (std::vector<std::uint64_t>{2, 2, 1, 1}));
  EXPECT_TRUE(r.valid());
  EXPECT_EQ(r.by_element().at(Elem{1}), 5u);
  EXPECT_THROW(Representation::from_counts(z, {{Elem{3}, 1}}, Elem{3}, 1), Error);
}

TEST(SupportCompress, Examples) {
  auto g = GroupSpec::cyclic(7);
  auto z = GMultiset::of(g, {1, 2, 3});
  auto same = support_compress(Representation::from_counts(z, {{Elem{1}, 1}, {Elem{2}, 1}}, Elem{3}, 2));
  EXPECT_TRUE(same.steps.empty());
  EXPECT_EQ(same.rep.coeffs, (std::vector<std::uint64_t>{1, 1, 0}));

  auto one = support_compress(
      Representation::from_counts(z, {{Elem{1}, 1}, {Elem{2}, 1}, {Elem{3}, 1}}, Elem{6}, 3));
  ASSERT_EQ(one.steps.size(), 1u);
  EXPECT_EQ(one.rep.by_element(), (std::map<Elem, std::uint64_t>{{Elem{3}, 2}}));
  EXPECT_EQ(one.rep.coefficient_sum(), 2u);

  auto g5 = GroupSpec::cyclic(5);
  auto twice = GMultiset::of(g5, {1, 1});
  auto dup = support_compress(Representation::from_counts(twice, {{Elem{1}, 2}}, Elem{2}, 2));
  EXPECT_EQ(dup.rep.support_slots().size(), 1u);
  EXPECT_EQ(dup.rep.by_element().at(Elem{1}), 2u);

  Representation bad = Representation::from_counts(z, {{Elem{1}, 1}}, Elem{2}, 1);
  try {
    support_compress(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidRepresentation);
  }
}

TEST(SupportCompress, RandomInstancesEndDissociated) {
  std::mt19937_64 rng(53);
  for (auto g : {make_group({13}), make_group({2, 2, 3}), make_group({5, 5}), make_group({64})}) {
    for (int rep = 0; rep < 25; ++rep) {
      auto z = random_multiset(g, rng, 6);
      auto span = sigma_span(z);
      for (Elem y : span) {
        auto init = span_representation(z, y);
        ASSERT_TRUE(init.valid());
        auto out = support_compress(init);
        EXPECT_TRUE(out.rep.valid());
        EXPECT_LE(out.steps.size(), z.total());
        std::vector<Elem> supp;
        const auto slots = z.slots();
        for (auto i : out.rep.support_slots()) supp.push_back(slots[i]);
        GSet s(g, supp);
        EXPECT_EQ(s.size(), supp.size()) << "support repeats an element";
        EXPECT_TRUE(s.empty() || is_dissociated(s));
      }
    }
  }
}

TEST(SpanRepresentation, LexLeastAndErrors) {
  auto g = GroupSpec::cyclic(7);
  auto z = GMultiset::of(g, {1, 2, 3});
  auto r = span_representation(z, Elem{3});
  EXPECT_EQ(r.coeffs, (std::vector<std::uint64_t>{1, 1, 0}));  // {1,2} before {3}
  EXPECT_EQ(r.weight_budget, 2u);
  auto zero = span_representation(z, Elem{0});
  EXPECT_EQ(zero.coefficient_sum(), 0u);
  auto g11 = GroupSpec::cyclic(11);
  EXPECT_THROW(span_representation(GMultiset::of(g11, {1}), Elem{5}), Error);
}

TEST(SpanBounds, Examples) {
  auto g = GroupSpec::cyclic(5);
  auto r = span_bounds_report(GMultiset::of(g, {1, 2}));
  EXPECT_EQ(r.span_size, 4u);
  EXPECT_EQ(r.dim, 2u);
  EXPECT_EQ(r.binomial, 6);
  EXPECT_EQ(r.lower, 4);
  EXPECT_TRUE(r.all_ok());

  auto h = make_group({4, 4});
  GMultiset box(h, {{h.from_residues({1, 0}), 3}, {h.from_residues({0, 1}), 3}});
  auto rb = span_bounds_report(box);
  EXPECT_EQ(rb.span_size, 16u);
  EXPECT_EQ(rb.dim, 2u);
  EXPECT_EQ(rb.binomial, 420);
  EXPECT_TRUE(rb.all_ok());

  auto single = span_bounds_report(GMultiset::of(GroupSpec::cyclic(9), {4}));
  EXPECT_EQ(single.span_size, 2u);
  EXPECT_EQ(single.binomial, 2);
  EXPECT_TRUE(single.all_ok());
}

TEST(KRatio, Examples) {
  auto g5 = GroupSpec::cyclic(5);
  EXPECT_EQ(k_ratio(GMultiset::of(g5, {1, 2})).k, boost::rational<std::int64_t>(1));
  auto h = make_group({4, 4});
  GMultiset box(h, {{h.from_residues({1, 0}), 3}, {h.from_residues({0, 1}), 3}});
  auto kb = k_ratio(box);
  EXPECT_EQ(kb.k, boost::rational<std::int64_t>(3));
  EXPECT_TRUE(kb.inequality_ok);
  EXPECT_GE(kb.lhs + 1e-9, kb.rhs);
  auto k7 = k_ratio(GMultiset::of(GroupSpec::cyclic(7), {1, 2, 3}));
  EXPECT_EQ(k7.k, boost::rational<std::int64_t>(3, 2));
  EXPECT_THROW(k_ratio(GMultiset::of(g5, {0})), Error);
}

TEST(Monotonicity, SubmultisetSpanAndDimension) {
  std::mt19937_64 rng(59);
  auto g = make_group({3, 7});
  for (int rep = 0; rep < 40; ++rep) {
    auto z = random_multiset(g, rng, 7);
    std::vector<GMultiset::Entry> sub;
    for (const auto& e : z.entries()) {
      if (rng() & 1) sub.push_back({e.elem, 1 + static_cast<std::uint32_t>(rng() % e.count)});
    }
    if (sub.empty()) continue;
    GMultiset zs(g, sub);
    EXPECT_TRUE(sigma_span(zs).is_subset_of(sigma_span(z)));
    EXPECT_LE(additive_dimension(zs).dim, additive_dimension(z).dim);
  }
}
