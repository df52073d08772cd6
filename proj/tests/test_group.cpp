#include <gtest/gtest.h>

#include "unisum/error.hpp"
#include "unisum/group.hpp"

using namespace unisum;

TEST(MakeGroup, OrdersAndSmallestPrime) {
  auto g5 = make_group({5});
  EXPECT_EQ(g5.order(), 5u);
  EXPECT_EQ(g5.smallest_prime(), 5u);
  auto g35 = make_group({3, 5});
  EXPECT_EQ(g35.order(), 15u);
  EXPECT_EQ(g35.smallest_prime(), 3u);
  auto g46 = make_group({4, 6});
  EXPECT_EQ(g46.order(), 24u);
  EXPECT_EQ(g46.smallest_prime(), 2u);
  EXPECT_EQ(g46.exponent(), 12u);
}

TEST(MakeGroup, Rejects) {
  EXPECT_THROW(make_group({1}), Error);
  EXPECT_THROW(make_group({5, 0}), Error);
  EXPECT_THROW(make_group(std::span<const std::int64_t>{}), Error);
  EXPECT_THROW(make_group({65536, 65536}), Error);
  try {
    make_group({1});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidGroup);
  }
}

TEST(Arithmetic, MixedRadixMatchesResidues) {
  auto g = make_group({4, 6, 5});
  for (std::uint32_t i = 0; i < g.order(); ++i) {
    for (std::uint32_t j = 0; j < g.order(); j += 7) {
      Elem a{i}, b{j};
      auto ra = g.residues(a), rb = g.residues(b), rs = g.residues(g.add(a, b));
      for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(rs[k], (ra[k] + rb[k]) % g.moduli()[k]);
      }
      EXPECT_EQ(g.add(g.sub(a, b), b), a);
    }
    EXPECT_EQ(g.add(Elem{i}, g.neg(Elem{i})), g.zero());
    EXPECT_EQ(g.times(Elem{i}, -3), g.neg(g.add(Elem{i}, g.add(Elem{i}, Elem{i}))));
  }
}

TEST(Arithmetic, IndexOrderIsLexicographic) {
  auto g = make_group({3, 4});
  for (std::uint32_t i = 0; i + 1 < g.order(); ++i) {
    EXPECT_LT(g.residues(Elem{i}), g.residues(Elem{i + 1}));
  }
  EXPECT_EQ(g.from_residues({-1, 5}), g.from_residues({2, 1}));
  EXPECT_EQ(g.format(g.from_residues({2, 1})), "(2,1)");
  EXPECT_EQ(GroupSpec::cyclic(7).format(Elem{3}), "3");
}

TEST(Arithmetic, ElementOrder) {
  auto g = make_group({3, 7});
  EXPECT_EQ(g.element_order(g.from_residues({1, 1})), 21u);
  EXPECT_EQ(g.element_order(g.from_residues({1, 0})), 3u);
  EXPECT_EQ(g.element_order(g.zero()), 1u);
}

TEST(GSet, CanonicalForm) {
  auto g = GroupSpec::cyclic(5);
  auto s = GSet::of(g, {3, 8, 1, -4});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.format(), "{1, 3}");
  EXPECT_TRUE(s.contains(Elem{3}));
  EXPECT_FALSE(s.contains(Elem{2}));
  EXPECT_THROW(GSet(g, {Elem{5}}), Error);
}

TEST(GMultiset, MergesAndCounts) {
  auto g = GroupSpec::cyclic(5);
  GMultiset z(g, {{Elem{1}, 2}, {Elem{3}, 1}, {Elem{1}, 1}});
  EXPECT_EQ(z.total(), 4u);
  EXPECT_EQ(z.distinct(), 2u);
  EXPECT_EQ(z.multiplicity(Elem{1}), 3u);
  EXPECT_EQ(z.slots(), (std::vector<Elem>{Elem{1}, Elem{1}, Elem{1}, Elem{3}}));
  EXPECT_THROW(GMultiset(g, {{Elem{1}, 0}}), Error);
}

TEST(GSet, MismatchedGroups) {
  auto a = GSet::of(GroupSpec::cyclic(5), {1});
  auto b = GSet::of(GroupSpec::cyclic(7), {1});
  try {
    (void)a.is_subset_of(b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGroupMismatch);
  }
}
