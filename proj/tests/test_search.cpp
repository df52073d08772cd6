#include <gtest/gtest.h>

#include "oracle/naive.hpp"
#include "unisum/construct.hpp"
#include "unisum/search.hpp"
#include "unisum/sums.hpp"

using namespace unisum;

TEST(Search, SpecExamples) {
  auto m5 = m_exact(GroupSpec::cyclic(5));
  ASSERT_TRUE(m5);
  EXPECT_EQ(m5->value, 4u);
  EXPECT_EQ(m5->witness, GSet::of(GroupSpec::cyclic(5), {0, 1, 2, 3}));

  auto b5 = b_exact(GroupSpec::cyclic(5));
  ASSERT_TRUE(b5);
  EXPECT_EQ(b5->value, 4u);

  auto b3 = b_exact(GroupSpec::cyclic(3));
  ASSERT_TRUE(b3);
  EXPECT_EQ(b3->value, 3u);
  EXPECT_EQ(b3->witness, GSet::whole(GroupSpec::cyclic(3)));

  // Z/2: {0,1} has the unique sum 1, so nothing qualifies
  EXPECT_FALSE(m_exact(GroupSpec::cyclic(2)));
  EXPECT_FALSE(b_exact(GroupSpec::cyclic(2)));
}

TEST(Search, SmallPrimeTable) {
  // b(p), m(p) for p = 3..13, each confirmed below by plain enumeration
  const std::vector<std::tuple<int, int, int>> table{{3, 3, 3}, {5, 4, 4}, {7, 5, 5}, {11, 5, 7}, {13, 6, 7}};
  for (auto [p, b, m] : table) {
    auto g = GroupSpec::cyclic(p);
    auto og = oracle::from(g);
    EXPECT_EQ(oracle::min_balanced_size(og, p), b) << p;
    EXPECT_EQ(oracle::min_no_unique_sum_size(og, p), m) << p;
    auto bc = b_exact(g);
    auto mc = m_exact(g);
    ASSERT_TRUE(bc && mc);
    EXPECT_EQ(bc->value, static_cast<std::uint64_t>(b)) << p;
    EXPECT_EQ(mc->value, static_cast<std::uint64_t>(m)) << p;
    EXPECT_GE(mc->value, bc->value);
    EXPECT_GE(std::uint64_t{1} << (bc->value - 1), static_cast<std::uint64_t>(p));
  }
}

TEST(Search, AgreesWithOracleOnOtherGroups) {
  for (auto g : {make_group({4}), make_group({6}), make_group({8}), make_group({9}), make_group({2, 2}),
                 make_group({3, 3}), make_group({2, 4}), make_group({15}), make_group({2, 6})}) {
    auto og = oracle::from(g);
    const int n = static_cast<int>(g.order());
    SearchOptions opt;
    opt.max_size = n;
    auto mc = m_exact(g, opt);
    auto bc = b_exact(g, opt);
    auto mo = oracle::min_no_unique_sum_size(og, n);
    auto bo = oracle::min_balanced_size(og, n);
    EXPECT_EQ(mc.has_value(), mo.has_value()) << g.describe();
    EXPECT_EQ(bc.has_value(), bo.has_value()) << g.describe();
    if (mc && mo) {
      EXPECT_EQ(mc->value, static_cast<std::uint64_t>(*mo)) << g.describe();
    }
    if (bc && bo) {
      EXPECT_EQ(bc->value, static_cast<std::uint64_t>(*bo)) << g.describe();
    }
  }
}

TEST(Search, MOfProductAtMostMOfFactor) {
  SearchOptions opt;
  opt.max_size = 15;
  auto m15 = m_exact(make_group({15}), opt);
  auto m3 = m_exact(GroupSpec::cyclic(3));
  auto m5 = m_exact(GroupSpec::cyclic(5));
  ASSERT_TRUE(m15 && m3 && m5);
  EXPECT_LE(m15->value, std::min(m3->value, m5->value));
  auto m33 = m_exact(make_group({3, 3}), opt);
  ASSERT_TRUE(m33);
  EXPECT_LE(m33->value, m3->value);
}

TEST(Search, FloorHolds) {
  // nothing of size below the floor qualifies, by enumeration
  for (int p : {3, 5, 7, 11, 13, 17}) {
    auto g = GroupSpec::cyclic(p);
    auto og = oracle::from(g);
    const int floor = static_cast<int>(search_floor(g, CertKind::kBValue));
    auto b = oracle::min_balanced_size(og, floor - 1);
    auto m = oracle::min_no_unique_sum_size(og, floor - 1);
    EXPECT_FALSE(b) << p;
    EXPECT_FALSE(m) << p;
  }
  EXPECT_EQ(search_floor(make_group({2, 2}), CertKind::kMValue), 2u);
  EXPECT_EQ(search_floor(make_group({3, 3}), CertKind::kBValue), 3u);
}

TEST(Search, CanonicalForm) {
  auto g = GroupSpec::cyclic(7);
  auto c = canonical_form(GSet::of(g, {3, 5, 6}));
  EXPECT_EQ(c.front(), Elem{0});
  EXPECT_EQ(c[1], Elem{1});
  EXPECT_EQ(canonical_form(c), c);
  // translation and dilation both land on the same representative
  EXPECT_EQ(canonical_form(dilate(translate(GSet::of(g, {3, 5, 6}), Elem{4}), 3)), c);
}

TEST(Search, DeterministicAcrossThreadsAndOrder) {
  for (auto g : {GroupSpec::cyclic(13), make_group({3, 5}), make_group({3, 3})}) {
    SearchOptions one;
    one.max_size = 10;
    SearchOptions many = one;
    many.threads = 6;
    many.reverse_blocks = true;
    auto a = m_exact(g, one);
    auto b = m_exact(g, many);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(canonical_text(*a), canonical_text(*b));
    EXPECT_EQ(a->checksum, b->checksum);
  }
}

TEST(Search, CertificateVerifies) {
  auto c = b_exact(GroupSpec::cyclic(11));
  ASSERT_TRUE(c);
  auto check = verify_certificate(*c, true, 3);
  EXPECT_TRUE(check.ok());
  ASSERT_TRUE(check.rerun_ok.has_value());

  Certificate bad = *c;
  bad.value += 1;
  EXPECT_FALSE(verify_certificate(bad).checksum_ok);
  seal(bad);
  EXPECT_TRUE(verify_certificate(bad).checksum_ok);
  EXPECT_FALSE(verify_certificate(bad).witness_ok);
}

TEST(Search, DimCertificate) {
  auto g = GroupSpec::cyclic(5);
  auto c = dim_certificate(GSet::of(g, {0, 1, 2, 3}));
  EXPECT_EQ(c.value, 2u);
  EXPECT_TRUE(verify_certificate(c, true).ok());
}

TEST(Search, CapCarriesLowerBound) {
  SearchOptions opt;
  opt.cap = 1000;
  opt.max_size = 30;
  try {
    b_exact(GroupSpec::cyclic(8191), opt);
    FAIL() << "expected SearchLimit";
  } catch (const SearchLimit& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeLimit);
    EXPECT_EQ(e.lower_bound(), 14u);
  }
}

TEST(Dashboard, Rows) {
  DashboardOptions opt;
  opt.cap = 5'000'000;
  auto rows = bounds_dashboard({2, 3, 5, 7, 11, 13, 8191}, opt);
  ASSERT_EQ(rows.size(), 7u);
  for (const auto& r : rows) EXPECT_TRUE(r.ok()) << r.p;
  EXPECT_TRUE(rows[0].b_exhausted);
  EXPECT_FALSE(rows[0].b);
  EXPECT_EQ(rows[2].b, 4u);
  EXPECT_EQ(rows[2].m, 4u);
  EXPECT_EQ(rows[1].b, 3u);
  const auto& big = rows[6];
  EXPECT_FALSE(big.b_exhausted);
  EXPECT_FALSE(big.m_exhausted);
  ASSERT_TRUE(big.construction);
  EXPECT_EQ(big.balanced_source, 27u);
  EXPECT_LE(*big.construction, 378u);
}
