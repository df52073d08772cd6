#include <gtest/gtest.h>

#include "unisum/construct.hpp"
#include "unisum/io.hpp"
#include "unisum/search.hpp"

using namespace unisum;

namespace {

std::string parse_message(const std::string& text) {
  try {
    parse_set(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    return e.what();
  }
  ADD_FAILURE() << "no error for " << text;
  return {};
}

}  // namespace

TEST(SetFile, RoundTripSorted) {
  auto s = parse_set(R"({"group": [3, 5], "elements": [[2, 1], [0, 0], [1, 4]]})");
  EXPECT_EQ(s.size(), 3u);
  auto j = set_to_json(s);
  EXPECT_EQ(j["elements"], Json::parse("[[0,0],[1,4],[2,1]]"));
  EXPECT_EQ(j["schema"], kSchema);
  EXPECT_EQ(parse_set(dump(j)), s);
  EXPECT_EQ(dump(j), dump(set_to_json(parse_set(dump(j)))));
}

TEST(SetFile, CyclicShorthand) {
  auto s = parse_set(R"({"group": [5], "elements": [3, [1], 0]})");
  EXPECT_EQ(s, GSet::of(GroupSpec::cyclic(5), {0, 1, 3}));
}

TEST(SetFile, Errors) {
  EXPECT_NE(parse_message(R"({"group": [1], "elements": []})").find("group[0]"), std::string::npos);
  EXPECT_NE(parse_message("{\"group\": [5],\n \"elements\": [1, 2,, 3]}").find("line 2"), std::string::npos);
  EXPECT_NE(parse_message(R"({"group": [5], "elements": [1, 7]})").find("elements[1]"), std::string::npos);
  EXPECT_NE(parse_message(R"({"group": [3, 3], "elements": [[1, 2], [1]]})").find("elements[1]"), std::string::npos);
  EXPECT_NE(parse_message(R"({"group": [3, 3], "elements": [[1, "a"]]})").find("elements[0][1]"), std::string::npos);
  EXPECT_NE(parse_message(R"({"group": [5], "elements": [1, 2, 1]})").find("elements[2]"), std::string::npos);
  EXPECT_NE(parse_message(R"({"elements": [1]})").find("group"), std::string::npos);
  EXPECT_NE(parse_message(R"({"group": [5]})").find("elements"), std::string::npos);
  EXPECT_NE(parse_message(R"({"schema": "other", "group": [5], "elements": []})").find("schema"), std::string::npos);
  EXPECT_NE(parse_message(R"({"group": [65536, 65536], "elements": []})").find("group"), std::string::npos);
  EXPECT_NE(parse_message("[1, 2]").find("<root>"), std::string::npos);
}

TEST(MultisetFile, RoundTrip) {
  auto z = parse_multiset(R"({"group": [5], "elements": [1, 2], "counts": [2, 1]})");
  EXPECT_EQ(z.total(), 3u);
  EXPECT_EQ(z.multiplicity(Elem{1}), 2u);
  EXPECT_EQ(parse_multiset(dump(multiset_to_json(z))), z);
  EXPECT_EQ(parse_multiset(R"({"group": [5], "elements": [1, 2]})").total(), 2u);
  EXPECT_THROW(parse_multiset(R"({"group": [5], "elements": [1], "counts": [0]})"), Error);
  EXPECT_THROW(parse_multiset(R"({"group": [5], "elements": [1], "counts": [1, 1]})"), Error);
}

TEST(CertificateFile, RoundTripAndTamper) {
  auto c = m_exact(GroupSpec::cyclic(5));
  ASSERT_TRUE(c);
  const std::string text = dump(certificate_to_json(*c));
  auto back = certificate_from_json(parse_json(text));
  EXPECT_EQ(back.value, 4u);
  EXPECT_EQ(back.checksum, c->checksum);
  EXPECT_EQ(canonical_text(back), canonical_text(*c));
  EXPECT_TRUE(verify_certificate(back, true).ok());
  EXPECT_EQ(dump(certificate_to_json(back)), text);

  auto j = parse_json(text);
  j["value"] = 3;
  EXPECT_FALSE(verify_certificate(certificate_from_json(j)).checksum_ok);
  j["kind"] = "x-value";
  EXPECT_THROW(certificate_from_json(j), Error);
}

TEST(CertificateFile, DimRoundTrip) {
  auto c = dim_certificate(GSet::of(GroupSpec::cyclic(5), {0, 1, 2, 3}));
  auto back = certificate_from_json(parse_json(dump(certificate_to_json(c))));
  EXPECT_EQ(back.source, c.source);
  EXPECT_EQ(back.value, 2u);
  EXPECT_TRUE(verify_certificate(back).checksum_ok);
}

TEST(TraceFile, Fields) {
  auto tr = increment_iterate(GSet::of(GroupSpec::cyclic(5), {0, 1, 2, 3}));
  auto j = trace_to_json(tr);
  ASSERT_EQ(j["steps"].size(), 1u);
  EXPECT_EQ(j["steps"][0]["case"], "precondition-failed");
  EXPECT_EQ(j["steps"][0]["i"], 0);
  EXPECT_EQ(dump(j), dump(trace_to_json(increment_iterate(GSet::of(GroupSpec::cyclic(5), {0, 1, 2, 3})))));
}

TEST(HGraphFile, Weights) {
  auto h = build_H(balanced_multiplicative(7));
  auto j = hgraph_to_json(h);
  ASSERT_EQ(j["vertices"].size(), 7u);
  for (const auto& v : j["vertices"]) {
    if (!v["s"].is_null()) {
      EXPECT_EQ(v["w"], "1/2^" + std::to_string(v["s"].get<int>()));
    }
  }
}
