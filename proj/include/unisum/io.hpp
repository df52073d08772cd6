#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "unisum/balanced.hpp"
#include "unisum/group.hpp"
#include "unisum/increment.hpp"
#include "unisum/search.hpp"

namespace unisum {

using Json = nlohmann::ordered_json;

// Bumped whenever a field changes meaning or disappears.
inline constexpr const char* kSchema = "unisum/1";

/// Two-space indented, trailing newline; the byte-stable form of every output.
std::string dump(const Json& j);

Json group_to_json(const GroupSpec& g);
Json elem_to_json(const GroupSpec& g, Elem e);
/// {"group": [...], "elements": [[...], ...]}, elements sorted.
Json set_to_json(const GSet& s);
Json multiset_to_json(const GMultiset& z);

/// Syntax errors name the line and column, schema errors the field
/// (e.g. "elements[2][1]"). Both throw Error(kParse).
Json parse_json(std::string_view text);
GroupSpec group_from_json(const Json& j, const std::string& field = "group");
GSet set_from_json(const Json& j);
/// "counts" is optional and defaults to one copy each.
GMultiset multiset_from_json(const Json& j);
GSet parse_set(std::string_view text);
GMultiset parse_multiset(std::string_view text);
GSet read_set_file(const std::string& path);
GMultiset read_multiset_file(const std::string& path);
std::string read_text_file(const std::string& path);

Json certificate_to_json(const Certificate& c);
/// Reads every field back; the checksum is kept as written, not recomputed.
Certificate certificate_from_json(const Json& j);

Json trace_to_json(const IncrementTrace& t);
Json outcome_to_json(const IncrementOutcome& o);

/// One record per vertex: b, b1, b2, s(b) and w(b) = "1/2^s".
Json hgraph_to_json(const HGraph& h);

}  // namespace unisum
