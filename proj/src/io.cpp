#include "unisum/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "unisum/error.hpp"

namespace unisum {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  fail(ErrorCode::kParse, "field " + field + ": " + what);
}

std::int64_t int_at(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "expected an integer");
  return j.get<std::int64_t>();
}

const Json& member(const Json& j, const char* key, const std::string& where = "") {
  if (!j.is_object()) field_error(where.empty() ? "<root>" : where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

void check_schema(const Json& j) {
  auto it = j.find("schema");
  if (it != j.end() && (!it->is_string() || it->get<std::string>() != kSchema))
    field_error("schema", std::string("expected \"") + kSchema + "\"");
}

Elem elem_from_json(const GroupSpec& g, const Json& j, const std::string& field) {
  const auto mod = g.moduli();
  std::vector<std::int64_t> r;
  if (j.is_number_integer() && mod.size() == 1) {
    r.push_back(j.get<std::int64_t>());
  } else {
    if (!j.is_array()) field_error(field, "expected an array of residues");
    if (j.size() != mod.size())
      field_error(field, "expected " + std::to_string(mod.size()) + " residues, got " + std::to_string(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) r.push_back(int_at(j[i], field + "[" + std::to_string(i) + "]"));
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < 0 || r[i] >= mod[i]) {
      const std::string f = mod.size() == 1 && !j.is_array() ? field : field + "[" + std::to_string(i) + "]";
      field_error(f, std::to_string(r[i]) + " is outside [0, " + std::to_string(mod[i]) + ")");
    }
  }
  return g.from_residues(r);
}

std::vector<Elem> elems_from_json(const GroupSpec& g, const Json& j, const char* key) {
  if (!j.is_array()) field_error(key, "expected an array");
  std::vector<Elem> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(elem_from_json(g, j[i], std::string(key) + "[" + std::to_string(i) + "]"));
  return v;
}

Json checks_to_json(const std::vector<LemmaCheck>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return out;
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json group_to_json(const GroupSpec& g) {
  Json a = Json::array();
  for (auto n : g.moduli()) a.push_back(n);
  return a;
}

Json elem_to_json(const GroupSpec& g, Elem e) { return g.residues(e); }

Json set_to_json(const GSet& s) {
  Json j;
  j["schema"] = kSchema;
  j["group"] = group_to_json(s.group());
  Json e = Json::array();
  for (Elem x : s) e.push_back(elem_to_json(s.group(), x));
  j["elements"] = std::move(e);
  return j;
}

Json multiset_to_json(const GMultiset& z) {
  Json j;
  j["schema"] = kSchema;
  j["group"] = group_to_json(z.group());
  Json e = Json::array(), c = Json::array();
  for (const auto& entry : z.entries()) {
    e.push_back(elem_to_json(z.group(), entry.elem));
    c.push_back(entry.count);
  }
  j["elements"] = std::move(e);
  j["counts"] = std::move(c);
  return j;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // byte offset -> line and column
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    fail(ErrorCode::kParse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
}

GroupSpec group_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) field_error(field, "expected a non-empty array of moduli");
  std::vector<std::int64_t> m;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const auto n = int_at(j[i], f);
    if (n < 2) field_error(f, "modulus " + std::to_string(n) + " is below 2");
    m.push_back(n);
  }
  try {
    return make_group(m);
  } catch (const Error& e) {
    field_error(field, e.what());
  }
}

GSet set_from_json(const Json& j) {
  if (!j.is_object()) field_error("<root>", "expected an object");
  check_schema(j);
  const GroupSpec g = group_from_json(member(j, "group"));
  auto v = elems_from_json(g, member(j, "elements"), "elements");
  std::vector<Elem> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) {
      const auto first = std::find(v.begin(), v.end(), sorted[i]);
      const auto second = std::find(first + 1, v.end(), sorted[i]);
      field_error("elements[" + std::to_string(second - v.begin()) + "]", "repeats an earlier element");
    }
  }
  return GSet(g, std::move(v));
}

GMultiset multiset_from_json(const Json& j) {
  if (!j.is_object()) field_error("<root>", "expected an object");
  check_schema(j);
  const GroupSpec g = group_from_json(member(j, "group"));
  auto v = elems_from_json(g, member(j, "elements"), "elements");
  std::vector<GMultiset::Entry> entries;
  auto it = j.find("counts");
  if (it != j.end()) {
    if (!it->is_array() || it->size() != v.size()) field_error("counts", "expected one count per element");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::int64_t c = 1;
    if (it != j.end()) {
      const std::string f = "counts[" + std::to_string(i) + "]";
      c = int_at((*it)[i], f);
      if (c < 1 || c > 0xFFFFFFFFLL) field_error(f, "multiplicity must be positive");
    }
    entries.push_back({v[i], static_cast<std::uint32_t>(c)});
  }
  return GMultiset(g, std::move(entries));
}

GSet parse_set(std::string_view text) { return set_from_json(parse_json(text)); }
GMultiset parse_multiset(std::string_view text) { return multiset_from_json(parse_json(text)); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kParse, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

GSet read_set_file(const std::string& path) {
  try {
    return parse_set(read_text_file(path));
  } catch (const Error& e) {
    fail(e.code(), path + ": " + e.what());
  }
}

GMultiset read_multiset_file(const std::string& path) {
  try {
    return parse_multiset(read_text_file(path));
  } catch (const Error& e) {
    fail(e.code(), path + ": " + e.what());
  }
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = to_string(c.kind);
  j["group"] = group_to_json(c.group);
  j["value"] = c.value;
  Json w = Json::array();
  for (Elem x : c.witness) w.push_back(elem_to_json(c.group, x));
  j["witness"] = std::move(w);
  j["space"] = {{"first_size", c.space.first_size},
                {"symmetries", c.space.symmetries},
                {"candidates", c.space.candidates},
                {"orbits", c.space.orbits}};
  if (c.kind == CertKind::kDimValue) {
    Json s = Json::array();
    for (Elem x : c.source) s.push_back(elem_to_json(c.group, x));
    j["source"] = std::move(s);
  }
  j["checksum"] = c.checksum;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  if (!j.is_object()) field_error("<root>", "expected an object");
  check_schema(j);
  Certificate c;
  const Json& kind = member(j, "kind");
  if (!kind.is_string()) field_error("kind", "expected a string");
  auto k = cert_kind_from_string(kind.get<std::string>());
  if (!k) field_error("kind", "unknown kind " + kind.get<std::string>());
  c.kind = *k;
  c.group = group_from_json(member(j, "group"));
  const auto v = int_at(member(j, "value"), "value");
  if (v < 0) field_error("value", "negative");
  c.value = static_cast<std::uint64_t>(v);
  c.witness = GSet(c.group, elems_from_json(c.group, member(j, "witness"), "witness"));
  const Json& sp = member(j, "space");
  auto u64s = [&](const char* key) {
    const Json& a = member(sp, key, "space");
    if (!a.is_array()) field_error(std::string("space.") + key, "expected an array");
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string f = std::string("space.") + key + "[" + std::to_string(i) + "]";
      if (!a[i].is_number_unsigned()) field_error(f, "expected a non-negative integer");
      out.push_back(a[i].get<std::uint64_t>());
    }
    return out;
  };
  const auto fs = int_at(member(sp, "first_size", "space"), "space.first_size");
  if (fs < 0) field_error("space.first_size", "negative");
  c.space.first_size = static_cast<std::size_t>(fs);
  const Json& sym = member(sp, "symmetries", "space");
  if (!sym.is_array()) field_error("space.symmetries", "expected an array");
  for (std::size_t i = 0; i < sym.size(); ++i) {
    if (!sym[i].is_string()) field_error("space.symmetries[" + std::to_string(i) + "]", "expected a string");
    c.space.symmetries.push_back(sym[i].get<std::string>());
  }
  c.space.candidates = u64s("candidates");
  c.space.orbits = u64s("orbits");
  if (c.kind == CertKind::kDimValue) c.source = GSet(c.group, elems_from_json(c.group, member(j, "source"), "source"));
  const Json& cs = member(j, "checksum");
  if (!cs.is_string()) field_error("checksum", "expected a string");
  c.checksum = cs.get<std::string>();
  return c;
}

Json outcome_to_json(const IncrementOutcome& o) {
  const GroupSpec& g = o.state.a.group();
  Json j;
  j["case"] = to_string(o.tag);
  Json sp = Json::array();
  for (Elem x : o.s_prime) sp.push_back(elem_to_json(o.s_prime.group(), x));
  j["s_prime"] = std::move(sp);
  j["gain"] = o.gain;
  j["gain_required"] = o.gain_required;
  j["t"] = o.t ? elem_to_json(g, *o.t) : Json(nullptr);
  j["a_used"] = o.a_used ? elem_to_json(g, *o.a_used) : Json(nullptr);
  j["failed"] = o.failed;
  j["checks"] = checks_to_json(o.checks);
  j["coverage"] = o.state.coverage;
  j["bad_singles"] = o.state.b1.size();
  j["bad_pairs"] = o.state.pairs.bad.size();
  j["good_pairs"] = o.state.pairs.good.size();
  j["script_n"] = o.state.script_n.size();
  j["script_n_third"] = o.state.script_n_third.size();
  return j;
}

Json trace_to_json(const IncrementTrace& t) {
  Json j;
  j["schema"] = kSchema;
  j["group"] = group_to_json(t.a.group());
  j["a_size"] = t.a.size();
  j["d_size"] = t.d.size();
  j["d_exact"] = t.d_exact;
  Json d = Json::array();
  for (Elem x : t.d) d.push_back(elem_to_json(t.d.group(), x));
  j["d"] = std::move(d);
  Json steps = Json::array();
  for (const auto& r : t.steps) {
    steps.push_back({{"i", r.i},
                     {"s_size", r.s_size},
                     {"coverage", r.coverage},
                     {"case", to_string(r.tag)},
                     {"gain", r.gain},
                     {"coverage_ok", r.coverage_ok},
                     {"size_ok", r.size_ok},
                     {"failed", r.failed},
                     {"checks", checks_to_json(r.checks)}});
  }
  j["steps"] = std::move(steps);
  j["exit_reason"] = t.exit_reason;
  j["ok"] = t.ok();
  return j;
}

Json hgraph_to_json(const HGraph& h) {
  const GroupSpec& g = h.vertices.group();
  Json j;
  j["schema"] = kSchema;
  j["group"] = group_to_json(g);
  j["anchor"] = elem_to_json(g, h.anchor);
  Json core = Json::array();
  for (Elem x : h.preferred_core) core.push_back(elem_to_json(g, x));
  j["core"] = std::move(core);
  Json vs = Json::array();
  for (std::size_t i = 0; i < h.vertices.size(); ++i) {
    Json v;
    v["b"] = elem_to_json(g, h.vertices[i]);
    v["b1"] = elem_to_json(g, h.edges[i].first);
    v["b2"] = elem_to_json(g, h.edges[i].second);
    if (h.dist[i]) {
      v["s"] = *h.dist[i];
      v["w"] = "1/2^" + std::to_string(*h.dist[i]);
    } else {
      v["s"] = nullptr;
      v["w"] = nullptr;
    }
    vs.push_back(std::move(v));
  }
  j["vertices"] = std::move(vs);
  return j;
}

}  // namespace unisum
