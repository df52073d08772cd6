// unisum: command-line front end. Every command builds a structured report
// first; --format human renders that same report as indented text.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "suite.hpp"
#include "unisum/balanced.hpp"
#include "unisum/construct.hpp"
#include "unisum/increment.hpp"
#include "unisum/io.hpp"
#include "unisum/search.hpp"
#include "unisum/span.hpp"
#include "unisum/sums.hpp"

using namespace unisum;

namespace {

enum Exit { kPass = 0, kFailure = 1, kUsage = 2, kCap = 3 };

struct RunConfig {
  unsigned threads = 1;
  std::string format = "json";
  std::uint64_t seed = 20240601;
  std::size_t cap_span = 30;
  std::size_t cap_dim = 24;
  std::uint64_t cap_search = 2'000'000'000;
  std::string out;  // set file destination, construct only

  SpanCaps span_caps() const {
    SpanCaps c;
    c.span_terms = cap_span;
    c.dimension = cap_dim;
    return c;
  }
};

// Threads are left out on purpose: output must not depend on them.
Json config_json(const RunConfig& rc) {
  return {{"seed", rc.seed}, {"caps", {{"span", rc.cap_span}, {"dim", rc.cap_dim}, {"search", rc.cap_search}}}};
}

void render(std::ostream& os, const Json& j, int depth) {
  const std::string pad(2 * depth, ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [](const Json& v) {
    for (const auto& x : v)
      if (x.is_object() || (x.is_array() && !x.empty() && x[0].is_array() && x[0][0].is_array())) return false;
    return true;
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    const std::string key = j.is_object() ? it.key() : "-";
    if (v.is_object()) {
      os << pad << key << ":\n";
      render(os, v, depth + 1);
    } else if (v.is_array() && !flat(v)) {
      os << pad << key << ":\n";
      render(os, v, depth + 1);
    } else {
      os << pad << key << (j.is_object() ? ": " : " ") << scalar(v) << '\n';
    }
  }
}

int emit(const RunConfig& rc, const std::string& command, Json result, int code) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["config"] = config_json(rc);
  j["result"] = std::move(result);
  if (rc.format == "human") {
    render(std::cout, j, 0);
  } else {
    std::cout << dump(j);
  }
  return code;
}

Json table_json(const SumTable& t) {
  const GroupSpec& g = t.source.group();
  Json rows = Json::array();
  for (std::size_t i = 0; i < t.ordered.size(); ++i) {
    const Elem e = t.ordered[i].first;
    rows.push_back({{"g", elem_to_json(g, e)}, {"ordered", t.ordered[i].second}, {"unordered", t.unordered_at(e)}});
  }
  return rows;
}

std::string big(const BigInt& x) { return x.str(); }

Json analyze(const RunConfig& rc, const std::string& path, bool& all_ok) {
  const Json doc = parse_json(read_text_file(path));
  const bool multi = doc.is_object() && doc.contains("counts");
  const GMultiset z = multi ? multiset_from_json(doc) : GMultiset::from_set(set_from_json(doc));
  const GSet a = z.support();
  const auto caps = rc.span_caps();
  Json r;
  r["input"] = multi ? multiset_to_json(z) : set_to_json(a);
  r["group"] = a.group().describe();
  r["size"] = a.size();
  const SumTable t = sum_table(a);
  r["r_table"] = table_json(t);
  Json us = Json::array();
  for (Elem e : unique_sums(a)) us.push_back(elem_to_json(a.group(), e));
  r["unique_sums"] = us;
  r["no_unique_sum"] = us.empty();
  const auto bal = is_balanced(a);
  r["balanced"] = bal.ok;
  r["not_a_midpoint"] = bal.failing ? elem_to_json(a.group(), *bal.failing) : Json(nullptr);
  all_ok = true;
  if (bal.ok) {
    const bool irr = is_irreducible(a);
    r["irreducible"] = irr;
    const auto bb = balanced_bounds(a, irr);
    r["balanced_bounds"] = {{"minspan", bb.minspan}, {"log2_p_plus_1", bb.cor_prime},
                            {"log2_minspan_plus_1", bb.cor_minspan}, {"combined", bb.cor_combined}};
    all_ok = all_ok && bb.all_ok();
  } else {
    r["irreducible"] = false;
  }
  const auto sb = span_bounds_report(z, caps);
  r["dim"] = sb.dim;
  r["span_size"] = sb.span_size;
  r["span_bounds"] = {{"total", sb.total},
                      {"two_to_dim", big(sb.lower)},
                      {"binomial_product", big(sb.binomial)},
                      {"corollary_numerator", big(sb.corollary_num)},
                      {"corollary_denominator", big(sb.corollary_den)},
                      {"lower_ok", sb.lower_ok},
                      {"binomial_ok", sb.binomial_ok},
                      {"corollary_ok", sb.corollary_ok}};
  all_ok = all_ok && sb.all_ok();
  if (sb.dim == 0) {
    r["k_ratio"] = nullptr;  // Z ⊆ {0}: K is undefined
  } else {
    const auto k = k_ratio(z, caps);
    std::ostringstream kr;
    kr << k.k.numerator() << '/' << k.k.denominator();
    r["k_ratio"] = {{"k", kr.str()}, {"lhs", k.lhs}, {"rhs", k.rhs}, {"inequality_ok", k.inequality_ok}};
    all_ok = all_ok && k.inequality_ok;
  }
  r["bounds_ok"] = all_ok;
  return r;
}

Json verification(const GSet& s) {
  Json v;
  v["size"] = s.size();
  v["group"] = s.group().describe();
  v["balanced"] = is_balanced(s).ok;
  v["no_unique_sum"] = has_no_unique_sum(s);
  return v;
}

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("list", "not an integer: '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unique sums, balanced sets and additive dimension over finite abelian groups"};
  app.require_subcommand(1);
  RunConfig rc;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", rc.threads, "worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--format", rc.format, "json or human")->check(CLI::IsMember({"json", "human"}));
    sub->add_option("--seed", rc.seed, "seed for randomized suites");
    sub->add_option("--cap-span", rc.cap_span, "largest |Z| for the span DP")->check(CLI::PositiveNumber);
    sub->add_option("--cap-dim", rc.cap_dim, "largest support for the exact dimension")->check(CLI::PositiveNumber);
    sub->add_option("--cap-search", rc.cap_search, "candidate sets per search")->check(CLI::PositiveNumber);
  };

  std::string set_path;
  auto* an = app.add_subcommand("analyze", "r-table, predicates, dimension and bound checks for a set file");
  an->add_option("--set", set_path, "set or multiset file")->required();
  common(an);

  std::string kind, group_text;
  std::uint32_t prime = 0, limit = 10000;
  std::size_t max_size = 0;
  auto* co = app.add_subcommand("construct", "build or transform a set");
  co->add_option("--kind", kind, "multiplicative | sumset | grid | search | primes | embed | rectify")
      ->required()
      ->check(CLI::IsMember({"multiplicative", "sumset", "grid", "search", "primes", "embed", "rectify"}));
  co->add_option("--prime", prime, "the prime p");
  co->add_option("--max-size", max_size, "size limit (search, primes; sumset/grid use a searched B when given)");
  co->add_option("--limit", limit, "primes below this (primes)");
  co->add_option("--set", set_path, "input set (embed, rectify)");
  co->add_option("--out", rc.out, "also write the set file here");
  common(co);

  bool want_m = false, want_b = false, want_dim = false, table = false, rerun = false;
  std::string verify_path, primes_text = "2,3,5,7,11,13";
  auto* se = app.add_subcommand("search", "exact m(G), b(G) or dimension, with a certificate");
  auto* om = se->add_flag("--m", want_m, "least set with no unique sum");
  auto* ob = se->add_flag("--b", want_b, "least balanced set");
  auto* od = se->add_flag("--dim", want_dim, "additive dimension of --set");
  auto* ot = se->add_flag("--table", table, "b(p) and m(p) for --primes");
  auto* ov = se->add_option("--verify", verify_path, "re-check a certificate file");
  om->excludes(ob)->excludes(od)->excludes(ot)->excludes(ov);
  ob->excludes(od)->excludes(ot)->excludes(ov);
  od->excludes(ot)->excludes(ov);
  ot->excludes(ov);
  se->add_option("--group", group_text, "moduli n1,n2,...");
  se->add_option("--primes", primes_text, "primes for --table");
  se->add_option("--set", set_path, "set file for --dim");
  se->add_option("--max-size", max_size, "largest size tried (default 12)");
  se->add_flag("--rerun", rerun, "with --verify, repeat the exhaustion");
  common(se);

  bool relaxed = false;
  std::size_t max_steps = 64;
  auto* in = app.add_subcommand("increment", "run the increment iteration from S = {0}");
  in->add_option("--set", set_path, "set with no unique sum")->required();
  in->add_flag("--relaxed", relaxed, "record the size conditions instead of stopping on them");
  in->add_option("--max-steps", max_steps, "step limit");
  common(in);

  bool quick = false;
  auto* vp = app.add_subcommand("verify-paper", "run the acceptance suite");
  vp->add_flag("--quick", quick, "minimum instance counts");
  common(vp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*an) {
      bool ok = true;
      Json r = analyze(rc, set_path, ok);
      return emit(rc, "analyze", std::move(r), ok ? kPass : kFailure);
    }

    if (*co) {
      auto need_prime = [&] {
        if (prime == 0) throw CLI::ValidationError("--prime", "required for --kind " + kind);
      };
      auto source = [&]() -> GSet {
        need_prime();
        if (max_size == 0) return balanced_multiplicative(prime);
        SearchOptions o;
        o.threads = rc.threads;
        o.cap = rc.cap_search;
        auto b = balanced_search(prime, max_size, o);
        if (!b) fail(ErrorCode::kPrecondition, "no balanced set of size <= " + std::to_string(max_size));
        return *b;
      };
      Json r;
      r["kind"] = kind;
      std::optional<GSet> out;
      if (kind == "primes") {
        if (max_size == 0) throw CLI::ValidationError("--max-size", "required for --kind primes");
        Json ps = Json::array();
        for (auto p : small_multiplicative_primes(limit, max_size)) ps.push_back({{"p", p}, {"size", balanced_multiplicative(p).size()}});
        r["limit"] = limit;
        r["max_size"] = max_size;
        r["primes"] = ps;
        return emit(rc, "construct", std::move(r), kPass);
      }
      if (kind == "embed" || kind == "rectify") {
        if (set_path.empty()) throw CLI::ValidationError("--set", "required for --kind " + kind);
        const GSet a = read_set_file(set_path);
        r["input"] = set_to_json(a);
        if (kind == "embed") {
          auto e = freiman_embed(a);
          r["found"] = e.has_value();
          if (e) {
            r["r"] = e->r;
            r["verified"] = e->verified;
            out = e->image;
          }
        } else {
          auto f = rectify(a);
          r["found"] = f.has_value();
          if (f) {
            r["character"] = f->character;
            r["offset"] = f->offset;
            r["integer_image"] = f->integer_image;
            r["verified"] = f->verified;
          }
        }
        if (out) {
          r["set"] = set_to_json(*out);
          r["verification"] = verification(*out);
        }
        if (out && !rc.out.empty()) std::ofstream(rc.out) << dump(set_to_json(*out));
        const bool found = r["found"].get<bool>();
        return emit(rc, "construct", std::move(r), found ? kPass : kFailure);
      }
      if (kind == "multiplicative") {
        need_prime();
        out = balanced_multiplicative(prime);
      } else if (kind == "search") {
        need_prime();
        if (max_size == 0) throw CLI::ValidationError("--max-size", "required for --kind search");
        SearchOptions o;
        o.threads = rc.threads;
        o.cap = rc.cap_search;
        auto b = balanced_search(prime, max_size, o);
        if (!b) {
          r["found"] = false;
          return emit(rc, "construct", std::move(r), kFailure);
        }
        out = *b;
      } else {
        const GSet b = source();
        r["source"] = set_to_json(b);
        out = kind == "sumset" ? sumset_construction(b) : grid_construction(b);
      }
      r["prime"] = prime;
      r["set"] = set_to_json(*out);
      r["verification"] = verification(*out);
      if (!rc.out.empty()) std::ofstream(rc.out) << dump(set_to_json(*out));
      return emit(rc, "construct", std::move(r), kPass);
    }

    if (*se) {
      SearchOptions o;
      o.threads = rc.threads;
      o.cap = rc.cap_search;
      if (max_size) o.max_size = max_size;
      if (!verify_path.empty()) {
        Json doc = parse_json(read_text_file(verify_path));
        // accept the envelope written by `search` as well as a bare certificate
        if (doc.is_object() && doc.contains("command") && doc.contains("result")) doc = doc["result"];
        const auto c = certificate_from_json(doc);
        const auto chk = verify_certificate(c, rerun, rc.threads);
        Json r{{"certificate", certificate_to_json(c)}, {"checksum_ok", chk.checksum_ok},
               {"witness_ok", chk.witness_ok}, {"rerun_ok", chk.rerun_ok ? Json(*chk.rerun_ok) : Json(nullptr)},
               {"ok", chk.ok()}};
        return emit(rc, "search", std::move(r), chk.ok() ? kPass : kFailure);
      }
      if (table) {
        Json rows = Json::array();
        for (auto p : parse_list(primes_text)) {
          if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw CLI::ValidationError("--primes", std::to_string(p) + " is not prime");
          const GroupSpec g = GroupSpec::cyclic(p);
          SearchOptions op = o;
          if (!max_size) op.max_size = std::min<std::size_t>(p, 12);
          auto b = b_exact(g, op);
          auto m = m_exact(g, op);
          rows.push_back({{"p", p}, {"b", b ? Json(b->value) : Json(nullptr)}, {"m", m ? Json(m->value) : Json(nullptr)},
                          {"max_size", op.max_size}});
        }
        return emit(rc, "search", {{"table", rows}}, kPass);
      }
      if (want_dim) {
        if (set_path.empty()) throw CLI::ValidationError("--set", "required with --dim");
        auto c = dim_certificate(read_set_file(set_path));
        return emit(rc, "search", certificate_to_json(c), kPass);
      }
      if (!want_m && !want_b) throw CLI::ValidationError("search", "one of --m, --b, --dim, --table, --verify is required");
      if (group_text.empty()) throw CLI::ValidationError("--group", "required with --m or --b");
      const GroupSpec g = make_group(parse_list(group_text));
      try {
        auto c = want_m ? m_exact(g, o) : b_exact(g, o);
        if (!c) {
          Json r{{"found", false}, {"group", group_to_json(g)}, {"max_size", o.max_size}};
          return emit(rc, "search", std::move(r), kFailure);
        }
        return emit(rc, "search", certificate_to_json(*c), kPass);
      } catch (const SearchLimit& e) {
        Json r{{"error", e.what()}, {"lower_bound", e.lower_bound()}, {"first_size", e.space().first_size},
               {"candidates", e.space().candidates}};
        emit(rc, "search", std::move(r), kCap);
        return kCap;
      }
    }

    if (*in) {
      IncrementOptions opt;
      opt.enforce_bounds = !relaxed;
      const auto tr = increment_iterate(read_set_file(set_path), opt, max_steps);
      return emit(rc, "increment", trace_to_json(tr), tr.ok() ? kPass : kFailure);
    }

    if (*vp) {
      acceptance::SuiteConfig cfg;
      cfg.threads = rc.threads;
      cfg.seed = rc.seed;
      cfg.quick = quick;
      const auto rep = acceptance::run_suite(cfg);
      const int code = rep.ok() ? kPass : kFailure;
      if (rc.format == "human") {
        for (const auto& c : rep.criteria) std::cout << acceptance::summary_line(c) << '\n';
        std::cout << (rep.ok() ? "ok" : "FAILED") << '\n';
        return code;
      }
      return emit(rc, "verify-paper", acceptance::report_to_json(rep), code);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "unisum: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "unisum: " << to_string(e.code()) << ": " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::kParse:
      case ErrorCode::kInvalidGroup:
        return kUsage;
      case ErrorCode::kSizeLimit:
        return kCap;
      default:
        return kFailure;
    }
  }
  return kUsage;
}
