#include "unisum/increment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "unisum/construct.hpp"
#include "unisum/error.hpp"
#include "unisum/span.hpp"
#include "unisum/sums.hpp"

namespace unisum {

const char* to_string(CaseTag t) noexcept {
  switch (t) {
    case CaseTag::kTranslate: return "translate-case";
    case CaseTag::kFinal: return "final-case";
    case CaseTag::kPreconditionFailed: return "precondition-failed";
  }
  return "?";
}

TwoFamiliesCheck two_families_check(const std::vector<std::vector<std::int64_t>>& p,
                                    const std::vector<std::vector<std::int64_t>>& q) {
  require(p.size() == q.size(), ErrorCode::kPrecondition, "two_families: |P| != |Q|");
  auto norm = [](std::vector<std::int64_t> v) {
    require(v.size() <= 2, ErrorCode::kPrecondition, "two_families: set of size > 2");
    std::sort(v.begin(), v.end());
    require(std::adjacent_find(v.begin(), v.end()) == v.end(), ErrorCode::kPrecondition,
            "two_families: repeated element");
    return v;
  };
  auto meets = [](const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
    for (auto e : x)
      if (std::find(y.begin(), y.end(), e) != y.end()) return true;
    return false;
  };
  std::vector<std::vector<std::int64_t>> pp, qq;
  for (std::size_t i = 0; i < p.size(); ++i) {
    pp.push_back(norm(p[i]));
    qq.push_back(norm(q[i]));
    require(!meets(pp[i], qq[i]), ErrorCode::kPrecondition, "two_families: P_i meets Q_i");
  }
  TwoFamiliesCheck out;
  out.k = p.size();
  out.hypotheses = true;
  for (std::size_t i = 0; i < p.size() && out.hypotheses; ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (!meets(pp[i], qq[j]) && !meets(pp[j], qq[i])) {
        out.hypotheses = false;
        break;
      }
  out.within_bound = out.k <= kC1;
  return out;
}

bool two_families_bound(const std::vector<std::vector<std::int64_t>>& p,
                        const std::vector<std::vector<std::int64_t>>& q) {
  const auto c = two_families_check(p, q);
  return c.hypotheses && c.within_bound;
}

namespace {

using boost::multiprecision::cpp_int;

GSet plus(const GSet& x, const GSet& y) { return sumset(x, y); }
GSet minus(const GSet& x, const GSet& y) { return difference_set(x, y); }

GSet intersect(const GSet& x, const GSet& y) {
  std::vector<Elem> v;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(v));
  return GSet(x.group(), v);
}

std::string cmp(const cpp_int& l, const char* op, const cpp_int& r) {
  std::ostringstream os;
  os << l << ' ' << op << ' ' << r;
  return os.str();
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace

GSet compute_bad_one(const GSet& d, const GSet& s) {
  const GroupSpec& g = d.group();
  const GSet two_s = plus(s, s);
  const GSet v = minus(two_s, two_s);
  std::vector<Elem> out;
  for (Elem x : d) {
    for (Elem w : v) {
      if (w == g.zero()) continue;
      if (d.contains(g.add(x, w))) {
        out.push_back(x);
        break;
      }
    }
  }
  return GSet(g, out);
}

GoodPairs compute_good_pairs(const GSet& a, const GSet& d, const GSet& s,
                             const std::map<Elem, Elem>& s_d) {
  const GroupSpec& g = a.group();
  const GSet b1 = compute_bad_one(d, s);
  std::vector<Elem> g1;
  for (Elem x : d)
    if (!b1.contains(x)) g1.push_back(x);
  const GSet ds_a = intersect(plus(d, s), a);

  GoodPairs out;
  for (std::size_t i = 0; i < g1.size(); ++i) {
    for (std::size_t j = i + 1; j < g1.size(); ++j) {
      const Elem x = g1[i], y = g1[j];
      const Elem t = g.add(g.add(x, s_d.at(x)), g.add(y, s_d.at(y)));
      std::optional<std::array<Elem, 4>> wit;
      // least (e, e', s, s') with e + s + e' + s' = t and {e, e'} != {x, y}
      for (Elem e : d) {
        for (Elem e2 : d) {
          if ((e == x && e2 == y) || (e == y && e2 == x)) continue;
          const Elem rest = g.sub(t, g.add(e, e2));
          for (Elem s1 : s) {
            if (s.contains(g.sub(rest, s1))) {
              wit = std::array<Elem, 4>{e, e2, s1, g.sub(rest, s1)};
              break;
            }
          }
          if (wit) break;
        }
        if (wit) break;
      }
      if (wit) {
        out.bad.emplace_back(x, y);
        out.bad_witness.push_back(*wit);
        continue;
      }
      out.good.emplace_back(x, y);
      // only the two trivial ordered solutions inside (D + S) ∩ A
      const Elem u = g.add(x, s_d.at(x)), w = g.add(y, s_d.at(y));
      for (Elem z : ds_a) {
        const Elem other = g.sub(t, z);
        if (!ds_a.contains(other)) continue;
        if (!((z == u && other == w) || (z == w && other == u))) out.unique_sums_ok = false;
      }
    }
  }
  return out;
}

IncrementOutcome increment_step(const GSet& a, const GSet& d, const GSet& s,
                                const IncrementOptions& opt) {
  const GroupSpec& g = a.group();
  require(d.group() == g && s.group() == g, ErrorCode::kGroupMismatch, "increment_step: mixed groups");
  require(!a.empty() && has_no_unique_sum(a), ErrorCode::kPrecondition, "increment_step: A has a unique sum");
  require(d.is_subset_of(a), ErrorCode::kPrecondition, "increment_step: D is not a subset of A");
  require(is_dissociated(d), ErrorCode::kPrecondition, "increment_step: D is not dissociated");
  require(s.contains(g.zero()), ErrorCode::kPrecondition, "increment_step: 0 is not in S");

  IncrementOutcome out;
  IncrementState& st = out.state;
  st.a = a;
  st.d = d;
  st.s = s;
  const GSet ds = plus(d, s);
  const GSet ds_a = intersect(ds, a);
  st.coverage = ds_a.size();
  out.s_prime = s;

  const std::uint64_t na = a.size(), nd = d.size(), ns = s.size();
  out.gain_required = ceil_div(nd * nd, 36 * na);

  // the size condition on S and |D| >= 10, compared exactly
  const cpp_int s4 = cpp_int(ns) * ns * ns * ns;
  const cpp_int lhs = s4 * kC * cpp_int(na) * na * na * na * na;
  const cpp_int rhs = cpp_int(nd) * nd * nd * nd * nd * nd;
  if (nd < 10) out.failed.push_back("|D| >= 10");
  if (ns >= 64 || (std::uint64_t{1} << ns) > g.smallest_prime()) out.failed.push_back("|S| <= log2 p(G)");
  if (lhs > rhs) out.failed.push_back("|S|^4 C |A|^5 <= |D|^6");
  if (opt.enforce_bounds && !out.failed.empty()) return out;

  auto stop = [&](const std::string& why) {
    out.failed.push_back(why);
    out.tag = CaseTag::kPreconditionFailed;
    out.s_prime = s;
    return out;
  };

  // S_d and s_d
  std::optional<SAssignment> assign;
  try {
    assign = s_assignment(s);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kRectificationRequired && e.code() != ErrorCode::kSizeLimit) throw;
    return stop("S is not rectified");
  }
  for (Elem x : d) {
    std::vector<Elem> sx;
    for (Elem y : s)
      if (a.contains(g.add(x, y))) sx.push_back(y);
    GSet set(g, sx);
    require(set.contains(g.zero()), ErrorCode::kInternal, "increment_step: 0 not in S_d");
    st.s_d[x] = assign->at(assign->mask_of(set));
    st.s_sets.emplace(x, std::move(set));
  }

  st.b1 = compute_bad_one(d, s);
  st.pairs = compute_good_pairs(a, d, s, st.s_d);
  const cpp_int bound4 = cpp_int(kC1) * s4;
  out.checks.push_back({"bad-singles", cpp_int(st.b1.size()) <= bound4, cmp(st.b1.size(), "<=", bound4)});
  out.checks.push_back({"bad-pairs", cpp_int(st.pairs.bad.size()) <= bound4,
                        cmp(st.pairs.bad.size(), "<=", bound4)});
  out.checks.push_back({"good-pairs", 3 * st.pairs.good.size() >= nd * nd,
                        cmp(3 * st.pairs.good.size(), ">=", nd * nd)});
  out.checks.push_back({"good-pair-unique", st.pairs.unique_sums_ok, "unique sums of good pairs"});

  // x(d, d') ∉ D + S, least first; y follows
  for (const auto& [x, y] : st.pairs.good) {
    const Elem t = g.add(g.add(x, st.s_d[x]), g.add(y, st.s_d[y]));
    std::optional<Pair> pick;
    for (Elem u : a) {
      if (ds.contains(u)) continue;
      const Elem v = g.sub(t, u);
      if (a.contains(v)) {
        pick = Pair{u, v};
        break;
      }
    }
    require(pick.has_value(), ErrorCode::kInternal, "increment_step: no x(d, d') outside D + S");
    st.xy.push_back(*pick);
    st.n_map[pick->first].emplace_back(x, y);
  }
  bool n_le_a = true;
  for (const auto& [u, ps] : st.n_map) n_le_a = n_le_a && ps.size() <= na;
  out.checks.push_back({"N(a)<=|A|", n_le_a, "every |N(a)| <= |A|"});

  // 𝒩: 6 |A| |N(a)| >= |D|^2
  std::vector<Elem> big;
  for (const auto& [u, ps] : st.n_map)
    if (6 * na * ps.size() >= nd * nd) big.push_back(u);
  st.script_n = GSet(g, big);
  out.checks.push_back({"script-n", 6 * na * big.size() >= nd * nd, cmp(6 * na * big.size(), ">=", nd * nd)});

  // 𝒩(1/3): least d lying in at least |N(a)|/3 of the pairs
  std::vector<Elem> third;
  for (Elem u : st.script_n) {
    const auto& ps = st.n_map[u];
    std::map<Elem, std::size_t> cnt;
    for (const auto& [x, y] : ps) {
      ++cnt[x];
      ++cnt[y];
    }
    for (const auto& [x, c] : cnt) {
      if (3 * c >= ps.size()) {
        st.d_of[u] = x;
        third.push_back(u);
        break;
      }
    }
  }
  st.script_n_third = GSet(g, third);
  out.checks.push_back({"script-n-third", 2 * third.size() >= big.size(), cmp(2 * third.size(), ">=", big.size())});

  if (third.empty()) return stop("N(1/3) is empty");

  // pairs {d(a), d_i(a)} in N(a), with their y values
  struct Spoke {
    Elem di, y;
  };
  auto spokes = [&](Elem u) {
    std::vector<Spoke> out_s;
    const Elem da = st.d_of[u];
    for (std::size_t k = 0; k < st.pairs.good.size(); ++k) {
      const auto& [x, y] = st.pairs.good[k];
      if (st.xy[k].first != u) continue;
      if (x == da) out_s.push_back({y, st.xy[k].second});
      else if (y == da) out_s.push_back({x, st.xy[k].second});
    }
    return out_s;
  };

  const auto coverage_of = [&](const GSet& sp) { return intersect(plus(d, sp), a).size(); };

  // translate case, taken whenever some a qualifies
  for (Elem u : third) {
    const auto sp = spokes(u);
    std::size_t outside = 0;
    for (const auto& k : sp)
      if (!ds.contains(k.y)) ++outside;
    if (2 * outside < sp.size()) continue;
    const Elem da = st.d_of[u];
    const Elem t = g.sub(g.add(da, st.s_d[da]), u);
    std::vector<Elem> sv(s.begin(), s.end());
    for (Elem x : s) sv.push_back(g.add(x, t));
    out.s_prime = GSet(g, sv);
    out.t = t;
    out.a_used = u;
    out.tag = CaseTag::kTranslate;
    // each outside y is t + d_i + s_{d_i}
    bool lands = true;
    for (const auto& k : sp)
      if (!ds.contains(k.y)) lands = lands && k.y == g.add(t, g.add(k.di, st.s_d[k.di]));
    out.checks.push_back({"translate-lands", lands, "y(d(a), d_i(a)) in D + S + t"});
    break;
  }

  if (out.tag != CaseTag::kTranslate) {
    // each a needs some i with e_i(a) = d_i(a), taking the least (e, s)
    // with y = e + s
    bool every = true;
    for (Elem u : third) {
      bool found = false;
      for (const auto& k : spokes(u)) {
        for (Elem e : d) {
          const Elem rest = g.sub(k.y, e);
          if (!s.contains(rest)) continue;
          found = found || e == k.di;
          break;
        }
      }
      every = every && found;
    }
    out.checks.push_back({"final-match", every, "some e_i(a) = d_i(a) for every a in N(1/3)"});
    out.s_prime = minus(plus(s, s), s);
    out.tag = CaseTag::kFinal;
  }

  const std::uint64_t after = coverage_of(out.s_prime);
  out.gain = after - st.coverage;
  const std::uint64_t cap = std::max<std::uint64_t>(2 * ns, ns * ns * ns);
  out.checks.push_back({"zero-in-S'", out.s_prime.contains(g.zero()), "0 in S'"});
  out.checks.push_back({"size-S'", out.s_prime.size() <= cap, cmp(out.s_prime.size(), "<=", cap)});
  out.checks.push_back({"gain", 36 * na * out.gain >= nd * nd, cmp(36 * na * out.gain, ">=", nd * nd)});
  if (opt.enforce_bounds) {
    for (const auto& c : out.checks)
      require(c.ok, ErrorCode::kInternal, "increment_step: " + c.name + " failed under the size condition: " + c.detail);
  }
  return out;
}

bool IncrementTrace::ok() const {
  for (const auto& r : steps) {
    if (!r.coverage_ok || !r.size_ok) return false;
  }
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i].coverage < steps[i - 1].coverage) return false;
  }
  return true;
}

IncrementTrace increment_iterate(const GSet& a, const IncrementOptions& opt, std::size_t max_steps) {
  require(!a.empty() && has_no_unique_sum(a), ErrorCode::kPrecondition, "increment_iterate: A has a unique sum");
  SpanCaps caps;
  const bool exact = a.size() <= caps.dimension;
  const DimWitness w = exact ? additive_dimension(a, caps) : greedy_dissociated(a);
  IncrementTrace tr = increment_iterate(a, w.witness, opt, max_steps);
  tr.d_exact = w.exact;
  return tr;
}

IncrementTrace increment_iterate(const GSet& a, const GSet& d, const IncrementOptions& opt,
                                 std::size_t max_steps) {
  require(!a.empty() && has_no_unique_sum(a), ErrorCode::kPrecondition, "increment_iterate: A has a unique sum");
  const GroupSpec& g = a.group();
  IncrementTrace tr;
  tr.a = a;
  tr.d = d;
  tr.d_exact = false;
  GSet s = GSet(g, {g.zero()});
  const std::uint64_t na = a.size(), nd = d.size();
  for (std::size_t i = 0;; ++i) {
    TraceRecord r;
    r.i = i;
    r.s_size = s.size();
    r.coverage = intersect(plus(d, s), a).size();
    r.coverage_ok = cpp_int(36) * na * r.coverage >= cpp_int(i) * nd * nd;
    // 2^{3^i} exceeds any |S| once 3^i >= 64
    if (i < 4) r.size_ok = cpp_int(r.s_size) <= (cpp_int(1) << static_cast<unsigned>(std::pow(3, i)));
    if (i == max_steps) {
      r.failed.push_back("step limit");
      tr.steps.push_back(r);
      tr.exit_reason = "step limit";
      break;
    }
    IncrementOutcome o = increment_step(a, d, s, opt);
    r.tag = o.tag;
    r.gain = o.gain;
    r.checks = o.checks;
    r.failed = o.failed;
    tr.steps.push_back(r);
    if (o.tag == CaseTag::kPreconditionFailed) {
      std::string why;
      for (const auto& f : o.failed) why += (why.empty() ? "" : "; ") + f;
      tr.exit_reason = why;
      break;
    }
    if (o.gain == 0) {
      tr.exit_reason = "no gain";
      break;
    }
    s = o.s_prime;
  }
  return tr;
}

}  // namespace unisum
