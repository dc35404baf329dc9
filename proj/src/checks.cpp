#include "fsmkit/checks.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "fsmkit/cardinality.hpp"
#include "fsmkit/countability.hpp"
#include "fsmkit/infinity.hpp"
#include "fsmkit/nominal.hpp"
#include "fsmkit/universes.hpp"

namespace fsmkit {

namespace {

constexpr std::size_t kKeptFailures = 8;

AtomSet first(std::uint64_t n) {
  AtomSet s;
  for (std::uint64_t i = 0; i < n; ++i) s.insert(atom(i));
  return s;
}

std::uint64_t falling_sum(std::uint64_t s) {
  // 1 + Σ_{k=1..s} s!/(s-k)!
  std::uint64_t total = 1, term = 1;
  for (std::uint64_t k = 1; k <= s; ++k) {
    term *= s - k + 1;
    total += term;
  }
  return total;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::string search_label(const char* x, const char* y, Want w, std::size_t s) {
  return std::string(x) + " -> " + y + " " + std::string(want_name(w)) + " |S|=" + std::to_string(s);
}

}  // namespace

void CheckGroup::record(bool good, const std::string& what) {
  if (good) {
    ++passed;
    return;
  }
  ++failed;
  if (failures.size() < kKeptFailures) failures.push_back(what);
}

json to_json(const CheckGroup& g) {
  return {{"group", g.name},       {"ok", g.ok()},           {"passed", g.passed},
          {"failed", g.failed},    {"failures", g.failures}, {"counters", g.counters}};
}

CheckGroup check_equivariance(const CheckOptions& o) {
  CheckGroup g{"equivariance"};
  std::mt19937_64 rng(o.seed);
  std::size_t least = 0;
  for (std::size_t i = 0; i < o.trials; ++i) {
    Element x = random_element(rng);
    auto p = random_permutation(rng, 6), q = random_permutation(rng, 6);
    g.record(act(compose(p, q), x) == act(p, act(q, x)), "act composition on " + to_string(x));
    g.record(support(act(p, x)) == fsmkit::apply(p, support(x)), "supp(pi.x) on " + to_string(x));
    AtomSet claim = o.support_rule ? o.support_rule(x) : support(x);
    bool ok = verify_least_support(x, claim, 4, rng).verified;
    least += !ok;
    g.record(ok, "verify_least_support on " + to_string(x) + " with claim " + to_string(claim));
  }
  g.counters = {{"elements", o.trials}, {"least_support_failures", least}};
  return g;
}

CheckGroup check_counting(const CheckOptions& o) {
  CheckGroup g{"counting"};
  std::size_t top = std::max<std::size_t>(3, o.max_support);
  for (std::uint64_t s = 0; s <= top; ++s) {
    AtomSet S = first(s);
    auto tag = " |S|=" + std::to_string(s);
    g.record(count_supported(parse_setexpr("Pfs(A)"), S) == (std::uint64_t{2} << s), "Pfs(A)" + tag);
    g.record(count_supported(parse_setexpr("Tinj(A)"), S) == falling_sum(s), "Tinj(A)" + tag);
    if (s >= 1) g.record(count_supported(parse_setexpr("Fn(A,A)"), S) == ipow(s, s) * (s + 1), "Fn(A,A)" + tag);
    // Counts agree with the enumerator wherever it can list the slice.
    for (const char* u : {"A", "A*A", "A+A", "Pfin(A)", "Pfs(A)", "Tinj(A)"}) {
      auto e = parse_setexpr(u);
      auto c = count_supported(e, S);
      auto listed = enumerate_supported(e, S);
      if (auto* v = std::get_if<std::vector<Element>>(&listed)) g.record(c && *c == v->size(), std::string(u) + tag);
    }
  }
  return g;
}

CheckGroup check_csb(const CheckOptions& o) {
  CheckGroup g{"csb"};
  std::mt19937_64 rng(o.seed);
  RandomElementOptions small{1, 5, 4, 2};
  std::size_t instances = std::max<std::size_t>(1, o.trials / 10);
  for (std::size_t t = 0; t < instances; ++t) {
    std::size_t n = 1 + rng() % 7;
    std::set<Element> xs, ys;
    while (xs.size() < n) xs.insert(random_element(rng, small));
    while (ys.size() < n) ys.insert(random_element(rng, small));
    std::vector<Element> xv(xs.begin(), xs.end()), yv(ys.begin(), ys.end());
    auto X = Carrier::finite(xv), Y = Carrier::finite(yv);
    std::vector<Element> fy = yv, gx = xv;
    std::shuffle(fy.begin(), fy.end(), rng);
    std::shuffle(gx.begin(), gx.end(), rng);
    std::vector<std::pair<Element, Element>> fg, gg;
    for (std::size_t i = 0; i < n; ++i) {
      fg.emplace_back(xv[i], fy[i]);
      gg.emplace_back(yv[i], gx[i]);
    }
    auto f = finmap_witness(X, Y, fg), gm = finmap_witness(Y, X, gg);
    auto r = csb(f, gm);
    std::set<Element> img;
    for (const auto& x : xv) img.insert(eval(r.h, x));
    AtomSet allowed = f.support;
    for (const auto* s : {&gm.support, &X.atoms, &Y.atoms}) allowed.insert(s->begin(), s->end());
    bool within = std::includes(allowed.begin(), allowed.end(), r.h.support.begin(), r.h.support.end());
    g.record(img == ys && r.fixed_point_ok && r.support_ok && within, "csb instance " + std::to_string(t));
  }
  g.counters = {{"instances", instances}};
  return g;
}

CheckGroup check_certificates(const CheckOptions& o) {
  CheckGroup g{"certificates"};
  SearchOptions so{o.pool_bonus};
  struct Case {
    const char *x, *y;
    Want w;
  };
  for (auto c : {Case{"A*A", "A", Want::Injective}, Case{"Pfs(A)", "A*A", Want::Surjective},
                 Case{"A*A", "Pfs(A)", Want::Injective}})
    for (std::size_t s = 0; s <= o.max_support; ++s) {
      auto r = find_supported_map(parse_setexpr(c.x), parse_setexpr(c.y), first(s), c.w, so);
      g.record(r.outcome == SearchOutcome::Unsat, search_label(c.x, c.y, c.w, s) + " should be unsat");
    }
  // Known witnesses must never be refuted.
  for (auto c : {Case{"Pfs(A)", "A", Want::Surjective}, Case{"Tinj(A)", "Tinj1(A)", Want::Surjective},
                 Case{"Tinj1(A)", "Tinj(A)", Want::Surjective}, Case{"A", "A", Want::Bijective}})
    for (std::size_t s = 1; s <= o.max_support; ++s) {
      auto r = find_supported_map(parse_setexpr(c.x), parse_setexpr(c.y), first(s), c.w, so);
      g.record(r.outcome != SearchOutcome::Unsat, search_label(c.x, c.y, c.w, s) + " has a witness");
    }
  return g;
}

CheckGroup check_lem3(const CheckOptions& o) {
  CheckGroup g{"lem3"};
  auto T = parse_setexpr("Tinj(A)"), T1 = parse_setexpr("Tinj1(A)");
  AtomSet pool = first(std::max<std::size_t>(3, o.max_support + 2));
  auto all = enumerate_slice(T, pool).elements;
  std::vector<Element> nonempty;
  for (const auto& x : all)
    if (member(x, T1)) nonempty.push_back(x);
  g.record(hits_all(lem3_f(atom(0)), all, nonempty), "f: T -> T minus () is onto the slice");
  // preimages under g of tuples over the pool need one more atom
  AtomSet wider = pool;
  wider.insert(fresh_atom(pool));
  g.record(hits_all(lem3_g(), enumerate_slice(T1, wider).elements, all), "g: T minus () -> T is onto the slice");
  for (std::size_t s = 0; s <= o.max_support; ++s) {
    auto r = find_supported_map(T, T1, first(s), Want::Injective, {o.pool_bonus});
    g.record(r.outcome == SearchOutcome::Unsat, search_label("Tinj(A)", "Tinj1(A)", Want::Injective, s));
  }
  g.counters = {{"slice", all.size()}};
  return g;
}

CheckGroup check_countability(const CheckOptions&) {
  CheckGroup g{"countability"};
  std::set<std::uint64_t> codes;
  for (std::uint64_t m = 0; m <= 20; ++m)
    for (std::uint64_t n = 0; n <= 20; ++n) {
      auto p = pairing(m, n);
      g.record(codes.insert(p).second && unpair_check(p) == std::make_pair(m, n), "pairing at " + std::to_string(m));
    }

  Enumeration f{"n/2", [](std::uint64_t n) { return nat(n / 2); }, {}};
  auto inj = surj_to_inj(f, 1000);
  std::vector<Element> members;
  for (std::uint64_t n = 0; n < 50; ++n) members.push_back(nat(n));
  auto bij = inj_to_bij(inj, members);
  for (std::uint64_t n = 0; n < 50; ++n)
    g.record(bij.from_nat.at(n) == nat(n) && eval(bij.to_nat, nat(n)) == nat(n), "round trip at " + std::to_string(n));

  SubsetFamily chain{"{0..n}", [](std::uint64_t n, const Element& x) { return x.as<el::Nat>().n <= n; }, {}};
  std::vector<Element> probe;
  for (std::uint64_t n = 0; n < 30; ++n) probe.push_back(nat(n));
  auto d = disjointify(chain, probe, 8);
  std::set<Element> seen;
  for (std::size_t k = 0; k < d.blocks.size(); ++k) {
    for (const auto& x : d.blocks[k]) g.record(seen.insert(x).second, "block overlap at " + to_string(x));
    // ∪_{n≤k} Y_n = X_k on the probe
    std::set<Element> term;
    for (const auto& x : probe)
      if (chain.contains(k, x)) term.insert(x);
    g.record(seen == term, "union of blocks up to " + std::to_string(k));
  }

  auto tuples = union_powers_countable({"N", [](std::uint64_t n) { return nat(n); }, {}});
  std::set<Element> listed;
  for (std::uint64_t p = 0; p < 100; ++p) g.record(listed.insert(tuples.at(p)).second, "tuple " + std::to_string(p));
  return g;
}

CheckGroup check_table(const CheckOptions& o) {
  CheckGroup g{"table"};
  InfinityConfig cfg{o.prefix, o.max_support, o.seed, o.pool_bonus};
  auto t = build_table(cfg);
  g.record(t.rows.size() == 16, "sixteen rows");
  g.record(t.mismatches == 0, std::to_string(t.mismatches) + " cells differ from the reference table");
  g.record(t.inconclusive == 0, std::to_string(t.inconclusive) + " cells inconclusive");
  for (const auto& n : t.notes) g.failures.push_back(n);
  g.counters = {{"rows", t.rows.size()}, {"mismatches", t.mismatches}, {"inconclusive", t.inconclusive}};
  return g;
}

CheckGroup check_implications(const CheckOptions& o) {
  CheckGroup g{"implications"};
  InfinityConfig cfg{o.prefix, o.max_support, o.seed, o.pool_bonus};
  for (const auto& c : catalog()) {
    auto row = classify(c, cfg);
    auto v = implication_violations(row);
    g.record(v.empty(), row.label + ": " + (v.empty() ? "" : v.front()));
    g.record(row.at(Notion::Usual) == row.at(Notion::Covering), row.label + ": usual and covering differ");
  }
  return g;
}

std::vector<CheckGroup> run_checks(const CheckOptions& o) {
  return {check_equivariance(o), check_counting(o),      check_csb(o),   check_certificates(o),
          check_lem3(o),         check_countability(o), check_table(o), check_implications(o)};
}

}  // namespace fsmkit
