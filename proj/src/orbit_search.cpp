#include <algorithm>
#include <map>
#include <set>

#include "fsmkit/cardinality.hpp"

namespace fsmkit {

std::string_view want_name(Want w) {
  switch (w) {
    case Want::Injective: return "injective";
    case Want::Surjective: return "surjective";
    case Want::Bijective: return "bijective";
  }
  return "?";
}

std::string_view outcome_name(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Witness: return "witness";
    case SearchOutcome::Unsat: return "unsat";
    case SearchOutcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::uint64_t sat_factorial(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r = r > UINT64_MAX / i ? UINT64_MAX : r * i;
  return r;
}

bool has_empty_sized(const SetExpr& e) {
  if (e.kind() == SetKind::NSized && e.n() == 0) return true;
  for (std::size_t i = 0; i < e.num_kids(); ++i)
    if (has_empty_sized(e.kid(i))) return true;
  return false;
}

bool infinitely_many_orbits(const SetExpr& e) { return !orbit_finite(e) && !has_empty_sized(e); }

// Every element x is fixed by all permutations of supp(x) outside any S.
bool homogeneous(const SetExpr& e) {
  if (is_trivial(e)) return true;
  switch (e.kind()) {
    case SetKind::Atoms:
    case SetKind::CofinPow: return true;
    case SetKind::FinPow:
    case SetKind::NSized: return e.kid(0).kind() == SetKind::Atoms;
    case SetKind::FsPow: {
      const SetExpr& b = e.kid(0);
      if (b.kind() == SetKind::Atoms) return true;
      if (b.kind() == SetKind::Sum) return homogeneous(u::fs_pow(b.kid(0))) && homogeneous(u::fs_pow(b.kid(1)));
      return false;
    }
    case SetKind::Sum: return homogeneous(e.kid(0)) && homogeneous(e.kid(1));
    case SetKind::Prod:
      return (homogeneous(e.kid(0)) && is_trivial(e.kid(1))) || (is_trivial(e.kid(0)) && homogeneous(e.kid(1)));
    default: return false;
  }
}

// Natural-number bound at which an injective search may cut the codomain
// without losing solutions: every trivial component keeps at least `need`
// values. nullopt when no such bound is known.
std::optional<std::uint64_t> nat_bound_for(const SetExpr& e, std::uint64_t need, std::uint64_t pool,
                                           std::size_t budget) {
  if (!contains_naturals(e)) return 1;
  if (is_trivial(e)) {
    // slice size grows with nb: double to overshoot, then bisect
    auto enough = [&](std::uint64_t nb) -> std::optional<bool> {
      try {
        Slice s = enumerate_slice(e, {}, {nb, budget});
        if (s.status == SliceStatus::OverBudget) return std::nullopt;
        return s.elements.size() >= need;
      } catch (const Unsupported&) {
        return std::nullopt;
      }
    };
    std::uint64_t hi = 1;
    for (;; hi *= 2) {
      auto ok = enough(hi);
      if (!ok) return std::nullopt;
      if (*ok) break;
      if (hi >= 4096) return std::nullopt;
    }
    std::uint64_t lo = hi / 2;  // enough(lo) is false or lo == 0
    while (lo + 1 < hi) {
      std::uint64_t mid = (lo + hi) / 2;
      auto ok = enough(mid);
      if (!ok) return std::nullopt;
      (*ok ? hi : lo) = mid;
    }
    return hi;
  }
  switch (e.kind()) {
    case SetKind::Prod:
    case SetKind::Sum: {
      auto a = nat_bound_for(e.kid(0), need, pool, budget);
      auto b = nat_bound_for(e.kid(1), need, pool, budget);
      if (!a || !b) return std::nullopt;
      return std::max(*a, *b);
    }
    case SetKind::Fn:
      if (e.kid(0).kind() == SetKind::Atoms) return nat_bound_for(e.kid(1), need * (pool + 1), pool, budget);
      return std::nullopt;
    default: return std::nullopt;
  }
}

struct Orbit {
  Element rep;
  std::uint32_t mask = 0;
  std::size_t fresh = 0;
  std::uint64_t stab = 0;
  std::vector<FinPermutation> sym;
};

struct Side {
  std::vector<Orbit> orbits;
  std::map<Element, std::size_t> index;
  std::vector<std::size_t> orbit_of;  // per slice element
  std::vector<std::uint32_t> mask_of;
};

struct Pool {
  AtomSet S, F, all;
  std::vector<Atom> fresh;
  std::map<Atom, unsigned> bit;

  std::uint32_t mask(const Element& x) const {
    std::uint32_t m = 0;
    for (Atom a : support(x)) {
      auto it = bit.find(a);
      if (it != bit.end()) m |= 1u << it->second;
    }
    return m;
  }
};

Side build_side(const std::vector<Element>& xs, const Pool& p) {
  Side s;
  std::vector<Element> canon;
  canon.reserve(xs.size());
  for (const auto& x : xs) {
    canon.push_back(orbit_canon(x, p.F));
    s.index.emplace(canon.back(), 0);
  }
  std::size_t i = 0;
  for (auto& [rep, idx] : s.index) {
    idx = i++;
    Orbit o;
    o.rep = rep;
    o.mask = p.mask(rep);
    o.fresh = static_cast<std::size_t>(__builtin_popcount(o.mask));
    o.sym = local_symmetries(rep, p.F);
    o.stab = (o.sym.size() + 1) * sat_factorial(p.fresh.size() - o.fresh);
    s.orbits.push_back(std::move(o));
  }
  for (std::size_t k = 0; k < xs.size(); ++k) {
    s.orbit_of.push_back(s.index.at(canon[k]));
    s.mask_of.push_back(p.mask(xs[k]));
  }
  return s;
}

// Alternating-path matching that saturates the required nodes of one side.
// Nodes of the same side that are not required may be displaced.
struct Matcher {
  const std::vector<std::vector<std::size_t>>& adj;
  const std::vector<bool>& required;
  std::vector<std::size_t>& match_from;
  std::vector<std::size_t>& match_to;
  std::vector<bool> seen_to;
  std::vector<std::size_t> visited_from;

  bool augment(std::size_t v) {
    visited_from.push_back(v);
    for (std::size_t w : adj[v]) {
      if (seen_to[w]) continue;
      seen_to[w] = true;
      std::size_t u = match_to[w];
      bool free = u == kNone || !required[u];
      if (free || augment(u)) {
        if (free && u != kNone) match_from[u] = kNone;
        match_to[w] = v;
        match_from[v] = w;
        return true;
      }
    }
    return false;
  }
};

struct Deficiency {
  bool found = false;
  std::vector<std::size_t> nodes;
  std::size_t neighbourhood = 0;
};

Deficiency saturate(const std::vector<std::vector<std::size_t>>& adj, const std::vector<bool>& required,
                    std::vector<std::size_t>& match_from, std::vector<std::size_t>& match_to) {
  Deficiency d;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (!required[v] || match_from[v] != kNone) continue;
    Matcher m{adj, required, match_from, match_to, std::vector<bool>(match_to.size(), false), {}};
    if (!m.augment(v)) {
      d.found = true;
      d.nodes = m.visited_from;
      d.neighbourhood = static_cast<std::size_t>(std::count(m.seen_to.begin(), m.seen_to.end(), true));
      return d;
    }
  }
  return d;
}

json orbit_list(const Side& s, const std::vector<std::size_t>& ids) {
  json j = json::array();
  for (std::size_t k = 0; k < ids.size() && k < 8; ++k) j.push_back(to_string(s.orbits[ids[k]].rep));
  return j;
}

struct TableEval {
  Pool pool;
  std::map<Element, Element> table;

  Element operator()(const Element& x) const {
    std::map<Atom, Atom> rho_map;
    std::size_t k = 0;
    for (Atom a : support(x)) {
      if (pool.S.count(a)) continue;
      if (k == pool.fresh.size()) throw DomainError(to_string(x) + " is outside the witnessed range");
      rho_map[a] = pool.fresh[k++];
    }
    auto rho = extend_to_permutation(rho_map);
    Element xp = act(rho, x);
    Element c = orbit_canon(xp, pool.F);
    auto it = table.find(c);
    if (it == table.end()) throw DomainError(to_string(x) + " is outside the witnessed range");
    auto sigma = orbit_transport(c, xp, pool.F);
    if (!sigma) throw std::logic_error("orbit transport failed");
    return act(inverse(rho), act(*sigma, it->second));
  }
};

}  // namespace

SearchResult find_supported_map(const SetExpr& X, const SetExpr& Y, const AtomSet& S, Want want,
                                const SearchOptions& opts) {
  SearchResult r;
  json pair_j = json::array({to_string(X), to_string(Y)});
  auto base_record = [&](std::string kind) {
    return json{{"kind", std::move(kind)},
                {"universe_pair", pair_j},
                {"want", std::string(want_name(want))},
                {"support", atoms_json(S)}};
  };
  auto inconclusive = [&](std::string why) {
    r.outcome = SearchOutcome::Inconclusive;
    r.reason = std::move(why);
    r.record = base_record("inconclusive");
    r.record["reason"] = r.reason;
    return r;
  };
  auto unsat = [&](std::string why, json extra = json::object()) {
    r.outcome = SearchOutcome::Unsat;
    r.reason = std::move(why);
    r.record = base_record("unsat");
    r.record["orbits_exhausted"] = r.domain_orbits;
    r.record["codomain_orbits"] = r.codomain_orbits;
    r.record["pool"] = r.pool_size;
    r.record["reason"] = r.reason;
    for (auto& [k, v] : extra.items()) r.record[k] = v;
    return r;
  };

  bool inj = want != Want::Surjective;
  bool surj = want != Want::Injective;

  // Equivariant maps send each orbit into a single orbit.
  if (inj && infinitely_many_orbits(X) && !infinitely_many_orbits(Y))
    return unsat("orbit count: the domain has infinitely many orbits, the codomain finitely many");
  if (surj && !infinitely_many_orbits(X) && infinitely_many_orbits(Y))
    return unsat("orbit count: the codomain has infinitely many orbits, the domain finitely many");

  auto ar = [](const SetExpr& e) -> std::size_t {
    auto a = arity(e);
    return a ? static_cast<std::size_t>(*a) : 1;
  };
  std::size_t nfresh = ar(X) + ar(Y) + 2 + opts.pool_bonus;
  if (nfresh > 12) return inconclusive("probe pool too large");
  Pool p;
  p.S = S;
  p.fresh = fresh_atoms(S, nfresh);
  p.F = AtomSet(p.fresh.begin(), p.fresh.end());
  p.all = S;
  p.all.insert(p.fresh.begin(), p.fresh.end());
  for (unsigned i = 0; i < p.fresh.size(); ++i) p.bit[p.fresh[i]] = i;
  r.pool_size = p.all.size();

  Slice dom;
  try {
    dom = enumerate_slice(X, p.all, {4, opts.budget});
  } catch (const Unsupported& e) {
    return inconclusive(e.what());
  }
  if (dom.status == SliceStatus::OverBudget) return inconclusive("domain slice exceeds budget");
  Side L = build_side(dom.elements, p);
  r.domain_orbits = L.orbits.size();

  std::uint64_t nb = 4;
  bool cod_cut_sound = true;
  if (contains_naturals(Y)) {
    auto b = nat_bound_for(Y, std::max<std::uint64_t>(1, L.orbits.size()), p.all.size(), opts.budget);
    if (b) nb = std::max<std::uint64_t>(*b, 1);
    else cod_cut_sound = false;
  }
  Slice cod;
  try {
    cod = enumerate_slice(Y, p.all, {nb, opts.budget});
  } catch (const Unsupported& e) {
    return inconclusive(e.what());
  }
  if (cod.status == SliceStatus::OverBudget) return inconclusive("codomain slice exceeds budget");
  Side R = build_side(cod.elements, p);
  r.codomain_orbits = R.orbits.size();
  bool cod_complete = cod.status == SliceStatus::Complete;

  // Which codomain orbits a surjection must reach inside the pool, and
  // whether failing to reach them refutes every S-supported surjection.
  auto ax = arity(X), ay = arity(Y);
  bool dom_complete = dom.status == SliceStatus::Complete;
  bool surj_sound = false;
  std::vector<bool> need_r(R.orbits.size(), false);
  for (std::size_t j = 0; j < R.orbits.size(); ++j) {
    std::size_t m = R.orbits[j].fresh;
    if (ax) need_r[j] = m + *ax <= nfresh;
    else if (homogeneous(X) && ay) need_r[j] = m >= 1;
    else need_r[j] = m + 1 <= nfresh;
  }
  if (dom_complete) surj_sound = ax.has_value() || (homogeneous(X) && ay.has_value());

  // Buckets of codomain elements by fresh-atom mask.
  std::map<std::uint32_t, std::vector<std::size_t>> bucket;
  for (std::size_t k = 0; k < cod.elements.size(); ++k) bucket[R.mask_of[k]].push_back(k);

  std::vector<std::vector<std::size_t>> adj_eq(L.orbits.size()), adj_any(L.orbits.size());
  std::vector<std::vector<std::size_t>> radj_any(R.orbits.size()), radj_eq(R.orbits.size());
  std::vector<std::map<std::size_t, Element>> pick_any(L.orbits.size()), pick_eq(L.orbits.size());
  for (std::size_t i = 0; i < L.orbits.size(); ++i) {
    const Orbit& o = L.orbits[i];
    for (std::uint32_t sub = o.mask;; sub = (sub - 1) & o.mask) {
      auto it = bucket.find(sub);
      if (it != bucket.end())
        for (std::size_t k : it->second) {
          const Element& y = cod.elements[k];
          if (!std::all_of(o.sym.begin(), o.sym.end(), [&](const FinPermutation& t) { return act(t, y) == y; }))
            continue;
          std::size_t j = R.orbit_of[k];
          auto [pos, fresh_pick] = pick_any[i].emplace(j, y);
          if (!fresh_pick && y < pos->second) pos->second = y;
          if (R.orbits[j].stab == o.stab) {
            auto [q, f2] = pick_eq[i].emplace(j, y);
            if (!f2 && y < q->second) q->second = y;
          }
        }
      if (sub == 0) break;
    }
    for (const auto& [j, y] : pick_any[i]) {
      adj_any[i].push_back(j);
      radj_any[j].push_back(i);
    }
    for (const auto& [j, y] : pick_eq[i]) {
      adj_eq[i].push_back(j);
      radj_eq[j].push_back(i);
    }
  }

  std::vector<std::size_t> match_l(L.orbits.size(), kNone), match_r(R.orbits.size(), kNone);
  std::vector<bool> all_l(L.orbits.size(), true);

  // Every domain orbit needs some admissible value.
  for (std::size_t i = 0; i < L.orbits.size(); ++i) {
    if (!adj_any[i].empty() && (!inj || !adj_eq[i].empty())) continue;
    std::string why = "orbit of " + to_string(L.orbits[i].rep) + " has no admissible image";
    if (inj && !adj_any[i].empty()) why += " with a matching stabilizer";
    bool sound = cod_complete || cod_cut_sound;
    if (sound) return unsat(why, {{"stuck_orbit", to_string(L.orbits[i].rep)}});
    return inconclusive(why + " within the truncated codomain");
  }

  if (inj) {
    auto d = saturate(adj_eq, all_l, match_l, match_r);
    if (d.found) {
      json hv = {{"side", "domain"},
                 {"size", d.nodes.size()},
                 {"neighbourhood", d.neighbourhood},
                 {"orbits", orbit_list(L, d.nodes)}};
      std::string why = "Hall violation: " + std::to_string(d.nodes.size()) + " domain orbits share " +
                        std::to_string(d.neighbourhood) + " admissible codomain orbits";
      if (cod_complete || cod_cut_sound) return unsat(why, {{"hall_violator", hv}});
      return inconclusive(why + " within the truncated codomain");
    }
  }
  if (surj) {
    const auto& radj = inj ? radj_eq : radj_any;
    auto d = saturate(radj, need_r, match_r, match_l);
    if (d.found) {
      json hv = {{"side", "codomain"},
                 {"size", d.nodes.size()},
                 {"neighbourhood", d.neighbourhood},
                 {"orbits", orbit_list(R, d.nodes)}};
      std::string why = "Hall violation: " + std::to_string(d.nodes.size()) + " codomain orbits reachable from " +
                        std::to_string(d.neighbourhood) + " domain orbits";
      if (surj_sound) return unsat(why, {{"hall_violator", hv}});
      return inconclusive(why + "; the pool does not bound every preimage");
    }
  }

  // Assemble the orbit table.
  TableEval te{p, {}};
  std::vector<std::pair<Element, Element>> graph;
  for (std::size_t i = 0; i < L.orbits.size(); ++i) {
    std::size_t j = match_l[i];
    Element y = j != kNone ? (inj ? pick_eq[i].at(j) : pick_any[i].at(j)) : pick_any[i].begin()->second;
    te.table.emplace(L.orbits[i].rep, y);
    graph.emplace_back(L.orbits[i].rep, y);
  }

  FsMapWitness w;
  w.domain = Carrier::of(X);
  w.codomain = Carrier::of(Y);
  w.rule = "orbit-table";
  w.params = {finmap(graph)};
  w.support = S;
  bool total = ax && *ax <= nfresh && dom_complete;
  if (!total) w.fresh_range = nfresh;
  Evidence ev = Evidence::CheckedByEnumeration;
  if (inj) w.cert.injective = ev;
  if (surj) w.cert.surjective = total && cod_complete && ay && *ay + *ax <= nfresh ? ev : Evidence::Unverified;
  w.fn = te;

  std::mt19937_64 rng(0x5eed);
  auto eq = equivariance_check(w, 200, rng);
  if (!eq.ok) throw std::logic_error("orbit table failed its equivariance check");
  if (inj) {
    std::vector<Element> probe;
    std::size_t stride = std::max<std::size_t>(1, dom.elements.size() / 20'000);
    for (std::size_t k = 0; k < dom.elements.size(); k += stride) probe.push_back(dom.elements[k]);
    if (!injective_on(w, probe)) throw std::logic_error("orbit table is not injective");
  }
  if (surj)
    for (std::size_t j = 0; j < R.orbits.size(); ++j) {
      if (!need_r[j]) continue;
      std::size_t i = match_r[j];
      if (i == kNone || orbit_canon(eval(w, L.orbits[i].rep), p.F) != R.orbits[j].rep)
        throw std::logic_error("orbit table misses a codomain orbit");
    }

  r.outcome = SearchOutcome::Witness;
  r.witness = w;
  r.record = base_record("witness");
  r.record["pool"] = r.pool_size;
  r.record["domain_orbits"] = r.domain_orbits;
  r.record["codomain_orbits"] = r.codomain_orbits;
  r.record["partial"] = !total;
  json table = json::array();
  for (const auto& [x, y] : graph) table.push_back({to_string(x), to_string(y)});
  r.record["table"] = table;
  return r;
}

std::string_view rel_name(RelKind k) {
  switch (k) {
    case RelKind::Leq: return "leq";
    case RelKind::LeqStar: return "leq*";
    case RelKind::Eq: return "eq";
  }
  return "?";
}

std::optional<CardRelation> decide_relation(RelKind kind, const SetExpr& x, const SetExpr& y,
                                            std::size_t max_support, const SearchOptions& opts) {
  Want want = kind == RelKind::Leq ? Want::Injective : kind == RelKind::Eq ? Want::Bijective : Want::Surjective;
  // x ≤* y asks for a surjection y → x.
  const SetExpr& dom = kind == RelKind::LeqStar ? y : x;
  const SetExpr& cod = kind == RelKind::LeqStar ? x : y;
  json certs = json::array();
  bool all_unsat = true;
  for (std::size_t k = 0; k <= max_support; ++k) {
    AtomSet S;
    for (std::uint64_t i = 0; i < k; ++i) S.insert(atom(i));
    auto r = find_supported_map(dom, cod, S, want, opts);
    if (r.outcome == SearchOutcome::Witness) return CardRelation{kind, x, y, *r.witness};
    if (r.outcome != SearchOutcome::Unsat) all_unsat = false;
    certs.push_back(r.record);
  }
  if (!all_unsat) return std::nullopt;
  Refutation ref{"no S-supported " + std::string(want_name(want)) + " map for any |S| <= " +
                     std::to_string(max_support),
                 certs};
  return CardRelation{kind, x, y, ref};
}

json to_json(const CardRelation& r) {
  json j = {{"relation", std::string(rel_name(r.kind))},
            {"left", to_string(r.left)},
            {"right", to_string(r.right)},
            {"holds", r.holds()}};
  if (auto* w = std::get_if<FsMapWitness>(&r.evidence)) j["witness"] = to_json(*w);
  else {
    const auto& ref = std::get<Refutation>(r.evidence);
    j["refutation"] = {{"reason", ref.reason}, {"certificates", ref.certificate}};
  }
  return j;
}

}  // namespace fsmkit
