#include "fsmkit/infinity.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "fsmkit/countability.hpp"

namespace fsmkit {

namespace {

using namespace u;

AtomSet first(std::size_t k) {
  AtomSet s;
  for (std::size_t i = 0; i < k; ++i) s.insert(atom(i));
  return s;
}

std::vector<Element> sample_slice(const SetExpr& e, std::size_t k, std::uint64_t nb = 2) {
  try {
    Slice s = enumerate_slice(e, first(k), {nb, 200'000});
    if (s.status == SliceStatus::OverBudget) return {};
    return std::move(s.elements);
  } catch (const Unsupported&) {
    return {};
  }
}

std::optional<Element> sample_element(const SetExpr& e) {
  for (std::size_t k = 0; k <= 2; ++k) {
    auto xs = sample_slice(e, k);
    if (!xs.empty()) return xs.front();
  }
  return std::nullopt;
}

// A seed with nonempty support, so that renamings give distinct members.
std::optional<Element> atom_seed(const SetExpr& e, std::optional<bool> odd = std::nullopt) {
  for (std::size_t k = 1; k <= 3; ++k)
    for (const auto& x : sample_slice(e, k))
      if (support_size(x) > 0 && (!odd || (chain_size(x) % 2 == 1) == *odd)) return x;
  return std::nullopt;
}

Element rename_fresh(const Element& x, std::uint64_t block) {
  std::map<Atom, Atom> m;
  std::uint64_t j = 0;
  for (Atom a : support(x)) m[a] = atom(1000 + block * 64 + j++);
  return map_atoms(x, [&m](Atom a) {
    auto it = m.find(a);
    return it == m.end() ? a : it->second;
  });
}

Element empty_in(const SetExpr& k) {
  if (k.kind() == SetKind::Sum) return sum_set(empty_in(k.kid(0)), empty_in(k.kid(1)));
  if (k.kind() == SetKind::Naturals) return nat_set_finite({});
  return finset({});
}

// The finite subset xs of k, in the representation ℘fs(k) uses.
Element set_in(const SetExpr& k, const std::vector<Element>& xs) {
  if (k.kind() == SetKind::Sum) {
    std::vector<Element> l, r;
    for (const auto& x : xs) (x.kind() == Kind::InL ? l : r).push_back(x.kind() == Kind::InL ? x.as<el::InL>().v : x.as<el::InR>().v);
    return sum_set(set_in(k.kid(0), l), set_in(k.kid(1), r));
  }
  if (k.kind() == SetKind::Naturals) {
    std::vector<std::uint64_t> ns;
    for (const auto& x : xs) ns.push_back(x.as<el::Nat>().n);
    return nat_set_finite(ns);
  }
  return finset(xs);
}

std::optional<std::vector<Element>> distinct_members(const SetExpr& e, std::size_t n) {
  auto seed = atom_seed(e);
  if (!seed) return std::nullopt;
  std::vector<Element> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(rename_fresh(*seed, i));
  return out;
}

bool is(const SetExpr& e, SetKind k) { return e.kind() == k; }

struct Seq {
  std::function<Element(std::uint64_t)> gen;
  AtomSet support;
  std::string rule;
};

std::optional<Seq> uniform_sequence(const SetExpr& e) {
  switch (e.kind()) {
    case SetKind::Naturals:
      return Seq{[](std::uint64_t n) { return nat(n); }, {}, "n"};
    case SetKind::Sum:
      if (auto s = uniform_sequence(e.kid(0))) {
        auto g = s->gen;
        return Seq{[g](std::uint64_t n) { return inl(g(n)); }, s->support, "inl(" + s->rule + ")"};
      }
      if (auto s = uniform_sequence(e.kid(1))) {
        auto g = s->gen;
        return Seq{[g](std::uint64_t n) { return inr(g(n)); }, s->support, "inr(" + s->rule + ")"};
      }
      return std::nullopt;
    case SetKind::Prod:
      for (int side = 0; side < 2; ++side) {
        auto s = uniform_sequence(e.kid(side));
        auto other = sample_element(e.kid(1 - side));
        if (!s || !other) continue;
        auto g = s->gen;
        Element y = *other;
        AtomSet sup = s->support;
        for (Atom a : support(y)) sup.insert(a);
        if (side == 0)
          return Seq{[g, y](std::uint64_t n) { return pair(g(n), y); }, sup, "(" + s->rule + ", " + to_string(y) + ")"};
        return Seq{[g, y](std::uint64_t n) { return pair(y, g(n)); }, sup, "(" + to_string(y) + ", " + s->rule + ")"};
      }
      return std::nullopt;
    case SetKind::Tuples: {
      auto x = sample_element(e.kid(0));
      if (!x) return std::nullopt;
      Element x0 = *x;
      return Seq{[x0](std::uint64_t n) { return tuple(std::vector<Element>(n, x0)); }, support(x0),
                 "n copies of " + to_string(x0)};
    }
    case SetKind::InjTuples:
      if (auto s = uniform_sequence(e.kid(0))) {
        auto g = s->gen;
        std::uint64_t skip = e.n();
        return Seq{[g, skip](std::uint64_t n) {
                     std::vector<Element> xs;
                     for (std::uint64_t i = 0; i < n + skip; ++i) xs.push_back(g(i));
                     return tuple(xs);
                   },
                   s->support, "prefixes of " + s->rule};
      }
      return std::nullopt;
    case SetKind::FinPow:
    case SetKind::FsPow: {
      const SetExpr& k = e.kid(0);
      if (auto s = uniform_sequence(k)) {
        auto g = s->gen;
        return Seq{[g, k](std::uint64_t n) { return set_in(k, {g(n)}); }, s->support, "{" + s->rule + "}"};
      }
      // n ↦ the set of n-sized subsets of A
      if (is(e, SetKind::FsPow) && subset_of(fin_pow(atoms()), k))
        return Seq{[](std::uint64_t n) { return universe(nsized(atoms(), n)); }, {}, "℘n(A)"};
      return std::nullopt;
    }
    case SetKind::Fn:
      if (is(e.kid(0), SetKind::Atoms)) {
        if (auto s = uniform_sequence(e.kid(1))) {
          auto g = s->gen;
          return Seq{[g](std::uint64_t n) { return const_fn(g(n)); }, s->support, "constant " + s->rule};
        }
      }
      if (is(e.kid(0), SetKind::Naturals) && is(e.kid(1), SetKind::Atoms)) {
        Atom a = atom(0), b = atom(1);
        return Seq{[a, b](std::uint64_t n) { return atom_seq(std::vector<Atom>(n, b), {a}); }, {a, b}, "b^n a^ω"};
      }
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

// An element of e whose chain size exceeds n.
std::optional<Element> big_element(const SetExpr& e, std::uint64_t n) {
  switch (e.kind()) {
    case SetKind::Naturals:
      return nat(n + 1);
    case SetKind::Sum:
      if (auto b = big_element(e.kid(0), n)) return inl(*b);
      if (auto b = big_element(e.kid(1), n)) return inr(*b);
      return std::nullopt;
    case SetKind::Prod:
      if (auto b = big_element(e.kid(0), n))
        if (auto y = sample_element(e.kid(1))) return pair(*b, *y);
      if (auto b = big_element(e.kid(1), n))
        if (auto x = sample_element(e.kid(0))) return pair(*x, *b);
      return std::nullopt;
    case SetKind::FinPow:
    case SetKind::FsPow: {
      const SetExpr& k = e.kid(0);
      if (auto xs = distinct_members(k, n + 1)) return set_in(k, *xs);
      if (is(k, SetKind::Naturals)) {
        std::vector<std::uint64_t> ns;
        for (std::uint64_t i = 0; i <= n; ++i) ns.push_back(i);
        return nat_set_finite(ns);
      }
      if (auto b = big_element(k, n)) return set_in(k, {*b});
      return std::nullopt;
    }
    case SetKind::CofinPow:
      return cofin(first(n + 1));
    case SetKind::Tuples:
    case SetKind::InjTuples: {
      auto xs = distinct_members(e.kid(0), n + 1);
      if (!xs) return std::nullopt;
      return tuple(*xs);
    }
    case SetKind::Fn: {
      const SetExpr& y = e.kid(1);
      if (is(e.kid(0), SetKind::Naturals) && is(y, SetKind::Atoms)) {
        std::vector<Atom> pre;
        for (std::uint64_t i = 0; i <= n; ++i) pre.push_back(atom(i));
        return atom_seq(pre, {atom(0)});
      }
      if (!is(e.kid(0), SetKind::Atoms)) return std::nullopt;
      std::vector<std::pair<Atom, Element>> exc;
      if (is(y, SetKind::Atoms)) {
        // a cyclic shift of n+2 atoms, identity elsewhere
        for (std::uint64_t i = 0; i < n + 2; ++i) exc.emplace_back(atom(i), mk_atom(atom((i + 1) % (n + 2))));
        return atom_fn(exc, mk_atom(kHole));
      }
      auto ys = sample_slice(y, 1);
      std::optional<Element> t, v;
      for (const auto& c : ys)
        if (!t && support_size(c) == 0) t = c;
      for (const auto& c : ys)
        if (t && c != *t) {
          v = c;
          break;
        }
      if (!t || !v) return std::nullopt;
      for (std::uint64_t i = 0; i <= n; ++i)
        exc.emplace_back(atom(i), map_atoms(*v, [i](Atom a) { return a == atom(0) ? atom(i) : a; }));
      return atom_fn(exc, *t);
    }
    default:
      return std::nullopt;
  }
}

json support_json(const AtomSet& s) { return atoms_json(s); }

// Oracle count of S-supported elements, rephrasing universes without an
// element representation through equivariant bijections.
std::optional<std::pair<std::uint64_t, std::string>> enumerated_count(const SetExpr& e, const AtomSet& S) {
  try {
    auto v = enumerate_supported(e, S);
    if (auto* xs = std::get_if<std::vector<Element>>(&v)) return std::make_pair<std::uint64_t, std::string>(xs->size(), "");
    return std::nullopt;
  } catch (const Unsupported&) {
  }
  // ℘fs(A × Y) ≅ (℘fs(Y))^A_fs by currying
  if (is(e, SetKind::FsPow) && is(e.kid(0), SetKind::Prod) && is(e.kid(0).kid(0), SetKind::Atoms)) {
    SetExpr curried = fn(atoms(), fs_pow(e.kid(0).kid(1)));
    if (auto r = enumerated_count(curried, S)) return std::make_pair(r->first, to_string(curried));
  }
  return std::nullopt;
}

// Finitely many S-supported elements for each sampled S.
std::optional<Refutation> counting_refutation(const SetExpr& e, const InfinityConfig& cfg, const std::string& claim) {
  if (!slice_finite(e)) return std::nullopt;
  json rows = json::array();
  std::size_t top = std::max<std::size_t>(2, cfg.max_support);
  for (std::size_t k = 0; k <= top; ++k) {
    AtomSet S = first(k);
    auto c = count_supported(e, S);
    if (!c) return std::nullopt;
    json row = {{"support", support_json(S)}, {"count", *c}};
    if (auto en = enumerated_count(e, S)) {
      if (en->first != *c)
        throw std::logic_error("count_supported(" + to_string(e) + ") disagrees with enumeration at |S|=" +
                               std::to_string(k));
      row["enumerated"] = en->first;
      if (!en->second.empty()) row["enumerated_via"] = en->second;
    } else {
      row["enumerated"] = nullptr;
    }
    rows.push_back(row);
  }
  Refutation r;
  r.reason = claim;
  r.certificate = {{"route", "counting"}, {"universe", to_string(e)}, {"counts", rows}};
  return r;
}

std::string short_rule(const std::string& s) { return s.size() > 40 ? s.substr(0, 40) : s; }

// ℕ × ℕ → ℕ, (m,n) ↦ 2^m 3^n made bijective against n ↦ (n,0).
FsMapWitness nat_square_bijection() {
  SetExpr N = naturals(), NN = prod(naturals(), naturals());
  FsMapWitness f;
  f.domain = Carrier::of(NN);
  f.codomain = Carrier::of(N);
  f.rule = "2^m 3^n";
  f.cert.injective = Evidence::ProvedByConstruction;
  f.fn = [](const Element& x) {
    const auto& p = x.as<el::Pair>();
    try {
      return nat(pairing(p.first.as<el::Nat>().n, p.second.as<el::Nat>().n));
    } catch (const std::overflow_error&) {
      throw DomainError(to_string(x) + " is outside the representable range");
    }
  };
  f.preimage = [](const Element& y) -> std::optional<Element> {
    if (y.kind() != Kind::Nat) return std::nullopt;
    try {
      auto [m, n] = unpair_check(y.as<el::Nat>().n);
      return pair(nat(m), nat(n));
    } catch (const NotInRange&) {
      return std::nullopt;
    }
  };
  FsMapWitness g;
  g.domain = Carrier::of(N);
  g.codomain = Carrier::of(NN);
  g.rule = "n -> (n,0)";
  g.cert.injective = Evidence::ProvedByConstruction;
  g.fn = [](const Element& x) { return pair(x, nat(0)); };
  g.preimage = [](const Element& y) -> std::optional<Element> {
    if (y.kind() != Kind::Pair || y.as<el::Pair>().second != nat(0)) return std::nullopt;
    return y.as<el::Pair>().first;
  };
  auto h = csb_traced(f, g);
  h.rule = "csb(2^m 3^n, n -> (n,0))";
  return h;
}

Element interleave(const Element& f, const Element& g) {
  const auto& a = f.as<el::AtomSeq>();
  const auto& b = g.as<el::AtomSeq>();
  std::size_t p = std::max(a.prefix.size(), b.prefix.size());
  std::size_t c = std::lcm(a.cycle.size(), b.cycle.size());
  std::vector<Atom> pre, cyc;
  for (std::size_t k = 0; k < 2 * p; ++k) pre.push_back(seq_at(k % 2 ? g : f, k / 2));
  for (std::size_t k = 2 * p; k < 2 * (p + c); ++k) cyc.push_back(seq_at(k % 2 ? g : f, k / 2));
  return atom_seq(pre, cyc);
}

Element deinterleave(const Element& h, std::uint64_t parity) {
  const auto& s = h.as<el::AtomSeq>();
  std::size_t p = s.prefix.size(), c = s.cycle.size();
  std::vector<Atom> pre, cyc;
  for (std::size_t n = 0; n < p; ++n) pre.push_back(seq_at(h, 2 * n + parity));
  for (std::size_t n = p; n < p + c; ++n) cyc.push_back(seq_at(h, 2 * n + parity));
  return atom_seq(pre, cyc);
}

// Pointwise application of a bijection ℕ × ℕ → ℕ to functions A → ℕ.
Element pointwise_pair(const FsMapWitness& nb, const Element& f, const Element& g) {
  const auto& F = f.as<el::AtomFn>();
  const auto& G = g.as<el::AtomFn>();
  std::set<Atom> keys;
  for (const auto& kv : F.exceptions) keys.insert(kv.first);
  for (const auto& kv : G.exceptions) keys.insert(kv.first);
  std::vector<std::pair<Atom, Element>> exc;
  for (Atom a : keys) exc.emplace_back(a, eval(nb, pair(fn_apply(f, a), fn_apply(g, a))));
  return atom_fn(exc, eval(nb, pair(F.tail, G.tail)));
}

std::optional<std::pair<Element, Element>> pointwise_unpair(const FsMapWitness& nb, const Element& h) {
  if (h.kind() != Kind::AtomFn) return std::nullopt;
  const auto& H = h.as<el::AtomFn>();
  if (H.tail.kind() != Kind::Nat) return std::nullopt;
  std::vector<std::pair<Atom, Element>> fe, ge;
  for (const auto& [a, v] : H.exceptions) {
    auto p = nb.preimage(v);
    if (!p) return std::nullopt;
    fe.emplace_back(a, p->as<el::Pair>().first);
    ge.emplace_back(a, p->as<el::Pair>().second);
  }
  auto t = nb.preimage(H.tail);
  if (!t) return std::nullopt;
  return std::make_pair(atom_fn(fe, t->as<el::Pair>().first), atom_fn(ge, t->as<el::Pair>().second));
}

FsMapWitness make_bijection(const SetExpr& dom, const SetExpr& cod, std::string rule, AtomSet support,
                            std::function<Element(const Element&)> fn,
                            std::function<std::optional<Element>(const Element&)> pre) {
  FsMapWitness w;
  w.domain = Carrier::of(dom);
  w.codomain = Carrier::of(cod);
  w.rule = std::move(rule);
  w.support = std::move(support);
  w.cert = {Evidence::ProvedByConstruction, Evidence::ProvedByConstruction};
  w.fn = std::move(fn);
  w.preimage = [pre, cod](const Element& y) -> std::optional<Element> {
    if (!member(y, cod)) return std::nullopt;
    return pre(y);
  };
  return w;
}

std::optional<FsMapWitness> tarski1_construction(const SetExpr& e) {
  SetExpr sq = prod(e, e);
  if (is(e, SetKind::Naturals)) return nat_square_bijection();
  if (is(e, SetKind::Fn) && is(e.kid(0), SetKind::Naturals) && is(e.kid(1), SetKind::Atoms))
    return make_bijection(
        sq, e, "interleave", {},
        [](const Element& x) { return interleave(x.as<el::Pair>().first, x.as<el::Pair>().second); },
        [](const Element& y) -> std::optional<Element> { return pair(deinterleave(y, 0), deinterleave(y, 1)); });
  if (is(e, SetKind::Fn) && is(e.kid(0), SetKind::Atoms) && is(e.kid(1), SetKind::Naturals)) {
    auto nb = nat_square_bijection();
    return make_bijection(
        sq, e, "pointwise " + nb.rule, {},
        [nb](const Element& x) { return pointwise_pair(nb, x.as<el::Pair>().first, x.as<el::Pair>().second); },
        [nb](const Element& y) -> std::optional<Element> {
          auto p = pointwise_unpair(nb, y);
          if (!p) return std::nullopt;
          return pair(p->first, p->second);
        });
  }
  return std::nullopt;
}

// Shift n ↦ n+1 on the ℕ side and put the tag in the freed slot 0.
Element natset_push(const Element& m, bool bit) {
  const auto& s = m.as<el::NatSet>();
  std::vector<bool> pre{bit};
  pre.insert(pre.end(), s.prefix.begin(), s.prefix.end());
  return nat_set(pre, s.cycle);
}
std::pair<bool, Element> natset_pop(const Element& m) {
  const auto& s = m.as<el::NatSet>();
  if (!s.prefix.empty()) return {s.prefix[0], nat_set({s.prefix.begin() + 1, s.prefix.end()}, s.cycle)};
  std::vector<bool> cyc(s.cycle.begin() + 1, s.cycle.end());
  cyc.push_back(s.cycle[0]);
  return {s.cycle[0], nat_set({}, cyc)};
}

std::optional<FsMapWitness> tarski3_construction(const SetExpr& e) {
  SetExpr two = sum(e, e);
  auto tag = [](const Element& x) { return std::make_pair(x.kind() == Kind::InR, x.kind() == Kind::InL ? x.as<el::InL>().v : x.as<el::InR>().v); };
  if (is(e, SetKind::Naturals))
    return make_bijection(
        two, e, "parity", {},
        [tag](const Element& x) {
          auto [i, v] = tag(x);
          return nat(2 * v.as<el::Nat>().n + i);
        },
        [](const Element& y) -> std::optional<Element> {
          auto n = y.as<el::Nat>().n;
          return n % 2 ? inr(nat(n / 2)) : inl(nat(n / 2));
        });
  for (int side = 0; side < 2; ++side) {
    if (!is(e, SetKind::Prod) || !is(e.kid(side), SetKind::Naturals)) continue;
    auto get = [side](const Element& p) { return side ? p.as<el::Pair>().second : p.as<el::Pair>().first; };
    auto put = [side](const Element& p, Element n) {
      return side ? pair(p.as<el::Pair>().first, n) : pair(n, p.as<el::Pair>().second);
    };
    return make_bijection(
        two, e, "parity on the ℕ factor", {},
        [tag, get, put](const Element& x) {
          auto [i, v] = tag(x);
          return put(v, nat(2 * get(v).as<el::Nat>().n + i));
        },
        [get, put](const Element& y) -> std::optional<Element> {
          auto n = get(y).as<el::Nat>().n;
          Element v = put(y, nat(n / 2));
          return n % 2 ? inr(v) : inl(v);
        });
  }
  // ℘fs(ℕ) and ℘fs(L + ℕ): slot 0 of the shifted ℕ part records the tag
  if (is(e, SetKind::FsPow) && (is(e.kid(0), SetKind::Naturals) ||
                                (is(e.kid(0), SetKind::Sum) && is(e.kid(0).kid(1), SetKind::Naturals)))) {
    bool split = is(e.kid(0), SetKind::Sum);
    return make_bijection(
        two, e, "shift ℕ by one, tag in slot 0", {},
        [tag, split](const Element& x) {
          auto [i, v] = tag(x);
          if (!split) return natset_push(v, i);
          const auto& s = v.as<el::SumSet>();
          return sum_set(s.left, natset_push(s.right, i));
        },
        [split](const Element& y) -> std::optional<Element> {
          Element m = split ? y.as<el::SumSet>().right : y;
          auto [i, rest] = natset_pop(m);
          Element v = split ? sum_set(y.as<el::SumSet>().left, rest) : rest;
          return i ? inr(v) : inl(v);
        });
  }
  // from a square bijection: X + X ↪ X × X ≅ X, then Schröder–Bernstein against inl
  if (auto sq = tarski1_construction(e)) {
    auto xs = sample_slice(e, 2);
    std::optional<Element> x1, x2;
    for (const auto& x : xs) {
      if (!x1) x1 = x;
      else if (!x2 && x != *x1) x2 = x;
    }
    if (!x2) return std::nullopt;
    auto psi = *sq;
    Element p1 = *x1, p2 = *x2;
    AtomSet sup = psi.support;
    for (const auto* x : {&p1, &p2})
      for (Atom a : support(*x)) sup.insert(a);
    FsMapWitness f;
    f.domain = Carrier::of(two);
    f.codomain = Carrier::of(e);
    f.rule = "x + x' -> psi(x, x1) | psi(x', x2)";
    f.params = {p1, p2};
    f.support = sup;
    f.cert.injective = Evidence::ProvedByConstruction;
    f.fn = [psi, p1, p2, tag](const Element& x) {
      auto [i, v] = tag(x);
      return eval(psi, pair(v, i ? p2 : p1));
    };
    f.preimage = [psi, p1, p2](const Element& y) -> std::optional<Element> {
      auto p = psi.preimage(y);
      if (!p) return std::nullopt;
      const auto& pr = p->as<el::Pair>();
      if (pr.second == p1) return inl(pr.first);
      if (pr.second == p2) return inr(pr.first);
      return std::nullopt;
    };
    FsMapWitness g;
    g.domain = Carrier::of(e);
    g.codomain = Carrier::of(two);
    g.rule = "inl";
    g.cert.injective = Evidence::ProvedByConstruction;
    g.fn = [](const Element& x) { return inl(x); };
    g.preimage = [](const Element& y) -> std::optional<Element> {
      if (y.kind() != Kind::InL) return std::nullopt;
      return y.as<el::InL>().v;
    };
    auto h = csb_traced(f, g);
    h.rule = "csb(" + f.rule + ", inl) over " + psi.rule;
    h.params = {p1, p2};
    return h;
  }
  return std::nullopt;
}

json check_bijection(const FsMapWitness& w, const SetExpr& dom, const SetExpr& cod, const InfinityConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  auto eq = equivariance_check(w, 200, rng);
  if (!eq.ok) throw std::logic_error(w.rule + " failed the equivariance check");
  auto xs = sample_slice(dom, 2, 3);
  if (!injective_on(w, xs)) throw std::logic_error(w.rule + " is not injective on the probe");
  for (const auto& x : xs)
    if (!member(eval(w, x), cod)) throw std::logic_error(w.rule + " leaves its codomain");
  auto ys = sample_slice(cod, 2, 3);
  for (const auto& y : ys) {
    auto x = w.preimage(y);
    if (!x || !member(*x, dom) || eval(w, *x) != y) throw std::logic_error(w.rule + " misses " + to_string(y));
  }
  return {{"equivariance_trials", eq.trials}, {"injective_on", xs.size()}, {"surjective_on", ys.size()}};
}

// Every support in the ladder has no injection x → y.
std::optional<Refutation> solver_refutation(const SetExpr& x, const SetExpr& y, const InfinityConfig& cfg,
                                            const std::string& claim, bool* inconclusive = nullptr) {
  json records = json::array();
  SearchOptions opts;
  opts.pool_bonus = cfg.pool_bonus;
  for (std::size_t k = 0; k <= cfg.max_support; ++k) {
    auto r = find_supported_map(x, y, first(k), Want::Injective, opts);
    if (r.outcome != SearchOutcome::Unsat) {
      if (inconclusive && r.outcome == SearchOutcome::Inconclusive) *inconclusive = true;
      return std::nullopt;
    }
    records.push_back(r.record);
  }
  Refutation ref;
  ref.reason = claim;
  ref.certificate = {{"route", "solver"}, {"max_support", cfg.max_support}, {"records", records}};
  return ref;
}

bool same(const SetExpr& e, const char* text) { return e == parse_setexpr(text); }

bool twice_powerset_of_atoms(const SetExpr& e) { return same(e, "Pfs(Pfs(A))"); }

}  // namespace

std::uint64_t chain_size(const Element& x) { return support_size(x) + nat_weight(x); }

std::string_view notion_name(Notion n) {
  switch (n) {
    case Notion::Usual: return "usual";
    case Notion::Covering: return "covering";
    case Notion::TarskiI: return "tarski-i";
    case Notion::TarskiII: return "tarski-ii";
    case Notion::TarskiIII: return "tarski-iii";
    case Notion::Mostowski: return "mostowski";
    case Notion::Dedekind: return "dedekind";
    case Notion::Ascending: return "ascending";
    case Notion::NonAmorphous: return "non-amorphous";
    case Notion::NonUniformlyAmorphous: return "non-uniformly-amorphous";
  }
  return "?";
}

std::string_view value_name(Value v) {
  switch (v) {
    case Value::Yes: return "yes";
    case Value::No: return "no";
    case Value::Unknown: return "unknown";
    case Value::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool validate(UniformSequenceWitness& w, std::size_t prefix, std::string* why) {
  std::set<Element> seen;
  for (std::uint64_t k = 0; k < prefix; ++k) {
    Element x = w.generator(k);
    std::string err;
    if (!member(x, w.universe)) err = to_string(x) + " is not in " + to_string(w.universe);
    else if (!is_supported_by(x, w.support)) err = to_string(x) + " is not supported by " + to_string(w.support);
    else if (!seen.insert(x).second) err = "term " + std::to_string(k) + " repeats";
    if (!err.empty()) {
      if (why) *why = err;
      return false;
    }
  }
  w.checked_prefix = prefix;
  return true;
}

bool validate(ChainWitness& w, std::size_t prefix, std::string* why) {
  for (std::uint64_t n = 0; n < prefix; ++n) {
    Element x = w.escape(n);
    std::string err;
    if (!member(x, w.universe)) err = to_string(x) + " is not in " + to_string(w.universe);
    else if (w.in_term(n, x)) err = "term " + std::to_string(n) + " already covers " + to_string(x);
    else if (!w.in_term(n + chain_size(x), x)) err = to_string(x) + " is in no later term";
    if (!err.empty()) {
      if (why) *why = err;
      return false;
    }
  }
  w.checked_prefix = prefix;
  return true;
}

bool validate(SplitWitness& w, std::size_t prefix, std::string* why) {
  std::set<Element> ls, rs;
  for (std::uint64_t k = 0; k < prefix; ++k) {
    Element l = w.left_gen(k), r = w.right_gen(k);
    std::string err;
    for (const auto* x : {&l, &r})
      if (err.empty() && !member(*x, w.universe)) err = to_string(*x) + " is not in " + to_string(w.universe);
    if (err.empty() && (!w.left(l) || w.right(l))) err = to_string(l) + " is not only on the left";
    if (err.empty() && (!w.right(r) || w.left(r))) err = to_string(r) + " is not only on the right";
    if (err.empty() && (!ls.insert(l).second || !rs.insert(r).second)) err = "members repeat at " + std::to_string(k);
    if (err.empty() && w.uniform && (!is_supported_by(l, w.support) || !is_supported_by(r, w.support)))
      err = "members are not uniformly supported";
    if (!err.empty()) {
      if (why) *why = err;
      return false;
    }
  }
  w.checked_prefix = prefix;
  return true;
}

Detected<UniformSequenceWitness> dedekind_witness(const SetExpr& e, const InfinityConfig& cfg) {
  if (auto s = uniform_sequence(e)) {
    UniformSequenceWitness w{e, s->rule, s->gen, s->support, 0};
    std::string why;
    if (!validate(w, std::max<std::size_t>(cfg.prefix, 20), &why))
      throw std::logic_error("sequence " + s->rule + " failed validation: " + why);
    return w;
  }
  if (auto r = counting_refutation(e, cfg, "no infinite uniformly supported subset")) return *r;
  return Unknown{"no uniform sequence and no finite slice count for " + to_string(e)};
}

Detected<FsMapWitness> tarski3_witness(const SetExpr& e, const InfinityConfig& cfg) {
  if (twice_powerset_of_atoms(e)) return Unknown{"no construction; the table entry is cited"};
  if (auto w = tarski3_construction(e)) {
    check_bijection(*w, sum(e, e), e, cfg);
    return *w;
  }
  auto d = dedekind_witness(e, cfg);
  if (auto* r = std::get_if<Refutation>(&d)) {
    Refutation out;
    out.reason = "not Dedekind infinite, and Tarski III implies Dedekind";
    out.certificate = {{"route", "implication"}, {"premise", r->certificate}};
    return out;
  }
  bool inc = false;
  if (auto r = solver_refutation(sum(e, e), e, cfg, "no injection X + X → X", &inc)) return *r;
  return Unknown{inc ? "solver inconclusive" : "no construction or refutation"};
}

Detected<FsMapWitness> tarski1_witness(const SetExpr& e, const InfinityConfig& cfg) {
  if (twice_powerset_of_atoms(e)) return Unknown{"left open by the table"};
  if (auto w = tarski1_construction(e)) {
    check_bijection(*w, prod(e, e), e, cfg);
    return *w;
  }
  auto t3 = tarski3_witness(e, cfg);
  if (auto* r = std::get_if<Refutation>(&t3)) {
    Refutation out;
    out.reason = "not Tarski III infinite, and Tarski I implies Tarski III";
    out.certificate = {{"route", "implication"}, {"premise", r->certificate}};
    return out;
  }
  // ℘fs(A + ℕ): a square bijection would give an injection A × A → ℘fs(A) × ℘fs(ℕ)
  if (same(e, "Pfs(A+N)")) {
    SetExpr a2 = parse_setexpr("A*A"), target = parse_setexpr("Pfs(A)*Pfs(N)");
    if (auto r = solver_refutation(a2, target, cfg, "no injection A × A → ℘fs(A) × ℘fs(ℕ)")) {
      r->certificate["reduction"] =
          "X × X ≅ ℘fs(A+A+ℕ+ℕ) ≅ ℘fs(A+A+ℕ); an injection into X restricts to ℘fs(A) × ℘fs(A) → ℘fs(A) × ℘fs(ℕ) "
          "and then to A × A";
      r->reason = "not Tarski I infinite: " + r->reason;
      return *r;
    }
  }
  bool inc = false;
  if (auto r = solver_refutation(prod(e, e), e, cfg, "no injection X × X → X", &inc)) return *r;
  return Unknown{inc ? "solver inconclusive" : "no construction or refutation"};
}

Detected<ChainWitness> ascending_witness(const SetExpr& e, const InfinityConfig& cfg) {
  if (big_element(e, 0)) {
    ChainWitness w;
    w.universe = e;
    w.rule = "X_n = {x : |supp x| + weight x <= n}";
    w.in_term = [](std::uint64_t n, const Element& x) { return chain_size(x) <= n; };
    w.escape = [e](std::uint64_t n) {
      auto b = big_element(e, n);
      if (!b) throw std::logic_error("no element of size above " + std::to_string(n));
      return *b;
    };
    std::string why;
    if (validate(w, std::max<std::size_t>(cfg.prefix, 20), &why)) return w;
    throw std::logic_error("chain for " + to_string(e) + " failed validation: " + why);
  }
  if (auto r = counting_refutation(fs_pow(e), cfg, "finitely many S-supported subsets, so every supported chain is stationary"))
    return *r;
  return Unknown{"no chain and no finite count of supported subsets"};
}

json to_json(const Verdict& v) {
  return {{"notion", std::string(notion_name(v.notion))},
          {"value", std::string(value_name(v.value))},
          {"method", v.method},
          {"id", v.id},
          {"detail", v.detail},
          {"evidence", v.evidence}};
}

namespace {

json first_terms(const std::function<Element(std::uint64_t)>& g, std::size_t n) {
  json a = json::array();
  for (std::uint64_t k = 0; k < n; ++k) a.push_back(to_string(g(k)));
  return a;
}

Verdict from_sequence(Notion n, const UniformSequenceWitness& w, const std::string& prefix) {
  Verdict v{n, Value::Yes, "witness", prefix + "seq:" + short_rule(w.rule), "uniform sequence " + w.rule, nullptr};
  v.evidence = {{"rule", w.rule},
                {"support", atoms_json(w.support)},
                {"checked_prefix", w.checked_prefix},
                {"first", first_terms(w.generator, 5)}};
  return v;
}

Verdict from_refutation(Notion n, const Refutation& r) {
  std::string route = r.certificate.value("route", "refutation");
  return {n, Value::No, route, std::string(notion_name(n)) + "/" + route, r.reason, r.certificate};
}

Verdict from_unknown(Notion n, const Unknown& u) {
  bool inc = u.reason.find("inconclusive") != std::string::npos;
  return {n, inc ? Value::Inconclusive : Value::Unknown, inc ? "solver" : "none",
          std::string(notion_name(n)) + "/unknown", u.reason, nullptr};
}

Verdict from_map(Notion n, const FsMapWitness& w, json checked) {
  json ev = to_json(w);
  ev["checked"] = std::move(checked);
  return {n, Value::Yes, "witness", std::string(notion_name(n)) + "/map:" + short_rule(w.rule), w.rule, ev};
}

template <class W, class F>
Verdict lift(Notion n, const Detected<W>& d, F yes) {
  if (auto* w = std::get_if<W>(&d)) return yes(*w);
  if (auto* r = std::get_if<Refutation>(&d)) return from_refutation(n, *r);
  return from_unknown(n, std::get<Unknown>(d));
}

}  // namespace

Verdict mostowski_verdict(const SetExpr& e, const InfinityConfig& cfg) {
  auto d = dedekind_witness(e, cfg);
  if (auto* w = std::get_if<UniformSequenceWitness>(&d)) {
    auto v = from_sequence(Notion::Mostowski, *w, "ordered-");
    v.detail = "terms ordered by index: " + w->rule;
    return v;
  }
  if (auto* r = std::get_if<Refutation>(&d)) {
    Refutation out = *r;
    out.reason = "an infinite supported total order would be uniformly supported";
    return from_refutation(Notion::Mostowski, out);
  }
  return from_unknown(Notion::Mostowski, std::get<Unknown>(d));
}

std::pair<Verdict, Verdict> amorphous_verdicts(const SetExpr& e, const InfinityConfig& cfg) {
  std::size_t prefix = std::max<std::size_t>(cfg.prefix, 20);
  Verdict na{Notion::NonAmorphous, Value::Unknown, "none", "non-amorphous/unknown", "", nullptr};
  std::optional<SplitWitness> split;
  if (is(e, SetKind::Sum)) {
    auto l = atom_seed(e.kid(0)), r = atom_seed(e.kid(1));
    auto ls = uniform_sequence(e.kid(0)), rs = uniform_sequence(e.kid(1));
    std::function<Element(std::uint64_t)> lg, rg;
    if (l) lg = [x = *l](std::uint64_t k) { return inl(rename_fresh(x, k)); };
    else if (ls) lg = [g = ls->gen](std::uint64_t k) { return inl(g(k)); };
    if (r) rg = [x = *r](std::uint64_t k) { return inr(rename_fresh(x, k)); };
    else if (rs) rg = [g = rs->gen](std::uint64_t k) { return inr(g(k)); };
    if (lg && rg)
      split = SplitWitness{e, "left and right summands",
                           [](const Element& x) { return x.kind() == Kind::InL; },
                           [](const Element& x) { return x.kind() == Kind::InR; }, lg, rg, {}, false, 0};
  }
  if (!split) {
    auto odd = atom_seed(e, true), even = atom_seed(e, false);
    if (odd && even)
      split = SplitWitness{e, "parity of |supp x| + weight x",
                           [](const Element& x) { return chain_size(x) % 2 == 1; },
                           [](const Element& x) { return chain_size(x) % 2 == 0; },
                           [x = *odd](std::uint64_t k) { return rename_fresh(x, k); },
                           [x = *even](std::uint64_t k) { return rename_fresh(x, k); }, {}, false, 0};
  }
  if (!split) {
    // {x : a0 ∈ supp x} and its complement, both infinite once a seed has two atoms
    std::optional<Element> seed;
    for (std::size_t k = 2; k <= 3 && !seed; ++k)
      for (const auto& x : sample_slice(e, k))
        if (support_size(x) >= 2) {
          seed = x;
          break;
        }
    if (seed) {
      Atom a = atom(0);
      auto with_a = [a](const Element& x) { return support(x).count(a) > 0; };
      split = SplitWitness{e, "whether a0 is in the support", with_a,
                           [with_a](const Element& x) { return !with_a(x); },
                           [x = *seed, a](std::uint64_t k) {
                             Element y = rename_fresh(x, k);
                             return act(transposition(*support(y).begin(), a), y);
                           },
                           [x = *seed](std::uint64_t k) { return rename_fresh(x, k); }, {a}, false, 0};
    }
  }
  if (split) {
    std::string why;
    if (!validate(*split, prefix, &why)) throw std::logic_error("split of " + to_string(e) + ": " + why);
    na = {Notion::NonAmorphous, Value::Yes, "witness", "non-amorphous/split:" + split->rule,
          "disjoint equivariant parts: " + split->rule, nullptr};
    na.evidence = {{"rule", split->rule},
                   {"checked_prefix", split->checked_prefix},
                   {"left", first_terms(split->left_gen, 3)},
                   {"right", first_terms(split->right_gen, 3)}};
  } else if (is(e, SetKind::Atoms)) {
    // every S-supported subset of A is finite or cofinite
    auto r = counting_refutation(fs_pow(e), cfg, "every supported subset of A is finite or cofinite");
    if (r) {
      for (std::size_t k = 0; k <= std::max<std::size_t>(2, cfg.max_support); ++k)
        for (const auto& s : sample_slice(fs_pow(e), k))
          if (s.kind() != Kind::FinSet && s.kind() != Kind::Cofin)
            throw std::logic_error(to_string(s) + " is neither finite nor cofinite");
      na = from_refutation(Notion::NonAmorphous, *r);
      na.method = "dichotomy";
      na.id = "non-amorphous/dichotomy";
    }
  }

  Verdict nua{Notion::NonUniformlyAmorphous, Value::Unknown, "none", "non-uniformly-amorphous/unknown", "", nullptr};
  auto d = dedekind_witness(e, cfg);
  if (auto* w = std::get_if<UniformSequenceWitness>(&d)) {
    auto g = w->generator;
    // even and odd terms; an index bound keeps membership decidable on the probe
    std::uint64_t bound = 4 * prefix;
    auto index_parity = [g, bound](const Element& x) -> int {
      for (std::uint64_t k = 0; k < bound; ++k)
        if (g(k) == x) return static_cast<int>(k % 2);
      return -1;
    };
    SplitWitness s{e, "even and odd terms of " + w->rule,
                   [index_parity](const Element& x) { return index_parity(x) == 0; },
                   [index_parity](const Element& x) { return index_parity(x) == 1; },
                   [g](std::uint64_t k) { return g(2 * k); }, [g](std::uint64_t k) { return g(2 * k + 1); },
                   w->support, true, 0};
    std::string why;
    if (!validate(s, prefix, &why)) throw std::logic_error("uniform split of " + to_string(e) + ": " + why);
    nua = {Notion::NonUniformlyAmorphous, Value::Yes, "witness", "non-uniformly-amorphous/split:" + short_rule(w->rule),
           s.rule, {{"support", atoms_json(w->support)}, {"checked_prefix", s.checked_prefix}}};
  } else if (auto* r = std::get_if<Refutation>(&d)) {
    nua = from_refutation(Notion::NonUniformlyAmorphous, *r);
  }
  return {na, nua};
}

Value ClassificationRow::at(Notion n) const {
  auto it = verdicts.find(n);
  return it == verdicts.end() ? Value::Unknown : it->second.value;
}

namespace {

Verdict usual_verdict(const SetExpr& e, const InfinityConfig& cfg, bool covering) {
  std::size_t prefix = std::max<std::size_t>(cfg.prefix, 20);
  std::vector<Element> xs;
  if (auto m = distinct_members(e, prefix + 1)) xs = *m;
  else if (auto s = uniform_sequence(e))
    for (std::uint64_t k = 0; k <= prefix; ++k) xs.push_back(s->gen(k));
  Notion n = covering ? Notion::Covering : Notion::Usual;
  if (xs.empty()) {
    if (auto c = count_supported(e, {}); c && slice_finite(e) && orbit_finite(e) && arity(e) == 0)
      return {n, Value::No, "counting", std::string(notion_name(n)) + "/finite", "finitely many elements",
              {{"count", *c}}};
    return {n, Value::Unknown, "none", std::string(notion_name(n)) + "/unknown", "no members found", nullptr};
  }
  std::set<Element> seen;
  for (const auto& x : xs)
    if (!member(x, e) || !seen.insert(x).second) throw std::logic_error("bad member list for " + to_string(e));
  if (!covering)
    return {n, Value::Yes, "witness", "usual/members", std::to_string(xs.size()) + " distinct members",
            {{"members", xs.size()}}};
  // ℘fin(X) is a directed family covering X; each finite Z_k misses the next member
  for (std::size_t k = 0; k + 1 < xs.size(); ++k)
    if (std::find(xs.begin(), xs.begin() + k + 1, xs[k + 1]) != xs.begin() + k + 1)
      throw std::logic_error("covering check failed");
  return {n, Value::Yes, "witness", "covering/finite-subsets",
          "the finite subsets form a directed cover with no covering member", {{"checked", xs.size() - 1}}};
}

Verdict tarski2_verdict(const Verdict& asc, const SetExpr& e, const InfinityConfig& cfg) {
  if (asc.value == Value::Yes)
    return {Notion::TarskiII, Value::Yes, "implication", "tarski-ii/from:" + asc.id,
            "the ascending chain has no maximal term", asc.evidence};
  if (auto r = counting_refutation(fs_pow(e), cfg,
                                   "supported subsets are finitely many per support, so every chain has a maximum"))
    return from_refutation(Notion::TarskiII, *r);
  return {Notion::TarskiII, Value::Unknown, "none", "tarski-ii/unknown", "", nullptr};
}

}  // namespace

ClassificationRow classify(const SetExpr& e, const InfinityConfig& cfg) {
  ClassificationRow row;
  row.label = display_name(e);
  row.expr = e;
  auto put = [&row](Verdict v) { row.verdicts[v.notion] = std::move(v); };

  put(usual_verdict(e, cfg, false));
  put(usual_verdict(e, cfg, true));

  auto ded = dedekind_witness(e, cfg);
  put(lift(Notion::Dedekind, ded, [](const UniformSequenceWitness& w) { return from_sequence(Notion::Dedekind, w, ""); }));
  put(mostowski_verdict(e, cfg));

  auto t3 = tarski3_witness(e, cfg);
  Verdict v3 = lift(Notion::TarskiIII, t3, [&](const FsMapWitness& w) {
    return from_map(Notion::TarskiIII, w, check_bijection(w, sum(e, e), e, cfg));
  });
  if (twice_powerset_of_atoms(e)) {
    v3 = {Notion::TarskiIII, Value::Yes, "cited", "tarski-iii/cited",
          "reported Yes by the table; its proof is deferred by the authors and no witness is constructed here",
          nullptr};
  }
  put(v3);
  auto t1 = tarski1_witness(e, cfg);
  Verdict v1 = lift(Notion::TarskiI, t1, [&](const FsMapWitness& w) {
    return from_map(Notion::TarskiI, w, check_bijection(w, prod(e, e), e, cfg));
  });
  if (twice_powerset_of_atoms(e)) {
    v1.method = "cited";
    v1.id = "tarski-i/open";
    v1.detail = "left open in the table";
  }
  put(v1);

  Verdict asc = lift(Notion::Ascending, ascending_witness(e, cfg), [](const ChainWitness& w) {
    Verdict v{Notion::Ascending, Value::Yes, "witness", "ascending/chain:size", w.rule, nullptr};
    v.evidence = {{"rule", w.rule}, {"checked_prefix", w.checked_prefix}, {"escapes", first_terms(w.escape, 3)}};
    return v;
  });
  put(asc);
  put(tarski2_verdict(asc, e, cfg));

  auto [na, nua] = amorphous_verdicts(e, cfg);
  put(na);
  put(nua);
  return row;
}

ClassificationRow classify(const CatalogRow& c, const InfinityConfig& cfg) {
  auto row = classify(c.expr, cfg);
  row.label = c.label;
  return row;
}

const std::vector<CatalogRow>& catalog() {
  static const std::vector<CatalogRow> rows = [] {
    constexpr Value Y = Value::Yes, N = Value::No, Q = Value::Unknown;
    std::vector<std::tuple<const char*, const char*, std::array<Value, 7>>> rows_in = {
        {"A", "A", {N, N, N, N, N, N, N}},
        {"A+A", "A + A", {N, N, N, N, N, N, Y}},
        {"A*A", "A × A", {N, N, N, N, N, N, Y}},
        {"Pfin(A)", "℘fin(A)", {N, N, N, N, Y, Y, Y}},
        {"Tinj(A)", "T_fin(A)", {N, N, N, N, Y, Y, Y}},
        {"Pfs(A)", "℘fs(A)", {N, N, N, N, Y, Y, Y}},
        {"Pfin(Pfs(A))", "℘fin(℘fs(A))", {N, N, N, N, Y, Y, Y}},
        {"Fn(A,A)", "A^A_fs", {N, N, N, N, Y, Y, Y}},
        {"Fn(A,Tinj(A))", "T_fin(A)^A_fs", {N, N, N, N, Y, Y, Y}},
        {"Fn(A,Pfs(A))", "℘fs(A)^A_fs", {N, N, N, N, Y, Y, Y}},
        {"A+N", "A ∪ ℕ", {N, N, Y, Y, Y, Y, Y}},
        {"A*N", "A × ℕ", {N, Y, Y, Y, Y, Y, Y}},
        {"Pfs(A+N)", "℘fs(A ∪ ℕ)", {N, Y, Y, Y, Y, Y, Y}},
        {"Pfs(Pfs(A))", "℘fs(℘fs(A))", {Q, Y, Y, Y, Y, Y, Y}},
        {"Fn(N,A)", "A^ℕ_fs", {Y, Y, Y, Y, Y, Y, Y}},
        {"Fn(A,N)", "ℕ^A_fs", {Y, Y, Y, Y, Y, Y, Y}},
    };
    std::vector<CatalogRow> out;
    for (auto& [expr, label, expected] : rows_in) out.push_back({label, parse_setexpr(expr), expected});
    return out;
  }();
  return rows;
}

const std::vector<Implication>& implications() {
  static const std::vector<Implication> arrows = {
      {Notion::TarskiI, Notion::TarskiIII},
      {Notion::TarskiIII, Notion::Dedekind},
      {Notion::Dedekind, Notion::Mostowski},
      {Notion::Dedekind, Notion::Ascending},
      {Notion::Mostowski, Notion::TarskiII},
      {Notion::Ascending, Notion::TarskiII},
      {Notion::TarskiII, Notion::Usual},
      {Notion::Mostowski, Notion::NonUniformlyAmorphous},
      {Notion::NonUniformlyAmorphous, Notion::NonAmorphous},
      {Notion::NonAmorphous, Notion::Usual},
      {Notion::Usual, Notion::Covering},
      {Notion::Covering, Notion::Usual},
  };
  return arrows;
}

std::vector<std::string> implication_violations(const ClassificationRow& row) {
  std::vector<std::string> out;
  for (const auto& [from, to] : implications())
    if (row.at(from) == Value::Yes && row.at(to) == Value::No)
      out.push_back(row.label + ": " + std::string(notion_name(from)) + " holds but " + std::string(notion_name(to)) +
                    " fails");
  return out;
}

TableReport build_table(const InfinityConfig& cfg) {
  TableReport t;
  for (const auto& c : catalog()) {
    auto row = classify(c, cfg);
    for (std::size_t i = 0; i < kTableColumns.size(); ++i) {
      Value got = row.at(kTableColumns[i]);
      if (got == Value::Inconclusive) ++t.inconclusive;
      else if (got != c.expected[i]) {
        ++t.mismatches;
        t.notes.push_back(c.label + " " + std::string(notion_name(kTableColumns[i])) + ": got " +
                          std::string(value_name(got)) + ", reference says " + std::string(value_name(c.expected[i])));
      }
    }
    for (auto& v : implication_violations(row)) t.notes.push_back(v);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string render_markdown(const TableReport& t) {
  static const char* heads[] = {"Tarski I", "Tarski III", "Ded.", "Most.", "Asc.", "Tarski II", "Non-amorph."};
  std::ostringstream os;
  os << "| Set |";
  for (auto* h : heads) os << ' ' << h << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < 7; ++i) os << "---|";
  os << '\n';
  bool cited = false;
  for (const auto& r : t.rows) {
    os << "| " << r.label << " |";
    for (Notion n : kTableColumns) {
      const auto& v = r.verdicts.at(n);
      std::string cell = v.value == Value::Yes ? "Yes" : v.value == Value::No ? "No" : v.value == Value::Unknown ? "?" : "inconclusive";
      if (v.method == "cited" && v.value == Value::Yes) {
        cell += "*";
        cited = true;
      }
      os << ' ' << cell << " |";
    }
    os << '\n';
  }
  if (cited) os << "\n\\* cited from the reference classification; no witness is constructed.\n";
  for (const auto& n : t.notes) os << "\n- " << n;
  if (!t.notes.empty()) os << '\n';
  return os.str();
}

json to_json(const TableReport& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json cells = json::object();
    for (const auto& [n, v] : r.verdicts) cells[std::string(notion_name(n))] = to_json(v);
    rows.push_back({{"set", r.label}, {"expr", to_string(r.expr)}, {"verdicts", cells}});
  }
  json cols = json::array();
  for (Notion n : kTableColumns) cols.push_back(std::string(notion_name(n)));
  return {{"columns", cols},
          {"rows", rows},
          {"mismatches", t.mismatches},
          {"inconclusive", t.inconclusive},
          {"notes", t.notes}};
}

}  // namespace fsmkit
