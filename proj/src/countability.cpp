#include "fsmkit/countability.hpp"

#include <algorithm>
#include <set>

namespace fsmkit {

std::uint64_t pairing(std::uint64_t m, std::uint64_t n) {
  constexpr std::uint64_t kMax = ~std::uint64_t{0};
  std::uint64_t p = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (p > kMax / 2) throw std::overflow_error("2^m 3^n exceeds 64 bits");
    p *= 2;
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    if (p > kMax / 3) throw std::overflow_error("2^m 3^n exceeds 64 bits");
    p *= 3;
  }
  return p;
}

std::pair<std::uint64_t, std::uint64_t> unpair_check(std::uint64_t p) {
  if (p == 0) throw NotInRange("0 is not of the form 2^m 3^n");
  std::uint64_t q = p, m = 0, n = 0;
  while (q % 2 == 0) q /= 2, ++m;
  while (q % 3 == 0) q /= 3, ++n;
  if (q != 1) throw NotInRange(std::to_string(p) + " has a prime factor other than 2 and 3");
  return {m, n};
}

namespace {

Carrier described(std::string label, std::function<bool(const Element&)> p, AtomSet atoms = {}) {
  Carrier c;
  c.label = std::move(label);
  c.restrict = std::move(p);
  c.atoms = std::move(atoms);
  return c;
}

}  // namespace

FsMapWitness surj_to_inj(const Enumeration& f, std::uint64_t search) {
  auto least = [f, search](const Element& y) -> std::optional<std::uint64_t> {
    for (std::uint64_t n = 0; n < search; ++n)
      if (f.at(n) == y) return n;
    return std::nullopt;
  };
  FsMapWitness g;
  g.domain = described(f.label, [least](const Element& y) { return least(y).has_value(); }, f.support);
  g.codomain = Carrier::of(u::naturals());
  g.rule = "min preimage";
  g.support = f.support;
  g.cert.injective = Evidence::ProvedByConstruction;
  g.fn = [least, label = f.label](const Element& y) {
    auto n = least(y);
    if (!n) throw DomainError(to_string(y) + " has no preimage among the searched arguments of " + label);
    return nat(*n);
  };
  g.preimage = [f, least](const Element& k) -> std::optional<Element> {
    if (k.kind() != Kind::Nat) return std::nullopt;
    Element y = f.at(k.as<el::Nat>().n);
    if (least(y) != k.as<el::Nat>().n) return std::nullopt;
    return y;
  };
  return g;
}

FsMapWitness surj_to_inj(const FsMapWitness& f, std::uint64_t search) {
  if (!f.domain.expr || f.domain.expr->kind() != SetKind::Naturals) throw PreconditionError("f must be defined on ℕ");
  auto g = surj_to_inj(Enumeration{f.codomain.describe(), [f](std::uint64_t n) { return eval(f, nat(n)); }, f.support},
                       search);
  g.domain = f.codomain;
  return g;
}

RankedBijection inj_to_bij(const FsMapWitness& g, const std::vector<Element>& members, std::size_t min_members,
                           std::uint64_t scan_limit) {
  if (g.cert.injective == Evidence::None || !g.preimage) throw PreconditionError("g must be injective");
  std::set<Element> distinct(members.begin(), members.end());
  if (distinct.size() < min_members)
    throw PreconditionError("only " + std::to_string(distinct.size()) + " distinct members; Y may be finite");
  auto in_image = [g](std::uint64_t k) { return g.preimage(nat(k)).has_value(); };
  RankedBijection r;
  r.to_nat.domain = g.domain;
  r.to_nat.codomain = Carrier::of(u::naturals());
  r.to_nat.rule = "rank of g(y)";
  r.to_nat.support = g.support;
  r.to_nat.cert = {Evidence::ProvedByConstruction, Evidence::ProvedByConstruction};
  r.to_nat.fn = [g, in_image](const Element& y) {
    std::uint64_t v = eval(g, y).as<el::Nat>().n, rank = 0;
    for (std::uint64_t k = 0; k < v; ++k) rank += in_image(k);
    return nat(rank);
  };
  // f(m) = min(Im g ∖ {f(0), ..., f(m-1)})
  auto nth = [g, in_image, scan_limit](std::uint64_t n) {
    std::uint64_t seen = 0;
    for (std::uint64_t k = 0; k < scan_limit; ++k)
      if (in_image(k) && seen++ == n) return *g.preimage(nat(k));
    throw Inconclusive("rank " + std::to_string(n) + " not reached below " + std::to_string(scan_limit));
  };
  r.to_nat.preimage = [nth](const Element& k) -> std::optional<Element> {
    if (k.kind() != Kind::Nat) return std::nullopt;
    return nth(k.as<el::Nat>().n);
  };
  r.from_nat = {"ranked " + g.domain.describe(), nth, g.support};
  return r;
}

Disjointified disjointify(const SubsetFamily& xs, const std::vector<Element>& probe, std::size_t length,
                          const AtomSet& universe_support, std::size_t window) {
  if (window == 0) window = 2 * length + 4;
  using Block = std::set<Element>;
  const Block all(probe.begin(), probe.end());
  std::vector<Block> terms(window);
  for (std::size_t k = 0; k < window; ++k)
    for (const auto& x : all)
      if (xs.contains(k, x)) terms[k].insert(x);
  auto minus = [](const Block& a, const Block& b) {
    Block out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  };
  auto many_after = [&](std::size_t from, const Block& used) {
    std::set<Block> seen;
    for (std::size_t k = from; k < window; ++k) seen.insert(minus(terms[k], used));
    return seen.size() >= 2;
  };

  Disjointified d;
  d.support = xs.support;
  d.support.insert(universe_support.begin(), universe_support.end());
  Block used;
  for (std::size_t n = 0; n < length; ++n) {
    if (!many_after(n, used)) throw Inconclusive("window exhausted before block " + std::to_string(n));
    std::optional<std::size_t> np;
    for (std::size_t k = n; k < window && !np; ++k)
      if (!minus(terms[k], used).empty() && !minus(minus(all, terms[k]), used).empty()) np = k;
    if (!np) throw Inconclusive("no admissible index for block " + std::to_string(n));
    Block inside_used = used;
    inside_used.insert(terms[*np].begin(), terms[*np].end());
    bool inside = many_after(*np + 1, inside_used);
    Block y = inside ? minus(terms[*np], used) : minus(minus(all, terms[*np]), used);
    used.insert(y.begin(), y.end());
    d.blocks.emplace_back(y.begin(), y.end());
    d.source.push_back(*np);
    d.from_term.push_back(inside);
  }
  return d;
}

FsMapWitness cut_from_cc(const std::vector<std::vector<Element>>& ordered_blocks, const AtomSet& family_support,
                         const AtomSet& order_support) {
  std::vector<Element> list;
  std::set<Element> seen;
  for (const auto& b : ordered_blocks) {
    if (b.empty()) throw PreconditionError("a block has no order");
    for (const auto& x : b)
      if (seen.insert(x).second) list.push_back(x);
  }
  if (list.empty()) throw PreconditionError("no blocks");
  FsMapWitness f;
  f.domain = Carrier::of(u::naturals());
  f.codomain = Carrier::finite(list);
  f.rule = "concatenated block orders";
  f.support = family_support;
  f.support.insert(order_support.begin(), order_support.end());
  f.cert.surjective = Evidence::CheckedByEnumeration;
  // past the listed blocks the enumeration wraps around
  f.fn = [list](const Element& n) { return list[n.as<el::Nat>().n % list.size()]; };
  return f;
}

std::vector<std::vector<Element>> canonical_orders(const std::vector<std::vector<Element>>& blocks) {
  auto out = blocks;
  for (auto& b : out) std::sort(b.begin(), b.end());
  return out;
}

std::vector<std::uint64_t> union_powers_indices(std::uint64_t pos) {
  if (pos >= (std::uint64_t{1} << 62)) throw std::overflow_error("position too large");
  // grade g = length + sum of indices; grade g holds 2^(g-1) tuples
  std::uint64_t g = 1;
  while ((std::uint64_t{1} << g) - 1 <= pos) ++g;
  std::uint64_t code = pos + 1 - (std::uint64_t{1} << (g - 1));
  std::vector<std::uint64_t> idx;
  std::uint64_t part = 1;
  for (std::uint64_t j = 1; j < g; ++j) {
    if (code >> (g - 1 - j) & 1) {
      idx.push_back(part - 1);
      part = 1;
    } else {
      ++part;
    }
  }
  idx.push_back(part - 1);
  return idx;
}

std::uint64_t union_powers_position(const std::vector<std::uint64_t>& idx) {
  if (idx.empty()) throw DomainError("the empty tuple is not listed");
  std::uint64_t g = 0;
  for (auto i : idx) {
    if (i > 62 || g + i + 1 > 63) throw std::overflow_error("tuple grade too large");
    g += i + 1;
  }
  std::uint64_t code = 0, s = 0;
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    s += idx[k] + 1;
    code |= std::uint64_t{1} << (g - 1 - s);
  }
  return (std::uint64_t{1} << (g - 1)) - 1 + code;
}

bool length_lex_precedes(const std::vector<std::uint64_t>& u, const std::vector<std::uint64_t>& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return u < v;
}

Enumeration union_powers_countable(const Enumeration& y) {
  if (!y.at) throw PreconditionError("Y needs an enumeration");
  auto at = y.at;
  return {"tuples over " + y.label,
          [at](std::uint64_t pos) {
            std::vector<Element> xs;
            for (auto i : union_powers_indices(pos)) xs.push_back(at(i));
            return tuple(xs);
          },
          y.support};
}

namespace {

// Cantor's pairing, an exact bijection ℕ × ℕ → ℕ.
std::uint64_t cantor(std::uint64_t i, std::uint64_t j) { return (i + j) * (i + j + 1) / 2 + j; }
std::pair<std::uint64_t, std::uint64_t> uncantor(std::uint64_t n) {
  std::uint64_t w = 0;
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  std::uint64_t j = n - w * (w + 1) / 2;
  return {w - j, j};
}

struct Listing {
  std::function<Element(std::uint64_t)> at;
  std::function<std::optional<std::uint64_t>(const Element&)> index;
};

std::optional<Listing> listing(const SetExpr& e) {
  switch (e.kind()) {
    case SetKind::Naturals:
      return Listing{[](std::uint64_t n) { return nat(n); },
                     [](const Element& x) -> std::optional<std::uint64_t> {
                       if (x.kind() != Kind::Nat) return std::nullopt;
                       return x.as<el::Nat>().n;
                     }};
    case SetKind::Sum: {
      auto l = listing(e.kid(0)), r = listing(e.kid(1));
      if (!l || !r) return std::nullopt;
      return Listing{[l, r](std::uint64_t n) { return n % 2 ? inr(r->at(n / 2)) : inl(l->at(n / 2)); },
                     [l, r](const Element& x) -> std::optional<std::uint64_t> {
                       if (x.kind() == Kind::InL) {
                         auto i = l->index(x.as<el::InL>().v);
                         if (i) return 2 * *i;
                       } else if (x.kind() == Kind::InR) {
                         auto i = r->index(x.as<el::InR>().v);
                         if (i) return 2 * *i + 1;
                       }
                       return std::nullopt;
                     }};
    }
    case SetKind::Prod: {
      auto a = listing(e.kid(0)), b = listing(e.kid(1));
      if (!a || !b) return std::nullopt;
      return Listing{[a, b](std::uint64_t n) {
                       auto [i, j] = uncantor(n);
                       return pair(a->at(i), b->at(j));
                     },
                     [a, b](const Element& x) -> std::optional<std::uint64_t> {
                       if (x.kind() != Kind::Pair) return std::nullopt;
                       auto i = a->index(x.as<el::Pair>().first);
                       auto j = b->index(x.as<el::Pair>().second);
                       if (!i || !j) return std::nullopt;
                       return cantor(*i, *j);
                     }};
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<CountabilityWitness> countability_witness(const SetExpr& e) {
  auto l = listing(e);
  if (!l) return std::nullopt;
  CountabilityWitness w;
  w.universe = e;
  Enumeration en{to_string(e), l->at, {}};
  w.surj_from_N = en;
  w.bij_with_N = en;
  FsMapWitness g;
  g.domain = Carrier::of(e);
  g.codomain = Carrier::of(u::naturals());
  g.rule = "position in the listing";
  g.cert = {Evidence::ProvedByConstruction, Evidence::ProvedByConstruction};
  g.fn = [l](const Element& x) { return nat(*l->index(x)); };
  g.preimage = [l](const Element& k) -> std::optional<Element> {
    if (k.kind() != Kind::Nat) return std::nullopt;
    return l->at(k.as<el::Nat>().n);
  };
  w.inj_to_N = g;
  return w;
}

}  // namespace fsmkit
