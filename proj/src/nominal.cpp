#include "fsmkit/nominal.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace fsmkit {

SupportReport verify_least_support(const Element& x, const AtomSet& claimed, unsigned probes,
                                   std::mt19937_64& rng) {
  SupportReport r;
  r.subject = x;
  r.support = claimed;
  AtomSet used = claimed;
  AtomSet sx = support(x);
  used.insert(sx.begin(), sx.end());

  Atom fresh = fresh_atom(used);
  for (Atom a : claimed) {
    ++r.probes_run;
    if (act(transposition(a, fresh), x) == x) r.counterexamples.emplace_back(a, fresh);
  }

  // Candidates outside the claim: unclaimed support atoms first, then fresh ones.
  std::vector<Atom> outside;
  for (Atom a : sx)
    if (!claimed.count(a)) outside.push_back(a);
  std::size_t systematic = outside.size();
  for (Atom f : fresh_atoms(used, 3)) outside.push_back(f);

  std::uniform_int_distribution<std::size_t> pick(0, outside.size() - 1);
  for (unsigned i = 0; i < probes; ++i) {
    Atom c, d;
    if (i < systematic) {
      c = outside[i];
      d = outside[systematic];
    } else {
      c = outside[pick(rng)];
      do d = outside[pick(rng)];
      while (d == c);
    }
    ++r.probes_run;
    if (act(transposition(c, d), x) != x) r.counterexamples.emplace_back(c, d);
  }
  r.verified = r.counterexamples.empty();
  return r;
}

namespace {

struct Gen {
  std::mt19937_64& rng;
  const RandomElementOptions& o;

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); }
  Atom atom(bool hole) {
    if (hole && below(3) == 0) return kHole;
    return Atom{below(o.atom_range)};
  }
  std::vector<Atom> atoms(std::size_t n, bool hole) {
    std::vector<Atom> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(atom(hole));
    return v;
  }
  std::vector<bool> bits(std::size_t n) {
    std::vector<bool> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(below(2));
    return v;
  }

  Element leaf(bool hole) {
    switch (below(5)) {
      case 0: return nat(below(o.nat_range));
      case 1: {
        auto v = atoms(below(o.max_width + 1), hole);
        return atom_tuple(v);
      }
      case 2: {
        auto v = atoms(below(o.max_width + 1), false);
        return cofin(AtomSet(v.begin(), v.end()));
      }
      case 3: return nat_set(bits(below(4)), bits(1 + below(3)));
      default: return mk_atom(atom(hole));
    }
  }

  Element any(unsigned depth, bool hole, bool fn) {
    if (depth == 0) return leaf(hole);
    switch (below(12)) {
      case 0: return pair(any(depth - 1, hole, fn), any(depth - 1, hole, fn));
      case 1: return inl(any(depth - 1, hole, fn));
      case 2: return inr(any(depth - 1, hole, fn));
      case 3: {
        std::vector<Element> v;
        for (std::size_t n = below(o.max_width + 1); n; --n) v.push_back(any(depth - 1, hole, fn));
        return finset(v);
      }
      case 4: {
        std::vector<Element> v;
        for (std::size_t n = below(o.max_width + 1); n; --n) v.push_back(any(depth - 1, hole, fn));
        return tuple(v);
      }
      case 5:
        if (fn && !hole) {
          std::map<Atom, Element> ex;
          for (std::size_t n = below(o.max_width + 1); n; --n) ex[atom(false)] = any(depth - 1, false, false);
          Element tail = any(depth - 1, true, false);
          if (tail.kind() == Kind::AtomFn) tail = mk_atom(kHole);
          return atom_fn({ex.begin(), ex.end()}, tail);
        }
        return leaf(hole);
      case 6: {
        if (hole) return leaf(hole);
        std::map<Element, Element> g;
        for (std::size_t n = below(o.max_width + 1); n; --n) g[any(depth - 1, hole, fn)] = any(depth - 1, hole, fn);
        return finmap({g.begin(), g.end()});
      }
      case 7: return atom_seq(atoms(below(3), false), atoms(1 + below(3), false));
      case 8: return sum_set(any(depth - 1, hole, fn), any(depth - 1, hole, fn));
      default: return leaf(hole);
    }
  }
};

}  // namespace

Element random_element(std::mt19937_64& rng, const RandomElementOptions& opts) {
  return Gen{rng, opts}.any(opts.max_depth, false, true);
}

FinPermutation random_permutation(std::mt19937_64& rng, std::uint64_t atom_range) {
  std::vector<Atom> dom;
  for (std::uint64_t i = 0; i < atom_range; ++i)
    if (std::uniform_int_distribution<int>(0, 1)(rng)) dom.push_back(Atom{i});
  std::vector<Atom> img = dom;
  std::shuffle(img.begin(), img.end(), rng);
  std::map<Atom, Atom> m;
  for (std::size_t i = 0; i < dom.size(); ++i) m[dom[i]] = img[i];
  return FinPermutation::from_map(m);
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("FSMKIT_SEED")) {
    char* end = nullptr;
    auto v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && end != s) return v;
  }
  return fallback;
}

}  // namespace fsmkit
