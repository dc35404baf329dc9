#include "fsmkit/atoms.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace fsmkit {

std::string to_string(Atom a) {
  if (a == kHole) return "_";
  return "a" + std::to_string(a.id);
}

std::string to_string(const AtomSet& s) {
  std::string out = "{";
  bool first = true;
  for (Atom a : s) {
    if (!first) out += ",";
    out += to_string(a);
    first = false;
  }
  return out + "}";
}

FinPermutation FinPermutation::from_map(const std::map<Atom, Atom>& m) {
  FinPermutation p;
  AtomSet values;
  for (auto [k, v] : m) {
    if (k == kHole || v == kHole)
      throw std::invalid_argument("permutation may not move the hole atom");
    if (!values.insert(v).second)
      throw std::invalid_argument("permutation map is not injective");
    if (k != v) p.moved_.emplace(k, v);
  }
  for (auto [k, v] : p.moved_) {
    if (!p.moved_.count(v))
      throw std::invalid_argument("permutation map is not closed on its carrier");
  }
  return p;
}

AtomSet FinPermutation::support() const {
  AtomSet s;
  for (auto& kv : moved_) s.insert(kv.first);
  return s;
}

FinPermutation identity() { return {}; }

FinPermutation transposition(Atom a, Atom b) {
  if (a == b) return {};
  return FinPermutation::from_map({{a, b}, {b, a}});
}

Atom apply(const FinPermutation& pi, Atom a) {
  auto it = pi.moved().find(a);
  return it == pi.moved().end() ? a : it->second;
}

AtomSet apply(const FinPermutation& pi, const AtomSet& s) {
  AtomSet out;
  for (Atom a : s) out.insert(apply(pi, a));
  return out;
}

FinPermutation compose(const FinPermutation& pi, const FinPermutation& rho) {
  std::map<Atom, Atom> m;
  for (auto& kv : rho.moved()) m[kv.first] = apply(pi, kv.second);
  for (auto& kv : pi.moved())
    if (!rho.moved().count(kv.first)) m[kv.first] = kv.second;
  return FinPermutation::from_map(m);
}

FinPermutation inverse(const FinPermutation& pi) {
  std::map<Atom, Atom> m;
  for (auto& kv : pi.moved()) m[kv.second] = kv.first;
  return FinPermutation::from_map(m);
}

FinPermutation extend_to_permutation(const std::map<Atom, Atom>& partial) {
  std::map<Atom, Atom> m = partial;
  AtomSet range;
  for (auto& kv : partial) range.insert(kv.second);
  std::vector<Atom> open_dom, open_rng;
  for (Atom r : range)
    if (!partial.count(r)) open_rng.push_back(r);
  for (auto& kv : partial)
    if (!range.count(kv.first)) open_dom.push_back(kv.first);
  for (std::size_t i = 0; i < open_rng.size(); ++i) m[open_rng[i]] = open_dom[i];
  return FinPermutation::from_map(m);
}

std::vector<std::vector<Atom>> cycles(const FinPermutation& pi) {
  std::vector<std::vector<Atom>> out;
  AtomSet seen;
  for (auto& kv : pi.moved()) {
    if (seen.count(kv.first)) continue;
    std::vector<Atom> c;
    Atom a = kv.first;
    do {
      c.push_back(a);
      seen.insert(a);
      a = apply(pi, a);
    } while (a != kv.first);
    out.push_back(std::move(c));
  }
  return out;
}

std::uint64_t perm_order(const FinPermutation& pi) {
  std::uint64_t n = 1;
  for (auto& c : cycles(pi)) n = std::lcm(n, static_cast<std::uint64_t>(c.size()));
  return n;
}

bool fixes(const FinPermutation& pi, const AtomSet& s) {
  for (auto& kv : pi.moved())
    if (s.count(kv.first)) return false;
  return true;
}

AtomSet perm_support(const FinPermutation& pi) { return pi.support(); }

Atom fresh_atom(const AtomSet& avoid) {
  std::uint64_t id = 0;
  for (Atom a : avoid) {
    if (a.id == id) ++id;
    else if (a.id > id) break;
  }
  return Atom{id};
}

std::vector<Atom> fresh_atoms(const AtomSet& avoid, std::size_t n) {
  AtomSet used = avoid;
  std::vector<Atom> out;
  while (out.size() < n) {
    Atom a = fresh_atom(used);
    used.insert(a);
    out.push_back(a);
  }
  return out;
}

std::string to_string(const FinPermutation& pi) {
  if (pi.is_identity()) return "()";
  std::string out;
  for (auto& c : cycles(pi)) {
    out += "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += " ";
      out += to_string(c[i]);
    }
    out += ")";
  }
  return out;
}

Atom parse_atom(std::string_view text) {
  if (text.size() < 2 || text[0] != 'a')
    throw ParseError("expected atom like a0", 0);
  std::uint64_t id = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("bad atom identifier", i);
    id = id * 10 + static_cast<std::uint64_t>(text[i] - '0');
  }
  if (id == kHole.id) throw ParseError("atom identifier out of range", 1);
  return Atom{id};
}

FinPermutation parse_permutation(std::string_view text) {
  FinPermutation result;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '('", i);
    ++i;
    std::vector<Atom> cyc;
    for (;;) {
      skip();
      if (i >= text.size()) throw ParseError("unterminated cycle", i);
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t start = i;
      while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw ParseError("expected atom", i);
      try {
        cyc.push_back(parse_atom(text.substr(start, i - start)));
      } catch (const ParseError& e) {
        throw ParseError("bad atom", start + e.pos);
      }
    }
    AtomSet distinct(cyc.begin(), cyc.end());
    if (distinct.size() != cyc.size()) throw ParseError("repeated atom in cycle", i);
    std::map<Atom, Atom> m;
    for (std::size_t k = 0; k < cyc.size(); ++k) m[cyc[k]] = cyc[(k + 1) % cyc.size()];
    // Cycles are written left to right and composed so the rightmost acts first.
    result = compose(result, FinPermutation::from_map(m));
    skip();
  }
  return result;
}

}  // namespace fsmkit
