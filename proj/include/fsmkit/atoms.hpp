#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fsmkit {

// Identifiers are only ordered for canonical storage and freshness.
struct Atom {
  std::uint64_t id = 0;
  auto operator<=>(const Atom&) const = default;
};

using AtomSet = std::set<Atom>;

// Placeholder standing for "the argument" in the tail of an atom-indexed
// function. Never moved by a permutation, never returned by fresh_atom.
inline constexpr Atom kHole{UINT64_MAX};

inline Atom atom(std::uint64_t id) { return Atom{id}; }

std::string to_string(Atom a);
std::string to_string(const AtomSet& s);
inline std::ostream& operator<<(std::ostream& os, Atom a) { return os << to_string(a); }

class FinPermutation {
 public:
  FinPermutation() = default;

  // Builds from an arbitrary finite bijection; self-maps are dropped.
  static FinPermutation from_map(const std::map<Atom, Atom>& m);

  const std::map<Atom, Atom>& moved() const { return moved_; }
  bool is_identity() const { return moved_.empty(); }
  AtomSet support() const;

  friend bool operator==(const FinPermutation&, const FinPermutation&) = default;

 private:
  std::map<Atom, Atom> moved_;
};

FinPermutation identity();
FinPermutation transposition(Atom a, Atom b);
Atom apply(const FinPermutation& pi, Atom a);
// r(a) = pi(rho(a))
FinPermutation compose(const FinPermutation& pi, const FinPermutation& rho);
FinPermutation inverse(const FinPermutation& pi);
std::uint64_t perm_order(const FinPermutation& pi);
bool fixes(const FinPermutation& pi, const AtomSet& s);
AtomSet perm_support(const FinPermutation& pi);
AtomSet apply(const FinPermutation& pi, const AtomSet& s);

Atom fresh_atom(const AtomSet& avoid);
// n distinct atoms outside avoid, least identifiers first.
std::vector<Atom> fresh_atoms(const AtomSet& avoid, std::size_t n);

// Completes a finite partial injection to a permutation of its domain ∪ range.
FinPermutation extend_to_permutation(const std::map<Atom, Atom>& partial);

// Cycle decomposition, each cycle starting at its least atom.
std::vector<std::vector<Atom>> cycles(const FinPermutation& pi);
std::string to_string(const FinPermutation& pi);
inline std::ostream& operator<<(std::ostream& os, const FinPermutation& p) { return os << to_string(p); }

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t p)
      : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

Atom parse_atom(std::string_view text);
// "(a0 a1)(a2 a3 a4)"; "()" or "" is the identity.
FinPermutation parse_permutation(std::string_view text);

}  // namespace fsmkit
