#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "fsmkit/atoms.hpp"
#include "fsmkit/element.hpp"
#include "fsmkit/setexpr.hpp"

namespace fsmkit {

bool member(const Element& x, const SetExpr& e);

// Finitely supported subset of A: a finite set or the complement of one.
struct FinOrCofinAtomSet {
  bool cofinite = false;
  AtomSet carrier;

  bool contains(Atom a) const { return cofinite != (carrier.count(a) > 0); }
  friend bool operator==(const FinOrCofinAtomSet&, const FinOrCofinAtomSet&) = default;
};

enum class SetOp { Union, Intersect, Complement };

// Complement ignores v.
FinOrCofinAtomSet setop(SetOp op, const FinOrCofinAtomSet& u, const FinOrCofinAtomSet& v = {});
Element to_element(const FinOrCofinAtomSet& s);
FinOrCofinAtomSet to_fin_or_cofin(const Element& x);

// Finitely supported A -> A: exceptions on a finite domain, identity or a
// constant elsewhere.
struct ClassifiedAtomFn {
  std::map<Atom, Atom> exceptions;
  std::optional<Atom> constant;  // empty means identity tail
};

Element to_element(const ClassifiedAtomFn& f);
// Rejects atom functions whose tail is not identity or constant.
ClassifiedAtomFn classify_atom_fn(const Element& f);
Atom apply_atom_fn(const ClassifiedAtomFn& f, Atom a);
AtomSet atom_fn_support(const ClassifiedAtomFn& f);

struct SliceOptions {
  std::uint64_t nat_bound = 4;     // naturals listed are < nat_bound
  std::size_t budget = 2'000'000;  // maximum elements materialized
};

enum class SliceStatus {
  Complete,   // every S-supported element is listed
  Truncated,  // infinitely many exist; those within nat_bound are listed
  OverBudget,
};

struct Slice {
  SliceStatus status = SliceStatus::Complete;
  std::vector<Element> elements;  // sorted, distinct
};

struct Unsupported : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Elements of e supported by S. Throws Unsupported for universes whose
// S-supported elements have no Element representation.
Slice enumerate_slice(const SetExpr& e, const AtomSet& S, const SliceOptions& opts = {});

struct InfiniteMarker {
  friend bool operator==(InfiniteMarker, InfiniteMarker) { return true; }
};
std::variant<std::vector<Element>, InfiniteMarker> enumerate_supported(const SetExpr& e,
                                                                         const AtomSet& S);

// nullopt means infinitely many. Throws std::overflow_error past 2^64.
std::optional<std::uint64_t> count_supported(const SetExpr& e, const AtomSet& S);

// Number of Fix(S)-orbits of an orbit-finite universe.
std::uint64_t count_orbits(const SetExpr& e, const AtomSet& S);

// Canonical representative of the Sym(F)-orbit of x.
Element orbit_canon(const Element& x, const AtomSet& F);
// Number of permutations of supp(x) ∩ F fixing x.
std::uint64_t local_stabilizer(const Element& x, const AtomSet& F);
// Non-identity permutations of supp(x) ∩ F fixing x.
std::vector<FinPermutation> local_symmetries(const Element& x, const AtomSet& F);
// Some permutation of F carrying from to to, if the two share a Sym(F)-orbit.
std::optional<FinPermutation> orbit_transport(const Element& from, const Element& to, const AtomSet& F);

}  // namespace fsmkit
