#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fsmkit/atoms.hpp"
#include "fsmkit/setexpr.hpp"

namespace fsmkit {

struct ElementNode;

enum class Kind {
  Atom,
  Nat,
  Pair,
  InL,
  InR,
  FinSet,
  Cofin,
  InjTuple,
  Tuple,
  AtomFn,
  FinMap,
  AtomSeq,
  NatSet,
  SumSet,
  Universe,
};

std::string_view kind_name(Kind k);

// Immutable structural value. Cheap to copy.
class Element {
 public:
  Element();
  explicit Element(std::shared_ptr<const ElementNode> n) : node_(std::move(n)) {}

  Kind kind() const;
  const ElementNode& node() const { return *node_; }
  template <class T>
  const T& as() const;
  template <class T>
  bool is() const;

  friend bool operator==(const Element& a, const Element& b);
  friend std::strong_ordering operator<=>(const Element& a, const Element& b);

 private:
  std::shared_ptr<const ElementNode> node_;
};

namespace el {
struct AtomV {
  Atom a;
  auto operator<=>(const AtomV&) const = default;
};
struct Nat {
  std::uint64_t n;
  auto operator<=>(const Nat&) const = default;
};
struct Pair {
  Element first, second;
  auto operator<=>(const Pair&) const = default;
};
struct InL {
  Element v;
  auto operator<=>(const InL&) const = default;
};
struct InR {
  Element v;
  auto operator<=>(const InR&) const = default;
};
struct FinSet {
  std::vector<Element> members;  // sorted, distinct
  auto operator<=>(const FinSet&) const = default;
};
struct Cofin {
  std::vector<Atom> complement;  // sorted, distinct
  auto operator<=>(const Cofin&) const = default;
};
// Shared by InjTuple and Tuple; the kind records whether entries are distinct.
struct Seq {
  std::vector<Element> entries;
  auto operator<=>(const Seq&) const = default;
};
// Function on atoms: exceptional values on finitely many keys, elsewhere the
// tail with kHole replaced by the argument.
struct AtomFn {
  std::vector<std::pair<Atom, Element>> exceptions;  // sorted by key
  Element tail;
  auto operator<=>(const AtomFn&) const = default;
};
struct FinMap {
  std::vector<std::pair<Element, Element>> graph;  // sorted by key, keys distinct
  auto operator<=>(const FinMap&) const = default;
};
// Eventually periodic function N -> A: prefix, then cycle repeated forever.
struct AtomSeq {
  std::vector<Atom> prefix, cycle;
  auto operator<=>(const AtomSeq&) const = default;
};
// Eventually periodic subset of N given by its characteristic sequence.
struct NatSet {
  std::vector<bool> prefix, cycle;
  auto operator<=>(const NatSet&) const = default;
};
// Subset of a sum X+Y stored as its two sides.
struct SumSet {
  Element left, right;
  auto operator<=>(const SumSet&) const = default;
};
// An equivariant subset given by a universe expression.
struct Universe {
  SetExpr expr;
  auto operator<=>(const Universe&) const = default;
};
}  // namespace el

struct ElementNode {
  Kind kind;
  std::variant<el::AtomV, el::Nat, el::Pair, el::InL, el::InR, el::FinSet, el::Cofin, el::Seq,
               el::AtomFn, el::FinMap, el::AtomSeq, el::NatSet, el::SumSet, el::Universe>
      v;
};

template <class T>
const T& Element::as() const {
  return std::get<T>(node_->v);
}
template <class T>
bool Element::is() const {
  return std::holds_alternative<T>(node_->v);
}

// Constructors. Each returns the canonical representative.
Element mk_atom(Atom a);
Element nat(std::uint64_t n);
Element pair(Element a, Element b);
Element inl(Element x);
Element inr(Element x);
Element finset(std::vector<Element> xs);
Element atom_set(const AtomSet& s);
Element cofin(const AtomSet& complement);
Element tuple(std::vector<Element> xs);
Element atom_tuple(const std::vector<Atom>& xs);
Element atom_fn(std::vector<std::pair<Atom, Element>> exceptions, Element tail);
Element finmap(std::vector<std::pair<Element, Element>> graph);
Element atom_seq(std::vector<Atom> prefix, std::vector<Atom> cycle);
Element nat_set(std::vector<bool> prefix, std::vector<bool> cycle);
Element nat_set_finite(const std::vector<std::uint64_t>& members);
Element sum_set(Element left, Element right);
Element universe(SetExpr e);

// Atom-function helpers.
Element identity_fn();
Element const_fn(Element value);
Element fn_apply(const Element& f, Atom a);
Element instantiate(const Element& tail, Atom a);

// Evaluation helpers for the symbolic kinds.
Atom seq_at(const Element& s, std::uint64_t k);
bool natset_contains(const Element& s, std::uint64_t k);
std::optional<std::uint64_t> natset_size(const Element& s);  // nullopt if infinite
std::optional<Element> finmap_get(const Element& m, const Element& key);
bool finset_contains(const Element& s, const Element& x);
bool atomset_contains(const Element& s, Atom a);  // FinSet of atoms or Cofin

// Structural map over every atom occurrence, re-canonicalizing as it goes.
Element map_atoms(const Element& x, const std::function<Atom(Atom)>& f);
Element act(const FinPermutation& pi, const Element& x);
AtomSet support(const Element& x);
bool is_supported_by(const Element& x, const AtomSet& s);

// Distinct atoms occurring anywhere in x; equals support(x) for all kinds.
std::size_t support_size(const Element& x);
// Largest natural occurring in x, counting finite natural sets by size.
std::uint64_t nat_weight(const Element& x);

std::string to_string(const Element& x);
inline std::ostream& operator<<(std::ostream& os, const Element& x) { return os << to_string(x); }
// Inverse of to_string; also accepts the spelled-out CLI literals.
Element parse_element(std::string_view text);

}  // namespace fsmkit
