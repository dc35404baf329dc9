#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsmkit/cardinality.hpp"

namespace fsmkit {

struct NotInRange : std::domain_error {
  using std::domain_error::domain_error;
};

// 2^m · 3^n. Throws std::overflow_error past 2^64.
std::uint64_t pairing(std::uint64_t m, std::uint64_t n);
// Inverse of pairing on its image.
std::pair<std::uint64_t, std::uint64_t> unpair_check(std::uint64_t p);

// A countable family or universe listed by index.
struct Enumeration {
  std::string label;
  std::function<Element(std::uint64_t)> at;
  AtomSet support;
};

// g(y) = min f⁻¹({y}), searched over the first `search` arguments of f.
// Throws DomainError when y has no preimage there.
FsMapWitness surj_to_inj(const Enumeration& f, std::uint64_t search = 10'000);
FsMapWitness surj_to_inj(const FsMapWitness& f, std::uint64_t search = 10'000);

struct RankedBijection {
  FsMapWitness to_nat;   // y ↦ rank of g(y) in the image of g
  Enumeration from_nat;  // n ↦ the element of rank n
};
// Ranks the image of an injection g: Y → ℕ by iterated min, reading the
// image off g's preimage. `members` is the infinitude evidence: at least
// min_members distinct elements of Y, else PreconditionError. A rank search
// that passes scan_limit throws Inconclusive.
RankedBijection inj_to_bij(const FsMapWitness& g, const std::vector<Element>& members, std::size_t min_members = 20,
                           std::uint64_t scan_limit = 1'000'000);

// A sequence n ↦ X_n of subsets of X, decided by membership.
struct SubsetFamily {
  std::string label;
  std::function<bool(std::uint64_t, const Element&)> contains;
  AtomSet support;
};

struct Disjointified {
  std::vector<std::vector<Element>> blocks;  // Y_0, Y_1, ... restricted to the probe
  std::vector<std::uint64_t> source;         // the index n' behind each block
  std::vector<bool> from_term;               // Y_n taken inside X_n' rather than outside it
  AtomSet support;
};
// Kuratowski's pairwise disjoint Y_n, computed over a finite probe of X and
// the first `window` terms of the family. "Infinitely many distinct sets" is
// read as at least two distinct sets later in the window. Throws
// Inconclusive when the window runs out before `length` blocks are built.
Disjointified disjointify(const SubsetFamily& xs, const std::vector<Element>& probe, std::size_t length,
                          const AtomSet& universe_support = {}, std::size_t window = 0);

// Enumerates ∪ X_n from finite blocks, each listed in the supplied order.
// Blocks are visited in index order; repeats are skipped.
FsMapWitness cut_from_cc(const std::vector<std::vector<Element>>& ordered_blocks, const AtomSet& family_support,
                         const AtomSet& order_support = {});
// Orders each block by the internal atom order. Not equivariant.
std::vector<std::vector<Element>> canonical_orders(const std::vector<std::vector<Element>>& blocks);

// Lists ∪_{n≥1} Y^n from an enumeration of Y. Tuples are graded by length
// plus the sum of their indices; each grade is finite.
Enumeration union_powers_countable(const Enumeration& y);
// Index tuple at a position of that enumeration, and its inverse.
std::vector<std::uint64_t> union_powers_indices(std::uint64_t pos);
std::uint64_t union_powers_position(const std::vector<std::uint64_t>& idx);
// The well-order on index tuples: shorter first, then lexicographic.
bool length_lex_precedes(const std::vector<std::uint64_t>& u, const std::vector<std::uint64_t>& v);

// Surjection from ℕ, injection into ℕ and bijection with ℕ, where known.
struct CountabilityWitness {
  SetExpr universe;
  std::optional<Enumeration> surj_from_N;
  std::optional<FsMapWitness> inj_to_N;
  std::optional<Enumeration> bij_with_N;
};
// Built for ℕ and sums and products of countable universes; nullopt otherwise.
std::optional<CountabilityWitness> countability_witness(const SetExpr& e);

}  // namespace fsmkit
