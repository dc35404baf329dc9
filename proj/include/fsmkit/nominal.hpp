#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fsmkit/atoms.hpp"
#include "fsmkit/element.hpp"

namespace fsmkit {

struct SupportReport {
  Element subject;
  AtomSet support;
  bool verified = false;
  // Transpositions whose outcome contradicted the claim.
  std::vector<std::pair<Atom, Atom>> counterexamples;
  std::size_t probes_run = 0;
};

// Minimality: every claimed atom is moved by a swap with a fresh atom.
// Sufficiency: sampled swaps avoiding the claim leave x fixed.
SupportReport verify_least_support(const Element& x, const AtomSet& claimed, unsigned probes,
                                   std::mt19937_64& rng);

struct RandomElementOptions {
  unsigned max_depth = 3;
  std::uint64_t atom_range = 6;  // atoms a0 .. a(atom_range-1)
  std::uint64_t nat_range = 8;
  std::size_t max_width = 3;
};

// Draws from every element constructor except Universe.
Element random_element(std::mt19937_64& rng, const RandomElementOptions& opts = {});
FinPermutation random_permutation(std::mt19937_64& rng, std::uint64_t atom_range);

// Seed from FSMKIT_SEED when set, else the fallback.
std::uint64_t seed_from_env(std::uint64_t fallback);

}  // namespace fsmkit
