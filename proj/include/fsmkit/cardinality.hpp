#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fsmkit/atoms.hpp"
#include "fsmkit/element.hpp"
#include "fsmkit/json_io.hpp"
#include "fsmkit/setexpr.hpp"
#include "fsmkit/universes.hpp"

namespace fsmkit {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonConvergent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Inconclusive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Domain or codomain of a witness: a universe, an explicit finite set, or a
// universe cut down by a finitely supported predicate.
struct Carrier {
  std::optional<SetExpr> expr;
  std::optional<std::vector<Element>> elements;  // sorted, distinct
  std::function<bool(const Element&)> restrict;
  std::string label;
  AtomSet atoms;  // support of the carrier itself

  static Carrier of(SetExpr e);
  static Carrier finite(std::vector<Element> xs);
  static Carrier restricted(SetExpr e, std::function<bool(const Element&)> p, std::string label,
                            AtomSet support = {});

  bool contains(const Element& x) const;
  bool is_finite() const { return elements.has_value(); }
  std::string describe() const;
};

Carrier carrier_sum(const Carrier& x, const Carrier& y);
Carrier carrier_prod(const Carrier& x, const Carrier& y);

enum class Evidence { None, ProvedByConstruction, CheckedByEnumeration, Unverified };
std::string_view evidence_name(Evidence e);

struct MapCert {
  Evidence injective = Evidence::None;
  Evidence surjective = Evidence::None;
};

struct FsMapWitness {
  Carrier domain, codomain;
  std::string rule;  // "finmap", "classified", or the generating construction
  std::vector<Element> params;
  AtomSet support;
  MapCert cert;
  std::function<Element(const Element&)> fn;
  // Preimage lookup; set for injective witnesses.
  std::function<std::optional<Element>(const Element&)> preimage;
  // Defined only on elements with at most this many atoms outside the support.
  std::optional<std::size_t> fresh_range;
};

Element eval(const FsMapWitness& f, const Element& x);
json to_json(const FsMapWitness& f);

FsMapWitness identity_map(const Carrier& x);
FsMapWitness finmap_witness(const Carrier& dom, const Carrier& cod,
                            std::vector<std::pair<Element, Element>> graph);
FsMapWitness classified_witness(const ClassifiedAtomFn& f);
// a ↦ {a}, A → ℘fs(A).
FsMapWitness singleton_map();
// T_fin(A) → T_fin(A)∖{()}: () ↦ (a), identity elsewhere.
FsMapWitness lem3_f(Atom a);
// T_fin(A)∖{()} → T_fin(A): drops the first entry.
FsMapWitness lem3_g();
// ℘fs(A) → A: {u} ↦ u, every other set ↦ y.
FsMapWitness cantor_s(Atom y);
// ℘fin(A) ↔ ℘cofin(A), U ↦ A∖U; the evaluator also accepts cofinite sets.
FsMapWitness complement_bijection();

// ℘fs(X) → {0,1}^X for X = A or a finite carrier; the second witness inverts it.
std::pair<FsMapWitness, FsMapWitness> char_bijection(const Carrier& x);

// Function A → Y given pointwise, supported by bound.
Element tabulate_atom_fn(const std::function<Element(Atom)>& g, const AtomSet& bound);

struct EquivarianceReport {
  bool ok = true;
  std::size_t trials = 0;
  std::optional<std::pair<FinPermutation, Element>> failure;
};
EquivarianceReport equivariance_check(const FsMapWitness& f, std::size_t trials, std::mt19937_64& rng);

// Exhaustive injectivity / surjectivity over explicit elements.
bool injective_on(const FsMapWitness& f, const std::vector<Element>& xs);
bool hits_all(const FsMapWitness& f, const std::vector<Element>& xs, const std::vector<Element>& ys);

struct CsbResult {
  FsMapWitness h;
  std::vector<Element> T;
  std::size_t iterations = 0;
  bool fixed_point_ok = false;
  bool support_ok = false;
};
// Finite carriers: T is the greatest fixed point of Z ↦ X − g(Y − f(Z)).
CsbResult csb(const FsMapWitness& f, const FsMapWitness& g, std::size_t max_iter = 10'000);
// Symbolic carriers: membership in T decided by tracing preimage chains.
FsMapWitness csb_traced(const FsMapWitness& f, const FsMapWitness& g, std::size_t max_depth = 256);

FsMapWitness injection_to_surjection(const FsMapWitness& f, const Element& x0);
// V ↦ f⁻¹(V) ∩ probe on finite V ⊆ f(probe).
FsMapWitness preimage_injection(const FsMapWitness& f, const std::vector<Element>& probe);
// Membership in a finitely supported set value.
bool set_contains(const Element& set, const Element& x);

enum class ArithRule { SumMono, ProdMono, ExpMonoBase, ExpMonoExp, SumLeqProd };
std::string_view rule_name(ArithRule r);

struct ArithInput {
  std::optional<FsMapWitness> f;  // the given injection X → Y
  std::optional<Carrier> z;       // third set for the monotonicity rules
  Carrier x, y;                   // factors for SumLeqProd
  std::vector<Element> picks;     // x0, x1, y0, y1 for SumLeqProd; default point for ExpMonoExp
};
FsMapWitness card_arith(ArithRule rule, const ArithInput& in);

enum class Want { Injective, Surjective, Bijective };
std::string_view want_name(Want w);
enum class SearchOutcome { Witness, Unsat, Inconclusive };
std::string_view outcome_name(SearchOutcome o);

struct SearchOptions {
  std::size_t pool_bonus = 0;
  std::size_t budget = 400'000;
};

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::Inconclusive;
  std::optional<FsMapWitness> witness;
  json record;  // unsat certificate, witness summary, or inconclusive reason
  std::string reason;
  std::size_t pool_size = 0;
  std::size_t domain_orbits = 0;
  std::size_t codomain_orbits = 0;
};

SearchResult find_supported_map(const SetExpr& x, const SetExpr& y, const AtomSet& s, Want want,
                                 const SearchOptions& opts = {});

enum class RelKind { Leq, LeqStar, Eq };
std::string_view rel_name(RelKind k);

struct Refutation {
  std::string reason;
  json certificate;
};

struct CardRelation {
  RelKind kind;
  SetExpr left, right;
  std::variant<FsMapWitness, Refutation> evidence;
  bool holds() const { return std::holds_alternative<FsMapWitness>(evidence); }
};

// Tries supports {a0..a(k-1)} for k = 0..max_support. nullopt when every
// search was inconclusive and none found a witness.
std::optional<CardRelation> decide_relation(RelKind kind, const SetExpr& x, const SetExpr& y,
                                            std::size_t max_support, const SearchOptions& opts = {});
json to_json(const CardRelation& r);

}  // namespace fsmkit
