#include <gtest/gtest.h>

#include "fsmkit/universes.hpp"
#include "oracles.hpp"

using namespace fsmkit;

namespace {
Element E(const char* s) { return parse_element(s); }
SetExpr U(const char* s) { return parse_setexpr(s); }
AtomSet first(std::uint64_t n) {
  AtomSet s;
  for (std::uint64_t i = 0; i < n; ++i) s.insert(atom(i));
  return s;
}
}  // namespace

TEST(SetExpr, ParseAndPrint) {
  for (const char* t : {"A", "N", "A*A", "A+A", "Pfin(A)", "Pcof(A)", "Pfs(A)", "Tinj(A)", "Tup(A)",
                        "Fn(A,A)", "Pn(A,3)", "Pfs(A+N)", "A*N+A", "(A+A)*A", "Tinj1(A)"})
    EXPECT_EQ(to_string(U(t)), t);
  EXPECT_EQ(display_name(U("Fn(N,A)")), "A^ℕ_fs");
  EXPECT_THROW(U("Q"), ParseError);
  EXPECT_THROW(U("A*"), ParseError);
}

TEST(SetExpr, Arity) {
  EXPECT_EQ(arity(U("A*A")), 2u);
  EXPECT_EQ(arity(U("A+A*A")), 2u);
  EXPECT_EQ(arity(U("N")), 0u);
  EXPECT_FALSE(arity(U("Pfs(A)")).has_value());
  EXPECT_EQ(arity(U("Pfs(N)")), 0u);
}

TEST(Universes, Membership) {
  EXPECT_TRUE(member(E("a0"), U("A")));
  EXPECT_TRUE(member(E("cofin{a0}"), U("Pfs(A)")));
  EXPECT_FALSE(member(E("{a0,a1}"), U("Pn(A,3)")));
  EXPECT_TRUE(member(E("(a0,a1)"), U("Tinj(A)")));
  EXPECT_FALSE(member(E("(a0,a0)"), U("Tinj(A)")));
  EXPECT_TRUE(member(E("(a0,a0)"), U("Tup(A)")));
  EXPECT_FALSE(member(E("()"), U("Tinj1(A)")));
  EXPECT_TRUE(member(E("fn{a0->a1,_->_}"), U("Fn(A,A)")));
  EXPECT_TRUE(member(E("fn{_->3}"), U("Fn(A,N)")));
  EXPECT_TRUE(member(E("U[Pn(A,2)]"), U("Pfs(Pfs(A))")));
  EXPECT_TRUE(member(E("split({a0},nats(1;0))"), U("Pfs(A+N)")));
}

TEST(Universes, SetOps) {
  FinOrCofinAtomSet fa{false, {atom(0)}}, ca{true, {atom(0)}}, cb{true, {atom(1)}};
  EXPECT_EQ(setop(SetOp::Complement, fa), ca);
  EXPECT_EQ(setop(SetOp::Union, fa, ca), (FinOrCofinAtomSet{true, {}}));
  EXPECT_EQ(setop(SetOp::Intersect, ca, cb), (FinOrCofinAtomSet{true, {atom(0), atom(1)}}));
  // probe membership against the definition on five atoms
  std::vector<FinOrCofinAtomSet> all{fa, ca, cb, {false, {atom(1), atom(2)}}, {true, {}}, {false, {}}};
  for (const auto& x : all)
    for (const auto& y : all)
      for (std::uint64_t i = 0; i < 5; ++i) {
        Atom t = atom(i);
        EXPECT_EQ(setop(SetOp::Union, x, y).contains(t), x.contains(t) || y.contains(t));
        EXPECT_EQ(setop(SetOp::Intersect, x, y).contains(t), x.contains(t) && y.contains(t));
      }
}

TEST(Universes, ClassifiedFunctions) {
  ClassifiedAtomFn id;
  EXPECT_EQ(apply_atom_fn(id, atom(3)), atom(3));
  EXPECT_TRUE(atom_fn_support(id).empty());
  ClassifiedAtomFn k{{{atom(0), atom(0)}}, atom(0)};
  EXPECT_EQ(apply_atom_fn(k, atom(4)), atom(0));
  EXPECT_EQ(atom_fn_support(k), AtomSet{atom(0)});
  ClassifiedAtomFn sw{{{atom(0), atom(1)}, {atom(1), atom(0)}}, std::nullopt};
  EXPECT_EQ(apply_atom_fn(sw, atom(2)), atom(2));
  EXPECT_EQ(apply_atom_fn(sw, atom(1)), atom(0));
  ClassifiedAtomFn ab{{{atom(0), atom(1)}}, std::nullopt};
  EXPECT_EQ(atom_fn_support(ab), (AtomSet{atom(0), atom(1)}));
  EXPECT_EQ(to_element(classify_atom_fn(to_element(sw))), to_element(sw));
}

TEST(Universes, SmallEnumerations) {
  auto atoms = std::get<std::vector<Element>>(enumerate_supported(U("A"), first(2)));
  EXPECT_EQ(atoms.size(), 2u);
  auto fns = std::get<std::vector<Element>>(enumerate_supported(U("Fn(A,A)"), first(1)));
  EXPECT_EQ(fns.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<InfiniteMarker>(enumerate_supported(U("N"), {})));
  EXPECT_TRUE(std::holds_alternative<InfiniteMarker>(enumerate_supported(U("Tup(A)"), first(1))));
  EXPECT_EQ(count_supported(U("Pfs(A)"), {}), 2u);
  EXPECT_EQ(count_supported(U("Tinj(A)"), first(2)), 5u);
  EXPECT_EQ(count_supported(U("Fn(A,A)"), first(2)), 12u);
}

TEST(Universes, CountsMatchOracle) {
  for (int s = 0; s <= 3; ++s) {
    AtomSet S = first(s);
    std::uint64_t subsets = oracle::invariant_subsets(s, s + 3);
    EXPECT_EQ(count_supported(U("Pfs(A)"), S), subsets);
    EXPECT_EQ(subsets, std::uint64_t{1} << (s + 1));
    EXPECT_EQ(count_supported(U("Tinj(A)"), S), oracle::invariant_injective_tuples(s, s + 3));
    // n + 2 fresh atoms, so an invariant set holding every fresh atom is too big to count
    for (int n = 0; n <= 4; ++n)
      EXPECT_EQ(count_supported(u::nsized(u::atoms(), n), S), oracle::invariant_sized_subsets(s, s + n + 2, n));
  }
  for (int s = 1; s <= 3; ++s) EXPECT_EQ(count_supported(U("Fn(A,A)"), first(s)), oracle::commuting_maps(s, s + 4));
}

TEST(Universes, EnumerationSoundAndCounted) {
  for (const char* t : {"A", "A*A", "A+A", "Pfin(A)", "Pcof(A)", "Pfs(A)", "Tinj(A)", "Fn(A,A)", "Pn(A,2)",
                        "Fn(A,Tinj(A))", "Fn(A,Pfs(A))", "Pfin(Pfs(A))"}) {
    SetExpr e = U(t);
    for (int s = 0; s <= 2; ++s) {
      AtomSet S = first(s);
      auto r = enumerate_supported(e, S);
      auto& xs = std::get<std::vector<Element>>(r);
      EXPECT_EQ(count_supported(e, S), xs.size()) << t << " |S|=" << s;
      for (const auto& x : xs) {
        EXPECT_TRUE(member(x, e)) << t << " " << x;
        EXPECT_TRUE(is_supported_by(x, S)) << t << " " << x;
      }
      // closure under the action
      auto pi = transposition(atom(0), atom(7));
      AtomSet piS = fsmkit::apply(pi, S);
      auto ys = std::get<std::vector<Element>>(enumerate_supported(e, piS));
      for (const auto& x : xs) EXPECT_TRUE(std::binary_search(ys.begin(), ys.end(), act(pi, x))) << t;
    }
  }
}

TEST(Universes, Orbits) {
  EXPECT_EQ(count_orbits(U("A"), first(2)), 3u);
  EXPECT_EQ(count_orbits(U("A*A"), {}), 2u);
  EXPECT_EQ(count_orbits(U("A*A"), first(1)), 5u);
  EXPECT_EQ(count_orbits(U("Pn(A,2)"), {}), 1u);
  EXPECT_EQ(count_supported(U("Pfs(A*A)"), {}), 4u);
  EXPECT_EQ(local_stabilizer(E("{a0,a1}"), first(3)), 2u);
  EXPECT_EQ(orbit_canon(E("{a5,a7}"), {atom(5), atom(6), atom(7)}), E("{a5,a6}"));
  EXPECT_EQ(orbit_canon(E("(a7,a5)"), {atom(5), atom(6), atom(7)}), E("(a5,a6)"));
}

TEST(Universes, TruncatedSlices) {
  Slice s = enumerate_slice(U("N"), {}, {3});
  EXPECT_EQ(s.status, SliceStatus::Truncated);
  EXPECT_EQ(s.elements.size(), 3u);
  Slice t = enumerate_slice(U("Fn(N,A)"), first(2), {3});
  EXPECT_EQ(t.status, SliceStatus::Truncated);
  for (const auto& x : t.elements) EXPECT_TRUE(member(x, U("Fn(N,A)")));
}
