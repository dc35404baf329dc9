#include <gtest/gtest.h>

#include <random>

#include "fsmkit/atoms.hpp"
#include "fsmkit/nominal.hpp"

using namespace fsmkit;

namespace {
const Atom a = atom(0), b = atom(1), c = atom(2), d = atom(3), e = atom(4);
}

TEST(Atoms, TranspositionSwaps) {
  auto t = transposition(a, b);
  EXPECT_EQ(apply(t, a), b);
  EXPECT_EQ(apply(t, b), a);
  EXPECT_EQ(apply(t, c), c);
  EXPECT_TRUE(transposition(a, a).is_identity());
}

TEST(Atoms, ComposeRightmostFirst) {
  auto r = compose(transposition(a, b), transposition(b, c));
  EXPECT_EQ(apply(r, c), a);
  EXPECT_EQ(r.support(), (AtomSet{a, b, c}));
  EXPECT_TRUE(compose(transposition(a, b), transposition(a, b)).is_identity());
}

TEST(Atoms, InverseOfThreeCycle) {
  auto p = parse_permutation("(a0 a1 a2)");
  EXPECT_EQ(inverse(p), parse_permutation("(a0 a2 a1)"));
  EXPECT_TRUE(compose(p, inverse(p)).is_identity());
}

TEST(Atoms, Order) {
  EXPECT_EQ(perm_order(identity()), 1u);
  EXPECT_EQ(perm_order(transposition(a, b)), 2u);
  EXPECT_EQ(perm_order(parse_permutation("(a0 a1 a2)(a3 a4)")), 6u);
}

TEST(Atoms, Fixes) {
  EXPECT_TRUE(fixes(identity(), {a, b}));
  EXPECT_FALSE(fixes(transposition(a, b), {a}));
  EXPECT_TRUE(fixes(transposition(c, d), {a, b}));
}

TEST(Atoms, Fresh) {
  AtomSet s;
  for (std::uint64_t i = 0; i < 10; ++i) s.insert(atom(i * 2));
  Atom f = fresh_atom(s);
  EXPECT_FALSE(s.count(f));
  EXPECT_EQ(f, atom(1));
  auto fs = fresh_atoms({a, c}, 3);
  EXPECT_EQ(fs, (std::vector<Atom>{b, d, e}));
}

TEST(Atoms, ParseRoundTrip) {
  auto p = parse_permutation("(a0 a1)(a2 a3 a4)");
  EXPECT_EQ(to_string(p), "(a0 a1)(a2 a3 a4)");
  EXPECT_EQ(parse_permutation(to_string(p)), p);
  EXPECT_TRUE(parse_permutation("()").is_identity());
  EXPECT_THROW(parse_permutation("(a0 a0)"), ParseError);
  EXPECT_THROW(parse_permutation("(a0 b1)"), ParseError);
}

TEST(Atoms, FromMapRejectsNonBijection) {
  EXPECT_THROW(FinPermutation::from_map({{a, b}}), std::invalid_argument);
  EXPECT_THROW(FinPermutation::from_map({{a, c}, {b, c}}), std::invalid_argument);
}

TEST(Atoms, GroupLawsRandom) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    auto p = random_permutation(rng, 7), q = random_permutation(rng, 7), r = random_permutation(rng, 7);
    EXPECT_EQ(compose(compose(p, q), r), compose(p, compose(q, r)));
    EXPECT_EQ(compose(identity(), p), p);
    EXPECT_TRUE(compose(p, inverse(p)).is_identity());
    AtomSet u = p.support();
    for (Atom x : q.support()) u.insert(x);
    for (Atom x : compose(p, q).support()) EXPECT_TRUE(u.count(x));
    for (auto& kv : p.moved()) EXPECT_NE(kv.first, kv.second);
    EXPECT_EQ(fsmkit::apply(p, p.support()), p.support());
  }
}
