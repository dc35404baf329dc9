#include <gtest/gtest.h>

#include <random>

#include "fsmkit/nominal.hpp"

using namespace fsmkit;

namespace {
Element E(const char* s) { return parse_element(s); }
}

TEST(Nominal, VerifyAtom) {
  std::mt19937_64 rng(1);
  EXPECT_TRUE(verify_least_support(E("a0"), {atom(0)}, 5, rng).verified);
  EXPECT_TRUE(verify_least_support(E("0"), {}, 5, rng).verified);
}

TEST(Nominal, VerifyCatchesTooSmallClaim) {
  std::mt19937_64 rng(1);
  auto r = verify_least_support(E("{a0,a1}"), {atom(0)}, 5, rng);
  EXPECT_FALSE(r.verified);
  ASSERT_FALSE(r.counterexamples.empty());
  EXPECT_EQ(r.counterexamples.front().first, atom(1));
}

TEST(Nominal, VerifyCatchesTooLargeClaim) {
  std::mt19937_64 rng(1);
  EXPECT_FALSE(verify_least_support(E("{a0}"), {atom(0), atom(1)}, 5, rng).verified);
}

TEST(Nominal, LawsOnRandomElements) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3000; ++i) {
    Element x = random_element(rng);
    auto p = random_permutation(rng, 6), q = random_permutation(rng, 6);
    ASSERT_EQ(act(compose(p, q), x), act(p, act(q, x))) << x;
    ASSERT_EQ(act(identity(), x), x);
    ASSERT_EQ(support(act(p, x)), fsmkit::apply(p, support(x))) << x;
    ASSERT_TRUE(verify_least_support(x, support(x), 4, rng).verified) << x;
  }
}

TEST(Nominal, FinSetSupportIsUnion) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    std::vector<Element> xs{random_element(rng), random_element(rng), random_element(rng)};
    AtomSet u;
    for (const auto& x : xs)
      for (Atom a : support(x)) u.insert(a);
    EXPECT_EQ(support(finset(xs)), u);
  }
}

TEST(Nominal, SeedFromEnv) {
  setenv("FSMKIT_SEED", "123", 1);
  EXPECT_EQ(seed_from_env(9), 123u);
  setenv("FSMKIT_SEED", "bogus", 1);
  EXPECT_EQ(seed_from_env(9), 9u);
  unsetenv("FSMKIT_SEED");
  EXPECT_EQ(seed_from_env(9), 9u);
}
