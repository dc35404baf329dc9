#include <gtest/gtest.h>

#include "fsmkit/cardinality.hpp"

using namespace fsmkit;

namespace {
SetExpr U(const char* s) { return parse_setexpr(s); }
AtomSet first(std::uint64_t n) {
  AtomSet s;
  for (std::uint64_t i = 0; i < n; ++i) s.insert(atom(i));
  return s;
}
SearchOutcome run(const char* x, const char* y, std::uint64_t s, Want w) {
  return find_supported_map(U(x), U(y), first(s), w).outcome;
}
}  // namespace

TEST(Search, IdentityOnAtoms) {
  auto r = find_supported_map(U("A"), U("A"), {atom(0)}, Want::Injective);
  ASSERT_EQ(r.outcome, SearchOutcome::Witness);
  EXPECT_EQ(eval(*r.witness, parse_element("a5")), parse_element("a5"));
  EXPECT_EQ(eval(*r.witness, parse_element("a0")), parse_element("a0"));
}

TEST(Search, PairsDoNotInjectIntoAtoms) {
  for (std::uint64_t s = 0; s <= 2; ++s) EXPECT_EQ(run("A*A", "A", s, Want::Injective), SearchOutcome::Unsat) << s;
}

TEST(Search, FsPowDoesNotCoverPairs) {
  for (std::uint64_t s = 0; s <= 2; ++s)
    EXPECT_EQ(run("Pfs(A)", "A*A", s, Want::Surjective), SearchOutcome::Unsat) << s;
}

TEST(Search, PairsDoNotInjectIntoFsPow) {
  for (std::uint64_t s = 0; s <= 2; ++s)
    EXPECT_EQ(run("A*A", "Pfs(A)", s, Want::Injective), SearchOutcome::Unsat) << s;
}

TEST(Search, CantorSurjectionIsFound) {
  auto r = find_supported_map(U("Pfs(A)"), U("A"), {atom(0)}, Want::Surjective);
  ASSERT_EQ(r.outcome, SearchOutcome::Witness);
  auto pool = enumerate_slice(U("Pfs(A)"), {atom(0), atom(3)}).elements;
  EXPECT_TRUE(hits_all(*r.witness, pool, {parse_element("a0"), parse_element("a3")}));
  // no equivariant choice of a default atom exists
  EXPECT_EQ(run("Pfs(A)", "A", 0, Want::Surjective), SearchOutcome::Unsat);
}

TEST(Search, TupleSurjectionsAreFound) {
  for (std::uint64_t s = 1; s <= 2; ++s) EXPECT_EQ(run("Tinj(A)", "Tinj1(A)", s, Want::Surjective), SearchOutcome::Witness);
  for (std::uint64_t s = 0; s <= 2; ++s) EXPECT_EQ(run("Tinj1(A)", "Tinj(A)", s, Want::Surjective), SearchOutcome::Witness);
}

TEST(Search, TuplesDoNotInjectIntoNonemptyTuples) {
  for (std::uint64_t s = 0; s <= 2; ++s)
    EXPECT_EQ(run("Tinj(A)", "Tinj1(A)", s, Want::Injective), SearchOutcome::Unsat) << s;
}

TEST(Search, UnsatRecordShape) {
  auto r = find_supported_map(U("A*A"), U("A"), {}, Want::Injective);
  EXPECT_EQ(r.record["kind"], "unsat");
  EXPECT_EQ(r.record["universe_pair"], json::array({"A*A", "A"}));
  EXPECT_TRUE(r.record["support"].is_array());
  EXPECT_GT(r.record["orbits_exhausted"].get<std::size_t>(), 0u);
}
