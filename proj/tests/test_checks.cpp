#include <gtest/gtest.h>

#include "fsmkit/checks.hpp"
#include "fsmkit/nominal.hpp"

using namespace fsmkit;

namespace {
CheckOptions small() {
  CheckOptions o;
  o.trials = 300;
  return o;
}
}  // namespace

TEST(Checks, EquivarianceSuitePasses) {
  auto g = check_equivariance(small());
  EXPECT_TRUE(g.ok()) << (g.failures.empty() ? "" : g.failures.front());
  EXPECT_EQ(g.passed, 900u);
}

TEST(Checks, BrokenSupportRuleIsReported) {
  // Drops the largest atom of every support.
  auto o = small();
  o.support_rule = [](const Element& x) {
    AtomSet s = support(x);
    if (!s.empty()) s.erase(std::prev(s.end()));
    return s;
  };
  auto g = check_equivariance(o);
  EXPECT_FALSE(g.ok());
  EXPECT_GT(g.counters.at("least_support_failures").get<std::size_t>(), 0u);
  ASSERT_FALSE(g.failures.empty());
  EXPECT_NE(g.failures.front().find("verify_least_support"), std::string::npos);
}

TEST(Checks, OverlargeSupportRuleIsReported) {
  auto o = small();
  o.support_rule = [](const Element& x) {
    AtomSet s = support(x);
    s.insert(atom(40));
    return s;
  };
  EXPECT_GT(check_equivariance(o).counters.at("least_support_failures").get<std::size_t>(), 0u);
}

TEST(Checks, CountingAndCountability) {
  EXPECT_TRUE(check_counting(small()).ok());
  auto c = check_countability(small());
  EXPECT_TRUE(c.ok()) << (c.failures.empty() ? "" : c.failures.front());
}

TEST(Checks, DeeperLadderRunsMoreCases) {
  auto o = small();
  auto base = check_certificates(o);
  o.max_support = 3;
  auto deeper = check_certificates(o);
  EXPECT_TRUE(deeper.ok()) << (deeper.failures.empty() ? "" : deeper.failures.front());
  EXPECT_GT(deeper.passed, base.passed);
}

TEST(Checks, DeterministicUnderSeed) {
  auto o = small();
  o.seed = 77;
  EXPECT_EQ(to_json(check_csb(o)).dump(), to_json(check_csb(o)).dump());
  EXPECT_EQ(to_json(check_equivariance(o)).dump(), to_json(check_equivariance(o)).dump());
}
