#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fsmkit/atoms.hpp"
#include "fsmkit/element.hpp"
#include "fsmkit/json_io.hpp"

namespace fsmkit {

// Self-checks behind `fsmkit check`. Each group counts individual checks and
// keeps the first few failures as text.
struct CheckOptions {
  std::uint64_t seed = 1;
  std::size_t max_support = 2;
  std::size_t prefix = 20;
  std::size_t pool_bonus = 0;
  std::size_t trials = 10'000;
  // Replaces the structural support rule; a test double for fault injection.
  std::function<AtomSet(const Element&)> support_rule;
};

struct CheckGroup {
  explicit CheckGroup(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;
  json counters = json::object();

  bool ok() const { return failed == 0; }
  void record(bool good, const std::string& what);
};
json to_json(const CheckGroup& g);

CheckGroup check_equivariance(const CheckOptions& o);
CheckGroup check_counting(const CheckOptions& o);
CheckGroup check_csb(const CheckOptions& o);
CheckGroup check_certificates(const CheckOptions& o);
CheckGroup check_lem3(const CheckOptions& o);
CheckGroup check_countability(const CheckOptions& o);
CheckGroup check_table(const CheckOptions& o);
CheckGroup check_implications(const CheckOptions& o);

std::vector<CheckGroup> run_checks(const CheckOptions& o);

}  // namespace fsmkit
