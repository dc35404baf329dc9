#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fsmkit/cardinality.hpp"

namespace fsmkit {

enum class Notion {
  Usual,
  Covering,
  TarskiI,
  TarskiII,
  TarskiIII,
  Mostowski,
  Dedekind,
  Ascending,
  NonAmorphous,
  NonUniformlyAmorphous,
};
std::string_view notion_name(Notion n);

// Inconclusive marks a detector that ran out of budget; it never stands in
// for a verdict.
enum class Value { Yes, No, Unknown, Inconclusive };
std::string_view value_name(Value v);

struct InfinityConfig {
  std::size_t prefix = 20;
  std::size_t max_support = 2;
  std::uint64_t seed = 1;
  std::size_t pool_bonus = 0;
};

struct Unknown {
  std::string reason;
};

struct UniformSequenceWitness {
  SetExpr universe;
  std::string rule;
  std::function<Element(std::uint64_t)> generator;
  AtomSet support;
  std::size_t checked_prefix = 0;
};

// Distinct, members, supported by the common support. Fills checked_prefix.
bool validate(UniformSequenceWitness& w, std::size_t prefix, std::string* why = nullptr);

// X_n = {x ∈ X : size(x) ≤ n}; size is support size plus natural weight, so
// every term is equivariant. escape(n) lies in X but outside X_n.
struct ChainWitness {
  SetExpr universe;
  std::string rule;
  std::function<bool(std::uint64_t, const Element&)> in_term;
  std::function<Element(std::uint64_t)> escape;
  AtomSet support;
  std::size_t checked_prefix = 0;
};
bool validate(ChainWitness& w, std::size_t prefix, std::string* why = nullptr);
std::uint64_t chain_size(const Element& x);

// Two disjoint equivariant subsets, each shown infinite by listing members.
struct SplitWitness {
  SetExpr universe;
  std::string rule;
  std::function<bool(const Element&)> left, right;
  std::function<Element(std::uint64_t)> left_gen, right_gen;
  AtomSet support;
  bool uniform = false;  // members of each side share the support
  std::size_t checked_prefix = 0;
};
bool validate(SplitWitness& w, std::size_t prefix, std::string* why = nullptr);

template <class W>
using Detected = std::variant<W, Refutation, Unknown>;

Detected<UniformSequenceWitness> dedekind_witness(const SetExpr& e, const InfinityConfig& cfg = {});
// Bijection X + X → X.
Detected<FsMapWitness> tarski3_witness(const SetExpr& e, const InfinityConfig& cfg = {});
// Bijection X × X → X; its preimage is the map of X onto X × X.
Detected<FsMapWitness> tarski1_witness(const SetExpr& e, const InfinityConfig& cfg = {});
Detected<ChainWitness> ascending_witness(const SetExpr& e, const InfinityConfig& cfg = {});

struct Verdict {
  Notion notion;
  Value value = Value::Unknown;
  std::string method;  // witness, counting, solver, implication, dichotomy, cited, none
  std::string id;
  std::string detail;
  json evidence;
};
json to_json(const Verdict& v);

Verdict mostowski_verdict(const SetExpr& e, const InfinityConfig& cfg = {});
std::pair<Verdict, Verdict> amorphous_verdicts(const SetExpr& e, const InfinityConfig& cfg = {});

// Table column order.
inline constexpr std::array<Notion, 7> kTableColumns = {
    Notion::TarskiI,   Notion::TarskiIII, Notion::Dedekind,    Notion::Mostowski,
    Notion::Ascending, Notion::TarskiII,  Notion::NonAmorphous,
};

struct CatalogRow {
  std::string label;
  SetExpr expr;
  std::array<Value, 7> expected;  // in kTableColumns order
};
const std::vector<CatalogRow>& catalog();

struct ClassificationRow {
  std::string label;
  SetExpr expr;
  std::map<Notion, Verdict> verdicts;
  Value at(Notion n) const;
};

ClassificationRow classify(const SetExpr& e, const InfinityConfig& cfg = {});
ClassificationRow classify(const CatalogRow& row, const InfinityConfig& cfg = {});

struct Implication {
  Notion from, to;
};
const std::vector<Implication>& implications();
// Implications with a Yes premise and a No conclusion.
std::vector<std::string> implication_violations(const ClassificationRow& row);

struct TableReport {
  std::vector<ClassificationRow> rows;
  std::size_t mismatches = 0;
  std::size_t inconclusive = 0;
  std::vector<std::string> notes;
};
TableReport build_table(const InfinityConfig& cfg = {});
std::string render_markdown(const TableReport& t);
json to_json(const TableReport& t);

}  // namespace fsmkit
