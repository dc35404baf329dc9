#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fsmkit {

enum class SetKind {
  Atoms,
  Naturals,
  Prod,
  Sum,
  FinPow,
  CofinPow,
  FsPow,
  Fn,         // finitely supported functions kid(0) -> kid(1)
  InjTuples,  // n = 1 excludes the empty tuple
  Tuples,
  NSized,     // n-sized subsets
};

struct SetExprNode;

// Intensional universe description. Never materialized.
class SetExpr {
 public:
  SetExpr() = default;
  explicit SetExpr(std::shared_ptr<const SetExprNode> n) : node_(std::move(n)) {}

  SetKind kind() const;
  const SetExpr& kid(std::size_t i) const;
  std::size_t num_kids() const;
  std::uint64_t n() const;

  friend bool operator==(const SetExpr& a, const SetExpr& b);
  friend std::strong_ordering operator<=>(const SetExpr& a, const SetExpr& b);

 private:
  std::shared_ptr<const SetExprNode> node_;
};

struct SetExprNode {
  SetKind kind;
  std::vector<SetExpr> kids;
  std::uint64_t n = 0;
};

namespace u {
SetExpr atoms();
SetExpr naturals();
SetExpr prod(SetExpr a, SetExpr b);
SetExpr sum(SetExpr a, SetExpr b);
SetExpr fin_pow(SetExpr x);
SetExpr cofin_pow();
SetExpr fs_pow(SetExpr x);
SetExpr fn(SetExpr dom, SetExpr cod);
SetExpr inj_tuples(SetExpr x);
SetExpr inj_tuples_nonempty(SetExpr x);
SetExpr tuples(SetExpr x);
SetExpr nsized(SetExpr x, std::uint64_t n);
}  // namespace u

// Parses the CLI term syntax, e.g. "Pfs(A*A)+N".
SetExpr parse_setexpr(std::string_view text);
// Round-trips through parse_setexpr.
std::string to_string(const SetExpr& e);
inline std::ostream& operator<<(std::ostream& os, const SetExpr& e) { return os << to_string(e); }
// Mathematical rendering used in reports.
std::string display_name(const SetExpr& e);

// Largest number of atoms in the support of an element; nullopt means unbounded.
std::optional<std::uint64_t> arity(const SetExpr& e);
// Whether the permutation action on e is trivial (no element mentions an atom).
bool is_trivial(const SetExpr& e);
bool contains_naturals(const SetExpr& e);
// Finitely many Fix(S)-orbits for every finite S.
bool orbit_finite(const SetExpr& e);
// Finitely many S-supported elements for every finite S.
bool slice_finite(const SetExpr& e);
// Structural inclusion of denotations (sound, not complete).
bool subset_of(const SetExpr& a, const SetExpr& b);

}  // namespace fsmkit
