#include "fsmkit/setexpr.hpp"

#include <cctype>
#include <stdexcept>

#include "fsmkit/atoms.hpp"

namespace fsmkit {

SetKind SetExpr::kind() const { return node_->kind; }
const SetExpr& SetExpr::kid(std::size_t i) const { return node_->kids.at(i); }
std::size_t SetExpr::num_kids() const { return node_->kids.size(); }
std::uint64_t SetExpr::n() const { return node_->n; }

bool operator==(const SetExpr& a, const SetExpr& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const SetExpr& a, const SetExpr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.node_ || !b.node_) return a.node_ ? std::strong_ordering::greater : std::strong_ordering::less;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  if (auto c = a.node_->n <=> b.node_->n; c != 0) return c;
  if (auto c = a.node_->kids.size() <=> b.node_->kids.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.node_->kids.size(); ++i)
    if (auto c = a.node_->kids[i] <=> b.node_->kids[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

namespace {
SetExpr make(SetKind k, std::vector<SetExpr> kids = {}, std::uint64_t n = 0) {
  return SetExpr(std::make_shared<const SetExprNode>(SetExprNode{k, std::move(kids), n}));
}
}  // namespace

namespace u {
SetExpr atoms() {
  static const SetExpr e = make(SetKind::Atoms);
  return e;
}
SetExpr naturals() {
  static const SetExpr e = make(SetKind::Naturals);
  return e;
}
SetExpr prod(SetExpr a, SetExpr b) { return make(SetKind::Prod, {std::move(a), std::move(b)}); }
SetExpr sum(SetExpr a, SetExpr b) { return make(SetKind::Sum, {std::move(a), std::move(b)}); }
SetExpr fin_pow(SetExpr x) { return make(SetKind::FinPow, {std::move(x)}); }
SetExpr cofin_pow() { return make(SetKind::CofinPow, {atoms()}); }
SetExpr fs_pow(SetExpr x) { return make(SetKind::FsPow, {std::move(x)}); }
SetExpr fn(SetExpr dom, SetExpr cod) { return make(SetKind::Fn, {std::move(dom), std::move(cod)}); }
SetExpr inj_tuples(SetExpr x) { return make(SetKind::InjTuples, {std::move(x)}, 0); }
SetExpr inj_tuples_nonempty(SetExpr x) { return make(SetKind::InjTuples, {std::move(x)}, 1); }
SetExpr tuples(SetExpr x) { return make(SetKind::Tuples, {std::move(x)}); }
SetExpr nsized(SetExpr x, std::uint64_t n) { return make(SetKind::NSized, {std::move(x)}, n); }
}  // namespace u

namespace {

class Parser {
 public:
  explicit Parser(std::string_view t) : t_(t) {}

  SetExpr parse() {
    SetExpr e = expr();
    skip();
    if (i_ != t_.size()) throw ParseError("unexpected trailing input", i_);
    return e;
  }

 private:
  std::string_view t_;
  std::size_t i_ = 0;

  void skip() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < t_.size() && t_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", i_);
  }

  SetExpr expr() {
    SetExpr e = term();
    while (eat('+')) e = u::sum(e, term());
    return e;
  }
  SetExpr term() {
    SetExpr e = factor();
    while (eat('*')) e = u::prod(e, factor());
    return e;
  }
  SetExpr factor() {
    skip();
    if (eat('(')) {
      SetExpr e = expr();
      expect(')');
      return e;
    }
    std::size_t start = i_;
    while (i_ < t_.size() && std::isalnum(static_cast<unsigned char>(t_[i_]))) ++i_;
    std::string name(t_.substr(start, i_ - start));
    if (name.empty()) throw ParseError("expected universe term", start);
    if (name == "A") return u::atoms();
    if (name == "N") return u::naturals();
    expect('(');
    SetExpr arg = expr();
    SetExpr out;
    if (name == "Pfin") out = u::fin_pow(arg);
    else if (name == "Pfs") out = u::fs_pow(arg);
    else if (name == "Pcof") {
      if (arg.kind() != SetKind::Atoms) throw ParseError("Pcof is defined over A only", start);
      out = u::cofin_pow();
    } else if (name == "Tinj") out = u::inj_tuples(arg);
    else if (name == "Tinj1") out = u::inj_tuples_nonempty(arg);
    else if (name == "Tup") out = u::tuples(arg);
    else if (name == "Fn") {
      expect(',');
      out = u::fn(arg, expr());
    } else if (name == "Pn") {
      expect(',');
      skip();
      std::size_t ds = i_;
      std::uint64_t n = 0;
      while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_])))
        n = n * 10 + static_cast<std::uint64_t>(t_[i_++] - '0');
      if (ds == i_) throw ParseError("expected size", i_);
      out = u::nsized(arg, n);
    } else {
      throw ParseError("unknown constructor '" + name + "'", start);
    }
    expect(')');
    return out;
  }
};

std::string str(const SetExpr& e, int prec) {
  switch (e.kind()) {
    case SetKind::Atoms: return "A";
    case SetKind::Naturals: return "N";
    case SetKind::Sum: {
      std::string s = str(e.kid(0), 0) + "+" + str(e.kid(1), 1);
      return prec > 0 ? "(" + s + ")" : s;
    }
    case SetKind::Prod: {
      std::string s = str(e.kid(0), 1) + "*" + str(e.kid(1), 2);
      return prec > 1 ? "(" + s + ")" : s;
    }
    case SetKind::FinPow: return "Pfin(" + str(e.kid(0), 0) + ")";
    case SetKind::CofinPow: return "Pcof(A)";
    case SetKind::FsPow: return "Pfs(" + str(e.kid(0), 0) + ")";
    case SetKind::Fn: return "Fn(" + str(e.kid(0), 0) + "," + str(e.kid(1), 0) + ")";
    case SetKind::InjTuples: return std::string(e.n() ? "Tinj1(" : "Tinj(") + str(e.kid(0), 0) + ")";
    case SetKind::Tuples: return "Tup(" + str(e.kid(0), 0) + ")";
    case SetKind::NSized: return "Pn(" + str(e.kid(0), 0) + "," + std::to_string(e.n()) + ")";
  }
  return "?";
}

std::string disp(const SetExpr& e, int prec) {
  switch (e.kind()) {
    case SetKind::Atoms: return "A";
    case SetKind::Naturals: return "ℕ";
    case SetKind::Sum: {
      std::string s = disp(e.kid(0), 0) + " + " + disp(e.kid(1), 1);
      return prec > 0 ? "(" + s + ")" : s;
    }
    case SetKind::Prod: {
      std::string s = disp(e.kid(0), 1) + " × " + disp(e.kid(1), 2);
      return prec > 1 ? "(" + s + ")" : s;
    }
    case SetKind::FinPow: return "℘fin(" + disp(e.kid(0), 0) + ")";
    case SetKind::CofinPow: return "℘cofin(A)";
    case SetKind::FsPow: return "℘fs(" + disp(e.kid(0), 0) + ")";
    case SetKind::Fn: return disp(e.kid(1), 3) + "^" + disp(e.kid(0), 3) + "_fs";
    case SetKind::InjTuples:
      return "T_fin(" + disp(e.kid(0), 0) + ")" + (e.n() ? "∖{∅}" : "");
    case SetKind::Tuples: return "T^δ_fin(" + disp(e.kid(0), 0) + ")";
    case SetKind::NSized: return "℘" + std::to_string(e.n()) + "(" + disp(e.kid(0), 0) + ")";
  }
  return "?";
}

}  // namespace

SetExpr parse_setexpr(std::string_view text) { return Parser(text).parse(); }
std::string to_string(const SetExpr& e) { return str(e, 0); }
std::string display_name(const SetExpr& e) { return disp(e, 0); }

std::optional<std::uint64_t> arity(const SetExpr& e) {
  switch (e.kind()) {
    case SetKind::Atoms: return 1;
    case SetKind::Naturals: return 0;
    case SetKind::Prod: {
      auto a = arity(e.kid(0)), b = arity(e.kid(1));
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
    case SetKind::Sum: {
      auto a = arity(e.kid(0)), b = arity(e.kid(1));
      if (!a || !b) return std::nullopt;
      return std::max(*a, *b);
    }
    case SetKind::NSized: {
      auto a = arity(e.kid(0));
      if (!a) return std::nullopt;
      return *a * e.n();
    }
    case SetKind::FinPow:
    case SetKind::CofinPow:
    case SetKind::FsPow:
    case SetKind::InjTuples:
    case SetKind::Tuples: {
      auto a = arity(e.kid(0));
      if (a && *a == 0) return 0;
      return std::nullopt;
    }
    case SetKind::Fn: {
      auto a = arity(e.kid(0)), b = arity(e.kid(1));
      if (a && b && *a == 0 && *b == 0) return 0;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool is_trivial(const SetExpr& e) {
  auto a = arity(e);
  return a && *a == 0;
}

bool contains_naturals(const SetExpr& e) {
  if (e.kind() == SetKind::Naturals) return true;
  for (std::size_t i = 0; i < e.num_kids(); ++i)
    if (contains_naturals(e.kid(i))) return true;
  return false;
}

bool orbit_finite(const SetExpr& e) {
  switch (e.kind()) {
    case SetKind::Atoms: return true;
    case SetKind::Naturals: return false;
    case SetKind::Prod:
    case SetKind::Sum: return orbit_finite(e.kid(0)) && orbit_finite(e.kid(1));
    case SetKind::NSized: return orbit_finite(e.kid(0));
    default: return false;
  }
}

bool slice_finite(const SetExpr& e) {
  switch (e.kind()) {
    case SetKind::Atoms: return true;
    case SetKind::Naturals: return false;
    case SetKind::Prod:
    case SetKind::Sum: return slice_finite(e.kid(0)) && slice_finite(e.kid(1));
    case SetKind::FinPow:
    case SetKind::NSized:
    case SetKind::InjTuples: return slice_finite(e.kid(0));
    case SetKind::CofinPow: return true;
    case SetKind::FsPow: return orbit_finite(e.kid(0));
    case SetKind::Tuples: return false;
    case SetKind::Fn: return orbit_finite(e.kid(0)) && slice_finite(e.kid(1));
  }
  return false;
}

bool subset_of(const SetExpr& a, const SetExpr& b) {
  if (a == b) return true;
  switch (b.kind()) {
    case SetKind::Prod:
    case SetKind::Sum:
      return a.kind() == b.kind() && subset_of(a.kid(0), b.kid(0)) && subset_of(a.kid(1), b.kid(1));
    case SetKind::FinPow:
      return (a.kind() == SetKind::FinPow || a.kind() == SetKind::NSized) && subset_of(a.kid(0), b.kid(0));
    case SetKind::FsPow:
      return (a.kind() == SetKind::FinPow || a.kind() == SetKind::NSized ||
              a.kind() == SetKind::CofinPow || a.kind() == SetKind::FsPow) &&
             subset_of(a.kid(0), b.kid(0));
    case SetKind::InjTuples:
      return a.kind() == SetKind::InjTuples && a.n() >= b.n() && subset_of(a.kid(0), b.kid(0));
    case SetKind::Tuples:
      return (a.kind() == SetKind::InjTuples || a.kind() == SetKind::Tuples) && subset_of(a.kid(0), b.kid(0));
    default: return false;
  }
}

}  // namespace fsmkit
