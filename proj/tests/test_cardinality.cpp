#include <gtest/gtest.h>

#include <set>

#include "fsmkit/cardinality.hpp"
#include "fsmkit/nominal.hpp"

using namespace fsmkit;

namespace {
Element E(const char* s) { return parse_element(s); }
SetExpr U(const char* s) { return parse_setexpr(s); }
AtomSet first(std::uint64_t n) {
  AtomSet s;
  for (std::uint64_t i = 0; i < n; ++i) s.insert(atom(i));
  return s;
}
std::vector<Element> slice(const char* u, std::uint64_t n, std::uint64_t nat_bound = 4) {
  return enumerate_slice(U(u), first(n), {nat_bound, 2'000'000}).elements;
}
std::mt19937_64& rng() {
  static std::mt19937_64 r(seed_from_env(20260101));
  return r;
}
}  // namespace

TEST(Witness, EvalExamples) {
  EXPECT_EQ(eval(identity_map(Carrier::of(U("A"))), E("a4")), E("a4"));
  EXPECT_EQ(eval(lem3_f(atom(0)), E("()")), E("(a0)"));
  EXPECT_EQ(eval(lem3_f(atom(0)), E("(a2,a1)")), E("(a2,a1)"));
  EXPECT_EQ(eval(lem3_g(), E("(a1,a2)")), E("(a2)"));
  EXPECT_EQ(eval(lem3_g(), E("(a1)")), E("()"));
  EXPECT_THROW(eval(lem3_g(), E("()")), DomainError);
  EXPECT_THROW(eval(lem3_f(atom(0)), E("a1")), DomainError);
}

TEST(Witness, NamedWitnessesAreEquivariant) {
  for (const auto& w : {lem3_f(atom(0)), lem3_g(), cantor_s(atom(1)), singleton_map(), complement_bijection()}) {
    auto r = equivariance_check(w, 300, rng());
    EXPECT_TRUE(r.ok) << w.rule;
    EXPECT_GT(r.trials, 0u) << w.rule;
  }
}

TEST(Witness, EquivarianceCheckRejectsHiddenSupport) {
  FsMapWitness w = identity_map(Carrier::of(U("A")));
  w.rule = "constant";
  w.fn = [](const Element&) { return E("a0"); };  // really supported by {a0}
  auto r = equivariance_check(w, 200, rng());
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.failure);
  w.support = {atom(0)};
  EXPECT_TRUE(equivariance_check(w, 200, rng()).ok);
}

TEST(Witness, Lem3SurjectionsOnPrefixes) {
  auto f = lem3_f(atom(0)), g = lem3_g();
  for (std::uint64_t n = 1; n <= 4; ++n) {
    auto whole = slice("Tinj(A)", n), nonempty = slice("Tinj1(A)", n);
    EXPECT_TRUE(hits_all(f, whole, nonempty));
    // preimages of tuples over n atoms need one more atom
    auto wider = slice("Tinj1(A)", n + 1);
    EXPECT_TRUE(hits_all(g, wider, whole));
    EXPECT_FALSE(injective_on(f, whole));
  }
}

TEST(Witness, JsonCarriesRuleAndCert) {
  json j = to_json(lem3_f(atom(2)));
  EXPECT_EQ(j["rule"], "lem3-f");
  EXPECT_EQ(j["support"], json::array({"a2"}));
  EXPECT_EQ(j["cert"]["surjective"], "proved-by-construction");
  EXPECT_EQ(j["cert"]["injective"], "none");
}

TEST(Csb, IdentityGivesIdentity) {
  auto X = Carrier::finite({E("a0"), E("a1"), E("3")});
  auto id = identity_map(X);
  std::vector<std::pair<Element, Element>> g;
  for (const auto& x : *X.elements) g.emplace_back(x, x);
  auto f = finmap_witness(X, X, g);
  auto r = csb(f, f);
  EXPECT_EQ(r.T, *X.elements);
  for (const auto& x : *X.elements) EXPECT_EQ(eval(r.h, x), x);
  EXPECT_TRUE(r.fixed_point_ok);
}

TEST(Csb, RejectsNonInjective) {
  auto X = Carrier::finite({E("a0"), E("a1")});
  auto f = finmap_witness(X, X, {{E("a0"), E("a0")}, {E("a1"), E("a0")}});
  auto g = finmap_witness(X, X, {{E("a0"), E("a0")}, {E("a1"), E("a1")}});
  EXPECT_THROW(csb(f, g), PreconditionError);
  EXPECT_THROW(csb_traced(f, g), PreconditionError);
}

TEST(Csb, RandomFiniteInstances) {
  RandomElementOptions small{1, 5, 4, 2};
  std::size_t failures = 0;
  for (int t = 0; t < 1000; ++t) {
    std::size_t n = 1 + rng()() % 7;
    std::set<Element> xs, ys;
    while (xs.size() < n) xs.insert(random_element(rng(), small));
    while (ys.size() < n) ys.insert(random_element(rng(), small));
    std::vector<Element> xv(xs.begin(), xs.end()), yv(ys.begin(), ys.end());
    auto X = Carrier::finite(xv), Y = Carrier::finite(yv);
    std::vector<Element> fy = yv, gx = xv;
    std::shuffle(fy.begin(), fy.end(), rng());
    std::shuffle(gx.begin(), gx.end(), rng());
    std::vector<std::pair<Element, Element>> fg, gg;
    for (std::size_t i = 0; i < n; ++i) {
      fg.emplace_back(xv[i], fy[i]);
      gg.emplace_back(yv[i], gx[i]);
    }
    auto r = csb(finmap_witness(X, Y, fg), finmap_witness(Y, X, gg));
    std::set<Element> img;
    for (const auto& x : xv) img.insert(eval(r.h, x));
    if (img != ys || !r.fixed_point_ok || !r.support_ok) ++failures;
  }
  EXPECT_EQ(failures, 0u);
}

TEST(Csb, CyclicShiftsStabilizeAtOnce) {
  std::vector<Element> v;
  for (std::uint64_t i = 0; i < 6; ++i) v.push_back(nat(i));
  auto X = Carrier::finite(v);
  std::vector<std::pair<Element, Element>> fg, gg;
  for (std::uint64_t i = 0; i < 6; ++i) {
    fg.emplace_back(nat(i), nat((i + 1) % 6));
    gg.emplace_back(nat(i), nat((i + 5) % 6));
  }
  auto r = csb(finmap_witness(X, X, fg), finmap_witness(X, X, gg));
  EXPECT_TRUE(r.fixed_point_ok);
  EXPECT_EQ(r.iterations, 0u);
}

namespace {
FsMapWitness nat_into_sum() {
  FsMapWitness f;
  f.domain = Carrier::of(U("N"));
  f.codomain = Carrier::of(U("N+N"));
  f.rule = "inl";
  f.cert.injective = Evidence::ProvedByConstruction;
  f.fn = [](const Element& x) { return inl(x); };
  f.preimage = [](const Element& y) -> std::optional<Element> {
    if (y.kind() == Kind::InL) return y.as<el::InL>().v;
    return std::nullopt;
  };
  return f;
}
FsMapWitness sum_into_nat() {
  FsMapWitness g;
  g.domain = Carrier::of(U("N+N"));
  g.codomain = Carrier::of(U("N"));
  g.rule = "interleave";
  g.cert.injective = Evidence::ProvedByConstruction;
  g.fn = [](const Element& y) {
    if (y.kind() == Kind::InL) return nat(2 * y.as<el::InL>().v.as<el::Nat>().n);
    return nat(2 * y.as<el::InR>().v.as<el::Nat>().n + 1);
  };
  g.preimage = [](const Element& x) -> std::optional<Element> {
    auto n = x.as<el::Nat>().n;
    return n % 2 ? inr(nat(n / 2)) : inl(nat(n / 2));
  };
  return g;
}
}  // namespace

TEST(Csb, TracedOnNaturals) {
  auto h = csb_traced(nat_into_sum(), sum_into_nat());
  std::set<Element> img;
  for (std::uint64_t n = 0; n < 300; ++n) {
    Element y = eval(h, nat(n));
    EXPECT_TRUE(img.insert(y).second);
    EXPECT_EQ(h.preimage(y), nat(n));
  }
  for (std::uint64_t n = 0; n < 50; ++n) {
    EXPECT_TRUE(img.count(inl(nat(n))));
    EXPECT_TRUE(img.count(inr(nat(n))));
  }
}

TEST(Csb, TracedShortDepthIsInconclusive) {
  auto h = csb_traced(nat_into_sum(), sum_into_nat(), 2);
  EXPECT_THROW(eval(h, nat(1u << 20)), Inconclusive);
}

TEST(Csb, FsPowHasNoInjectionIntoFinitePowerset) {
  for (std::uint64_t s = 0; s <= 2; ++s)
    EXPECT_EQ(find_supported_map(U("Pfs(A)"), U("Pfin(A)"), first(s), Want::Injective).outcome,
              SearchOutcome::Unsat);
}

TEST(Conversions, InclusionToSurjection) {
  auto a = Carrier::finite({E("a0")});
  auto f = finmap_witness(a, Carrier::of(U("A")), {{E("a0"), E("a0")}});
  auto fp = injection_to_surjection(f, E("a0"));
  EXPECT_EQ(eval(fp, E("a0")), E("a0"));
  EXPECT_EQ(eval(fp, E("a3")), E("a0"));
  EXPECT_THROW(injection_to_surjection(f, E("a1")), DomainError);
}

TEST(Conversions, SingletonToCantorSurjection) {
  auto fp = injection_to_surjection(singleton_map(), E("a1"));
  EXPECT_EQ(eval(fp, E("{a2}")), E("a2"));
  EXPECT_EQ(eval(fp, E("{a2,a3}")), E("a1"));
  EXPECT_EQ(eval(fp, E("cofin{a2}")), E("a1"));
  EXPECT_EQ(fp.support, AtomSet{atom(1)});
  // every atom of a five-atom probe is hit from the {a1}-supported side
  auto probe = slice("A", 5);
  EXPECT_TRUE(hits_all(fp, slice("Pfs(A)", 5), probe));
  for (const auto& x : probe) EXPECT_EQ(eval(fp, eval(singleton_map(), x)), x);
  EXPECT_TRUE(equivariance_check(fp, 300, rng()).ok);
}

TEST(Conversions, PreimageInjection) {
  auto id = identity_map(Carrier::of(U("A")));
  auto probe = slice("A", 4);
  auto g = preimage_injection(id, probe);
  EXPECT_EQ(eval(g, E("{a1,a3}")), E("{a1,a3}"));
  EXPECT_EQ(eval(g, E("{}")), E("{}"));
  EXPECT_THROW(preimage_injection(singleton_map(), probe), PreconditionError);

  auto tail = lem3_g();
  auto tuples = slice("Tinj1(A)", 3);
  auto pg = preimage_injection(tail, tuples);
  std::vector<Element> image;
  for (const auto& x : tuples) image.push_back(eval(tail, x));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  std::set<Element> vs, out;
  while (vs.size() < 20) {
    std::vector<Element> m;
    for (const auto& y : image)
      if (rng()() % 3 == 0) m.push_back(y);
    vs.insert(finset(m));
  }
  for (const auto& v : vs) out.insert(eval(pg, v));
  EXPECT_EQ(out.size(), vs.size());
  for (const auto& v1 : vs)
    for (const auto& v2 : vs) {
      std::vector<Element> both, lhs;
      for (const auto& y : v1.as<el::FinSet>().members)
        if (finset_contains(v2, y)) both.push_back(y);
      Element g1 = eval(pg, v1), g2 = eval(pg, v2);
      for (const auto& x : g1.as<el::FinSet>().members)
        if (finset_contains(g2, x)) lhs.push_back(x);
      EXPECT_EQ(eval(pg, finset(both)), finset(lhs));
    }
}

TEST(SetContains, Kinds) {
  EXPECT_TRUE(set_contains(E("cofin{a0}"), E("a1")));
  EXPECT_FALSE(set_contains(E("cofin{a0}"), E("a0")));
  EXPECT_TRUE(set_contains(E("nats(01;1)"), E("5")));
  EXPECT_FALSE(set_contains(E("nats(01;1)"), E("0")));
  EXPECT_TRUE(set_contains(E("split({a0},nats(1;0))"), E("inr(0)")));
  EXPECT_FALSE(set_contains(E("split({a0},nats(1;0))"), E("inl(a1)")));
  EXPECT_TRUE(set_contains(E("U[Pn(A,2)]"), E("{a0,a1}")));
}

TEST(Arith, SumMonoWithIdentity) {
  ArithInput in;
  in.f = identity_map(Carrier::of(U("A")));
  in.z = Carrier::of(U("N"));
  auto g = card_arith(ArithRule::SumMono, in);
  for (const auto& x : slice("A+N", 3)) EXPECT_EQ(eval(g, x), x);
}

TEST(Arith, SumLeqProdOnAtoms) {
  ArithInput in;
  in.x = in.y = Carrier::of(U("A"));
  in.picks = {E("a0"), E("a1"), E("a2"), E("a3")};
  auto g = card_arith(ArithRule::SumLeqProd, in);
  EXPECT_EQ(g.support, first(4));
  auto probe = slice("A+A", 6);
  EXPECT_TRUE(injective_on(g, probe));
  for (const auto& x : probe) EXPECT_EQ(g.preimage(eval(g, x)), x);
  EXPECT_TRUE(equivariance_check(g, 300, rng()).ok);

  // two distinct elements per factor suffice
  in.picks = {E("a0"), E("a1"), E("a0"), E("a1")};
  EXPECT_TRUE(injective_on(card_arith(ArithRule::SumLeqProd, in), probe));
  in.picks = {E("a0"), E("a0"), E("a2"), E("a3")};
  EXPECT_THROW(card_arith(ArithRule::SumLeqProd, in), PreconditionError);
}

TEST(Arith, ProdMonoWithSingletons) {
  ArithInput in;
  in.f = singleton_map();
  in.z = Carrier::of(U("A"));
  auto g = card_arith(ArithRule::ProdMono, in);
  EXPECT_EQ(eval(g, E("<a0,a1>")), E("<{a0},a1>"));
  EXPECT_TRUE(injective_on(g, slice("A*A", 5)));
  EXPECT_TRUE(equivariance_check(g, 300, rng()).ok);
}

TEST(Arith, ExponentRules) {
  ArithInput in;
  in.f = singleton_map();
  auto base = card_arith(ArithRule::ExpMonoBase, in);
  EXPECT_EQ(eval(base, E("fn{a0->a1,_->_}")), E("fn{a0->{a1},_->{_}}"));
  auto fns = slice("Fn(A,A)", 2);
  EXPECT_TRUE(injective_on(base, fns));
  for (const auto& h : fns) EXPECT_EQ(base.preimage(eval(base, h)), h);
  EXPECT_TRUE(equivariance_check(base, 200, rng()).ok);

  ArithInput ex;
  ex.f = classified_witness({{{atom(0), atom(1)}, {atom(1), atom(0)}}, std::nullopt});
  ex.z = Carrier::of(U("N"));
  ex.picks = {E("a0")};
  auto exp = card_arith(ArithRule::ExpMonoExp, ex);
  EXPECT_EQ(eval(exp, E("fn{a0->3,_->0}")), E("fn{a1->3,_->0}"));
  auto nfns = slice("Fn(A,N)", 3, 3);
  EXPECT_TRUE(injective_on(exp, nfns));
  EXPECT_TRUE(equivariance_check(exp, 200, rng()).ok);
}

TEST(Arith, TabulateAtomFn) {
  auto f = tabulate_atom_fn([](Atom a) { return pair(mk_atom(a), mk_atom(atom(0))); }, {atom(0)});
  EXPECT_EQ(f, E("fn{_-><_,a0>}"));
  EXPECT_EQ(fn_apply(f, atom(3)), E("<a3,a0>"));
}

TEST(CharBijection, FiniteCarriers) {
  auto one = char_bijection(Carrier::finite({E("a0")}));
  EXPECT_EQ(one.first.domain.elements->size(), 2u);
  EXPECT_EQ(one.first.codomain.elements->size(), 2u);
  auto three = char_bijection(Carrier::finite({E("a0"), E("a1"), E("a2")}));
  const auto& subsets = *three.first.domain.elements;
  ASSERT_EQ(subsets.size(), 8u);
  EXPECT_TRUE(hits_all(three.first, subsets, *three.first.codomain.elements));
  for (const auto& y : subsets) EXPECT_EQ(eval(three.second, eval(three.first, y)), y);
  EXPECT_TRUE(equivariance_check(three.first, 200, rng()).ok);
}

TEST(CharBijection, Atoms) {
  auto [phi, back] = char_bijection(Carrier::of(U("A")));
  EXPECT_EQ(eval(phi, E("{a0}")), E("fn{a0->1,_->0}"));
  EXPECT_EQ(eval(phi, E("cofin{a0}")), E("fn{a0->0,_->1}"));
  for (const auto& y : slice("Pfs(A)", 3)) {
    EXPECT_EQ(eval(back, eval(phi, y)), y);
    auto pi = transposition(atom(0), atom(7));
    EXPECT_EQ(eval(phi, act(pi, y)), act(pi, eval(phi, y)));
  }
  EXPECT_TRUE(equivariance_check(phi, 300, rng()).ok);
  EXPECT_THROW(char_bijection(Carrier::of(U("Pfs(A)"))), PreconditionError);
}

TEST(Complement, Examples) {
  auto c = complement_bijection();
  EXPECT_EQ(eval(c, E("{}")), E("cofin{}"));
  EXPECT_EQ(eval(c, E("{a0}")), E("cofin{a0}"));
  EXPECT_TRUE(c.support.empty());
  std::vector<Element> us = slice("Pfin(A)", 5);
  std::shuffle(us.begin(), us.end(), rng());
  us.resize(20);
  for (const auto& u : us) EXPECT_EQ(c.fn(c.fn(u)), u);
}

TEST(Relation, LeqAndRefutation) {
  auto leq = decide_relation(RelKind::Leq, U("A"), U("A*A"), 1);
  ASSERT_TRUE(leq);
  EXPECT_TRUE(leq->holds());
  auto no = decide_relation(RelKind::Leq, U("A*A"), U("A"), 2);
  ASSERT_TRUE(no);
  EXPECT_FALSE(no->holds());
  json j = to_json(*no);
  EXPECT_EQ(j["refutation"]["certificates"].size(), 3u);
  // A+A ≤ A×A needs two atoms in the support
  auto sum = decide_relation(RelKind::Leq, U("A+A"), U("A*A"), 2);
  ASSERT_TRUE(sum);
  EXPECT_TRUE(sum->holds());
}
