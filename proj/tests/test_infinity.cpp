#include <gtest/gtest.h>

#include <set>

#include "fsmkit/infinity.hpp"
#include "fsmkit/nominal.hpp"
#include "fsmkit/universes.hpp"

using namespace fsmkit;

namespace {
SetExpr U(const char* s) { return parse_setexpr(s); }
Element E(const char* s) { return parse_element(s); }
AtomSet first(std::uint64_t n) {
  AtomSet s;
  for (std::uint64_t i = 0; i < n; ++i) s.insert(atom(i));
  return s;
}
const InfinityConfig kCfg{};

// The reference table, copied by hand. Columns: TI, TIII, Ded, Most, Asc, TII, NonAm.
struct Expected {
  const char* expr;
  const char* cells;  // Y, N or ? per column
};
const Expected kReferenceTable[] = {
    {"A", "NNNNNNN"},           {"A+A", "NNNNNNY"},         {"A*A", "NNNNNNY"},
    {"Pfin(A)", "NNNNYYY"},     {"Tinj(A)", "NNNNYYY"},     {"Pfs(A)", "NNNNYYY"},
    {"Pfin(Pfs(A))", "NNNNYYY"}, {"Fn(A,A)", "NNNNYYY"},    {"Fn(A,Tinj(A))", "NNNNYYY"},
    {"Fn(A,Pfs(A))", "NNNNYYY"}, {"A+N", "NNYYYYY"},        {"A*N", "NYYYYYY"},
    {"Pfs(A+N)", "NYYYYYY"},    {"Pfs(Pfs(A))", "?YYYYYY"}, {"Fn(N,A)", "YYYYYYY"},
    {"Fn(A,N)", "YYYYYYY"},
};

Value cell(char c) { return c == 'Y' ? Value::Yes : c == 'N' ? Value::No : Value::Unknown; }

const TableReport& table() {
  static const TableReport t = build_table(kCfg);
  return t;
}

Refutation refuted(const Detected<UniformSequenceWitness>& d) { return std::get<Refutation>(d); }
}  // namespace

TEST(Table, MatchesReferenceTable) {
  const auto& t = table();
  ASSERT_EQ(t.rows.size(), std::size(kReferenceTable));
  EXPECT_EQ(t.mismatches, 0u);
  EXPECT_EQ(t.inconclusive, 0u);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    EXPECT_EQ(to_string(row.expr), to_string(U(kReferenceTable[r].expr)));
    for (std::size_t c = 0; c < kTableColumns.size(); ++c)
      EXPECT_EQ(row.at(kTableColumns[c]), cell(kReferenceTable[r].cells[c]))
          << row.label << " " << notion_name(kTableColumns[c]);
  }
}

TEST(Table, NoImplicationIsViolated) {
  for (const auto& row : table().rows) EXPECT_TRUE(implication_violations(row).empty()) << row.label;
}

TEST(Table, UsualAndCoveringAgreeEverywhere) {
  for (const auto& row : table().rows) {
    EXPECT_EQ(row.at(Notion::Usual), Value::Yes) << row.label;
    EXPECT_EQ(row.at(Notion::Covering), row.at(Notion::Usual)) << row.label;
  }
}

TEST(Table, YesCellsCarryEvidenceOrCitation) {
  for (const auto& row : table().rows)
    for (auto n : kTableColumns) {
      const auto& v = row.verdicts.at(n);
      EXPECT_FALSE(v.method.empty()) << row.label;
      if (v.value == Value::Yes && v.method == "witness") EXPECT_FALSE(v.evidence.is_null()) << row.label;
    }
}

TEST(Table, OnlyOneYesIsCited) {
  std::size_t cited = 0;
  for (const auto& row : table().rows)
    for (auto n : kTableColumns)
      if (row.verdicts.at(n).method == "cited" && row.verdicts.at(n).value == Value::Yes) {
        ++cited;
        EXPECT_EQ(to_string(row.expr), to_string(U("Pfs(Pfs(A))")));
        EXPECT_EQ(n, Notion::TarskiIII);
      }
  EXPECT_EQ(cited, 1u);
}

TEST(Table, MarkdownFlagsCitedCell) {
  auto md = render_markdown(table());
  EXPECT_NE(md.find("Yes*"), std::string::npos);
  EXPECT_NE(md.find("| ? |"), std::string::npos);
}

TEST(Implications, ViolationIsReported) {
  ClassificationRow row{"fake", U("N"), {}};
  row.verdicts[Notion::TarskiI] = Verdict{Notion::TarskiI, Value::Yes, "witness", "", "", nullptr};
  row.verdicts[Notion::TarskiIII] = Verdict{Notion::TarskiIII, Value::No, "counting", "", "", nullptr};
  EXPECT_EQ(implication_violations(row).size(), 1u);
}

TEST(Dedekind, Naturals) {
  auto d = dedekind_witness(U("N"), kCfg);
  auto& w = std::get<UniformSequenceWitness>(d);
  EXPECT_TRUE(w.support.empty());
  EXPECT_GE(w.checked_prefix, kCfg.prefix);
  for (std::uint64_t n = 0; n < 10; ++n) EXPECT_EQ(w.generator(n), nat(n));
}

TEST(Dedekind, TuplesOfAtomsRepeatOneAtom) {
  auto d = dedekind_witness(U("Tinj(A)"), kCfg);
  ASSERT_TRUE(std::holds_alternative<Refutation>(d));
  auto t = dedekind_witness(U("Tup(A)"), kCfg);
  auto& w = std::get<UniformSequenceWitness>(t);
  EXPECT_EQ(w.support, first(1));
  EXPECT_EQ(w.generator(3), E("(a0,a0,a0)"));
  std::set<Element> seen;
  for (std::uint64_t n = 0; n < 30; ++n) {
    auto x = w.generator(n);
    EXPECT_TRUE(member(x, U("Tup(A)")));
    EXPECT_TRUE(is_supported_by(x, w.support));
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 30u);
}

TEST(Dedekind, AtomsRefutedByFiniteCounts) {
  auto r = refuted(dedekind_witness(U("A"), kCfg));
  const auto& counts = r.certificate.at("counts");
  ASSERT_GE(counts.size(), 3u);
  for (std::size_t k = 0; k < counts.size(); ++k) EXPECT_EQ(counts[k].at("count").get<std::uint64_t>(), k);
}

TEST(Dedekind, PfsAtomsCountsMatchHandOracle) {
  // S-supported subsets of A are the subsets of S and their complements.
  auto r = refuted(dedekind_witness(U("Pfs(A)"), kCfg));
  const auto& counts = r.certificate.at("counts");
  for (std::size_t k = 0; k < counts.size(); ++k) {
    EXPECT_EQ(counts[k].at("count").get<std::uint64_t>(), 2u << k);
    if (!counts[k].at("enumerated").is_null()) EXPECT_EQ(counts[k].at("enumerated"), counts[k].at("count"));
  }
}

TEST(TarskiIII, NaturalsByParity) {
  auto f = std::get<FsMapWitness>(tarski3_witness(U("N"), kCfg));
  EXPECT_EQ(eval(f, inl(nat(3))), nat(6));
  EXPECT_EQ(eval(f, inr(nat(3))), nat(7));
  EXPECT_EQ(*f.preimage(nat(9)), inr(nat(4)));
}

TEST(TarskiIII, AtomsTimesNaturals) {
  auto f = std::get<FsMapWitness>(tarski3_witness(U("A*N"), kCfg));
  std::set<Element> image;
  for (std::uint64_t i = 0; i < 3; ++i)
    for (std::uint64_t n = 0; n < 5; ++n) {
      auto x = pair(mk_atom(atom(i)), nat(n));
      for (auto side : {inl(x), inr(x)}) {
        auto y = eval(f, side);
        EXPECT_TRUE(member(y, U("A*N")));
        EXPECT_EQ(*f.preimage(y), side);
        image.insert(y);
      }
    }
  EXPECT_EQ(image.size(), 30u);
}

TEST(TarskiIII, AtomsPlusNaturalsRefuted) {
  auto d = tarski3_witness(U("A+N"), kCfg);
  ASSERT_TRUE(std::holds_alternative<Refutation>(d));
}

TEST(TarskiI, NaturalsPairingBijection) {
  auto f = std::get<FsMapWitness>(tarski1_witness(U("N"), kCfg));
  std::set<Element> image;
  for (std::uint64_t m = 0; m < 12; ++m)
    for (std::uint64_t n = 0; n < 12; ++n) image.insert(eval(f, pair(nat(m), nat(n))));
  EXPECT_EQ(image.size(), 144u);
  for (std::uint64_t k = 0; k < 200; ++k) {
    auto p = f.preimage(nat(k));
    ASSERT_TRUE(p.has_value()) << k;
    EXPECT_EQ(eval(f, *p), nat(k));
  }
  // 0 is not of the form 2^m 3^n, so (0,0) is sent back along n ↦ (n,0).
  EXPECT_EQ(eval(f, pair(nat(0), nat(0))), nat(0));
  EXPECT_EQ(eval(f, pair(nat(0), nat(1))), nat(3));
}

TEST(TarskiI, AtomsTimesNaturalsRefutedBySolver) {
  auto d = tarski1_witness(U("A*N"), kCfg);
  ASSERT_TRUE(std::holds_alternative<Refutation>(d));
}

TEST(TarskiI, DoublePowersetUnknown) {
  auto d = tarski1_witness(U("Pfs(Pfs(A))"), kCfg);
  EXPECT_TRUE(std::holds_alternative<Unknown>(d));
}

TEST(TarskiI, SequencesByInterleaving) {
  auto f = std::get<FsMapWitness>(tarski1_witness(U("Fn(N,A)"), kCfg));
  auto x = atom_seq({}, {atom(0)});
  auto y = atom_seq({atom(1)}, {atom(2)});
  auto z = eval(f, pair(x, y));
  EXPECT_EQ(seq_at(z, 0), atom(0));
  EXPECT_EQ(seq_at(z, 1), atom(1));
  EXPECT_EQ(seq_at(z, 3), atom(2));
  EXPECT_EQ(*f.preimage(z), pair(x, y));
}

TEST(Mostowski, Examples) {
  EXPECT_EQ(mostowski_verdict(U("A+N"), kCfg).value, Value::Yes);
  EXPECT_EQ(mostowski_verdict(U("A"), kCfg).value, Value::No);
  EXPECT_EQ(mostowski_verdict(U("Fn(A,A)"), kCfg).value, Value::No);
}

TEST(Ascending, FinitePowersetChain) {
  auto w = std::get<ChainWitness>(ascending_witness(U("Pfin(A)"), kCfg));
  EXPECT_TRUE(w.support.empty());
  EXPECT_GE(w.checked_prefix, kCfg.prefix);
  for (std::uint64_t n = 0; n < 6; ++n) {
    auto x = w.escape(n);
    EXPECT_TRUE(member(x, U("Pfin(A)")));
    EXPECT_FALSE(w.in_term(n, x));
    EXPECT_TRUE(w.in_term(n + 1, x) || w.in_term(n + 2, x));
  }
}

TEST(Ascending, TermsStrictlyGrowOnProbe) {
  auto w = std::get<ChainWitness>(ascending_witness(U("Pfin(A)"), kCfg));
  auto probe = enumerate_slice(U("Pfin(A)"), first(5)).elements;
  std::size_t in2 = 0, in3 = 0;
  for (const auto& x : probe) {
    bool a = w.in_term(2, x), b = w.in_term(3, x);
    if (a) EXPECT_TRUE(b) << x;
    in2 += a;
    in3 += b;
  }
  // Subsets of a 5-atom pool: sizes ≤ 2 give 16, sizes ≤ 3 give 26.
  EXPECT_EQ(in2, 16u);
  EXPECT_EQ(in3, 26u);
}

TEST(Ascending, AtomsRefuted) {
  EXPECT_TRUE(std::holds_alternative<Refutation>(ascending_witness(U("A"), kCfg)));
}

TEST(Amorphous, Examples) {
  auto [na_sum, nua_sum] = amorphous_verdicts(U("A+A"), kCfg);
  EXPECT_EQ(na_sum.value, Value::Yes);
  EXPECT_EQ(nua_sum.value, Value::No);
  auto [na_a, nua_a] = amorphous_verdicts(U("A"), kCfg);
  EXPECT_EQ(na_a.value, Value::No);
  EXPECT_EQ(nua_a.value, Value::No);
  EXPECT_EQ(amorphous_verdicts(U("Pfin(A)"), kCfg).second.value, Value::No);
  EXPECT_EQ(amorphous_verdicts(U("N"), kCfg).second.value, Value::Yes);
}

TEST(Classify, SampleRows) {
  auto a = classify(U("A"), kCfg);
  for (auto n : kTableColumns) EXPECT_EQ(a.at(n), Value::No);
  EXPECT_EQ(a.at(Notion::NonUniformlyAmorphous), Value::No);

  auto an = classify(U("A*N"), kCfg);
  EXPECT_EQ(an.at(Notion::TarskiI), Value::No);
  EXPECT_EQ(an.at(Notion::TarskiIII), Value::Yes);
  EXPECT_EQ(an.at(Notion::NonUniformlyAmorphous), Value::Yes);

  auto p = classify(U("Pfs(A)"), kCfg);
  EXPECT_EQ(p.at(Notion::Dedekind), Value::No);
  EXPECT_EQ(p.at(Notion::Ascending), Value::Yes);
  EXPECT_EQ(p.at(Notion::TarskiII), Value::Yes);
}

TEST(Classify, JsonHasEveryNotion) {
  auto j = to_json(table());
  ASSERT_TRUE(j.contains("rows"));
  for (const auto& row : j.at("rows")) EXPECT_EQ(row.at("verdicts").size(), 10u);
}

TEST(Amorphous, SizedSubsetsSplitOnAFixedAtom) {
  auto na = amorphous_verdicts(U("Pn(A,3)"), kCfg).first;
  EXPECT_EQ(na.value, Value::Yes);
  EXPECT_NE(na.id.find("a0"), std::string::npos);
}
