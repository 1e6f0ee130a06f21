#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "apery/criteria.hpp"

namespace apery {
namespace {

using V = std::vector<std::size_t>;
const Field kQ = Field::rational();

std::vector<TruncatedSeries> basis_of(const CurveRing& ring, const std::vector<std::string>& texts) {
  std::vector<TruncatedSeries> out;
  for (const auto& t : texts) out.push_back(ring_element(ring, t));
  return out;
}

TEST(Criteria, EssentialDivisibilityDependsOnReduction) {
  const auto ring = ring_build(kQ, {"t^6", "t^7", "t^15"});
  const auto good = check_essential_divisibility(ring, make_reduction(ring, "t^6"));
  EXPECT_TRUE(good.holds);
  EXPECT_TRUE(good.consistent);
  EXPECT_FALSE(good.witness.has_value());

  const auto bad = check_essential_divisibility(ring, make_reduction(ring, "t^6+t^7"));
  EXPECT_FALSE(bad.holds);
  EXPECT_FALSE(bad.via_union);
  EXPECT_FALSE(bad.via_intersection);
  EXPECT_TRUE(bad.consistent);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_EQ(bad.witness->i, 3u);
  EXPECT_EQ(bad.witness->value, 22u);
  EXPECT_EQ(bad.witness->cls, 4u);
}

TEST(Criteria, LemmaRowsAgree) {
  const auto ring = ring_build(kQ, {"t^6", "t^8+t^9", "t^19"});
  const auto lemma = lemma_sum_intersect_check(ring, make_reduction(ring, "default"));
  EXPECT_TRUE(lemma.holds);
  EXPECT_EQ(lemma.rows.size(), ring.reduction_number() + 2);
  for (const auto& row : lemma.rows) EXPECT_EQ(row.union_holds, row.intersection_holds);
}

TEST(Criteria, MonomialBasisFailsForBentReduction) {
  const auto ring = ring_build(kQ, {"t^6", "t^7", "t^15"});
  const auto x = make_reduction(ring, "t^6+t^7");
  const auto basis = basis_of(ring, {"1", "t^7", "t^14", "t^15", "t^22", "t^29"});
  const auto bf = check_bf(ring, x, basis);
  EXPECT_FALSE(bf.holds);
  EXPECT_EQ(bf.status, "witness-failed");
  bool saw_28 = false;
  for (const auto& c : bf.certificates) {
    if (c.i == 4 && c.cls == 4) {
      EXPECT_EQ(c.value, 28u);
      EXPECT_EQ(c.h, 1u);
      EXPECT_FALSE(c.member);
      saw_28 = true;
    }
  }
  EXPECT_TRUE(saw_28);
  ASSERT_TRUE(bf.witness.has_value());
  // (t^6+t^7) t^15 = t^21 + t^22 already leaves m^3.
  EXPECT_EQ(bf.witness->i, 3u);
  EXPECT_EQ(bf.witness->value, 21u);

  EXPECT_TRUE(check_bf(ring, make_reduction(ring, "t^6"), basis).holds);
}

TEST(Criteria, BasisChoiceMatters) {
  const auto ring = ring_build(kQ, {"t^4", "t^6+t^7", "t^13"});
  EXPECT_EQ(ring.semigroup().apery(), (V{0, 13, 6, 15}));
  const auto x = make_reduction(ring, "t^4");
  const auto good = check_bf(ring, x, basis_of(ring, {"1", "t^6+t^7", "2*t^13+t^14", "t^15"}));
  EXPECT_TRUE(good.holds);
  EXPECT_EQ(good.status, "certified");
  const auto bad = check_bf(ring, x, basis_of(ring, {"1", "t^6+t^7", "t^13", "t^15"}));
  EXPECT_FALSE(bad.holds);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_EQ(bad.witness->i, 2u);
  EXPECT_EQ(bad.witness->value, 13u);
  EXPECT_THROW(check_bf(ring, x, basis_of(ring, {"1", "t^6+t^7", "t^13"})), InputError);
}

TEST(Criteria, BryantBasisFailsAtThree) {
  const auto ring = ring_build(kQ, {"t^6", "t^8+t^9", "t^19"});
  EXPECT_EQ(ring.semigroup().apery(), (V{0, 19, 8, 27, 16, 29}));
  const auto x = make_reduction(ring, "t^6");
  const auto bf = check_bf(ring, x, basis_of(ring, {"1", "t^8+t^9", "t^16+2*t^17+t^18", "t^19", "t^27+t^28", "t^29"}));
  EXPECT_FALSE(bf.holds);
  ASSERT_TRUE(bf.witness.has_value());
  EXPECT_EQ(bf.witness->i, 3u);
  EXPECT_EQ(bf.witness->value, 25u);
  EXPECT_EQ(bf.witness->cls, 1u);
  EXPECT_FALSE(bf_basis_search(ring, x).has_value());
}

TEST(Criteria, AutomaticRoutes) {
  EXPECT_EQ(bf_auto(ring_build(kQ, {"t^6", "t^7", "t^15"})).route, "semigroup-algebra");
  EXPECT_EQ(bf_auto(ring_build(kQ, {"t^6", "t^8+t^9"})).route, "embedding-dimension");
  EXPECT_EQ(bf_auto(ring_build(kQ, {"t^4", "t^6", "t^7+t^9"})).route, "reduction-number");
  const auto natural = bf_auto(ring_build(kQ, {"t^4", "t^6+t^7", "t^13"}));
  EXPECT_TRUE(natural.holds);
  EXPECT_EQ(natural.route, "natural-witness");
  const auto bryant = bf_auto(ring_build(kQ, {"t^6", "t^8+t^9", "t^19"}));
  EXPECT_FALSE(bryant.holds);
  EXPECT_EQ(bryant.status, "no-witness-within-budget");
  EXPECT_EQ(bryant.natural_witness_holds, std::optional<bool>(false));
  EXPECT_GE(bryant.reductions_tried, 1u);
}

TEST(Criteria, CandidateReductionsStartWithDefault) {
  const auto ring = ring_build(kQ, {"t^6", "t^8+t^9", "t^19"});
  BfBudget budget;
  budget.max_reductions = 5;
  const auto cands = candidate_reductions(ring, budget);
  ASSERT_FALSE(cands.empty());
  EXPECT_LE(cands.size(), 5u);
  EXPECT_EQ(cands.front().to_string(), "t^6");
  for (const auto& x : cands) EXPECT_EQ(x.x.order(), 6u);
}

TEST(Criteria, DescentBasisCertifiesOnCohenMacaulayRings) {
  const std::vector<std::vector<std::string>> rings{{"t^4", "t^6", "t^7+t^9"},  {"t^6", "t^8+t^13", "t^9"},
                                                    {"t^6", "t^9+t^11", "t^4"}, {"t^6", "t^7+t^11", "t^9"},
                                                    {"t^6", "t^8+t^9"},         {"t^5", "t^7+t^8", "t^9"}};
  std::size_t checked = 0;
  for (const auto& gens : rings) {
    const auto ring = ring_build(kQ, gens);
    const auto x = make_reduction(ring, "default");
    if (!cm_verdict(ring, x).via_hilbert || !check_essential_divisibility(ring, x).holds) continue;
    const auto basis = descent_basis(ring, x);
    ASSERT_TRUE(basis.has_value()) << gens[1];
    EXPECT_TRUE(check_bf(ring, x, *basis).holds) << gens[1];
    ++checked;
  }
  EXPECT_GE(checked, 5u);
}

TEST(Criteria, BasisSearchFindsCertificate) {
  const auto ring = ring_build(kQ, {"t^4", "t^6+t^7", "t^13"});
  const auto x = make_reduction(ring, "t^4");
  const auto searched = bf_basis_search(ring, x);
  ASSERT_TRUE(searched.has_value());
  EXPECT_TRUE(check_bf(ring, x, *searched).holds);
}

TEST(Criteria, CohenMacaulayRoutesAgree) {
  const auto ring = ring_build(kQ, {"t^6", "t^7", "t^15"});
  const auto cm = cm_verdict(ring, make_reduction(ring, "t^6"));
  EXPECT_FALSE(cm.via_hilbert);
  EXPECT_FALSE(cm.via_ab);
  EXPECT_FALSE(cm.via_cz);
  EXPECT_TRUE(cm.ab_applicable);
  EXPECT_TRUE(cm.consistent);
  EXPECT_EQ(cm.ab_failing, (V{3, 4, 5}));

  const auto plane = ring_build(kQ, {"t^6", "t^8+t^9"});
  const auto yes = cm_verdict(plane, make_reduction(plane, "default"));
  EXPECT_TRUE(yes.via_hilbert && yes.via_ab && yes.via_cz && yes.consistent);
}

struct CiCase {
  std::vector<std::string> generators;
  std::string route;
  CICase tag;
  std::string subcase;
};

TEST(Criteria, CompleteIntersectionFamilies) {
  const std::vector<CiCase> cases{
      {{"t^6", "t^8+t^13", "t^9"}, "section2-family", CICase::a, "n<n1"},
      {{"t^6", "t^9+t^11", "t^4"}, "section2-family", CICase::a, "n1<n"},
      {{"t^6", "t^7+t^11", "t^9"}, "section2-family", CICase::b, ""},
      {{"t^4", "t^6", "t^7+t^9"}, "section2-family", CICase::c, ""},
      {{"t^6", "t^8", "t^9"}, "monomial-classification", CICase::a, "n<n1"},
      {{"t^6", "t^8+t^9"}, "plane-branch", CICase::none, ""},
  };
  for (const auto& c : cases) {
    const auto ring = ring_build(kQ, c.generators);
    const auto ci = ci_verdict(ring);
    EXPECT_EQ(ci.verdict, "CI") << c.generators[1];
    EXPECT_EQ(ci.route, c.route) << c.generators[1];
    if (c.route == "plane-branch") continue;
    ASSERT_TRUE(ci.classification && ci.representation) << c.generators[1];
    const auto& rep = ci.classification->representations.at(*ci.representation);
    EXPECT_EQ(rep.case_tag, c.tag) << c.generators[1];
    EXPECT_EQ(rep.subcase, c.subcase) << c.generators[1];
    EXPECT_TRUE(rep.gr_ci);
  }
  EXPECT_EQ(ci_verdict(ring_build(kQ, {"t^6", "t^7", "t^15"})).verdict, "not-CI");
  EXPECT_EQ(ci_verdict(ring_build(kQ, {"t^3", "t^4", "t^5"})).verdict, "not-CI");
}

TEST(Criteria, HilbertTransfer) {
  const auto source = ring_build(kQ, {"t^4", "t^6", "t^7"});
  const auto target = ring_build(kQ, {"t^4", "t^6", "t^7+t^9"});
  const auto report = hilbert_transfer(source, target);
  EXPECT_TRUE(report.applicable) << report.reason;
  EXPECT_TRUE(report.source_cm);
  EXPECT_EQ(report.target_cm, std::optional<bool>(true));
  EXPECT_EQ(report.hilbert_equal, std::optional<bool>(true));

  const auto other = hilbert_transfer(source, ring_build(kQ, {"t^6", "t^7", "t^15"}));
  EXPECT_FALSE(other.applicable);
  EXPECT_FALSE(other.reason.empty());
}

}  // namespace
}  // namespace apery
