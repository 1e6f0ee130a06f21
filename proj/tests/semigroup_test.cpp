#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "apery/explorer.hpp"
#include "apery/semigroup.hpp"
#include "support/oracle.hpp"

namespace apery {
namespace {

using V = std::vector<std::size_t>;

NumericalSemigroup sg(V gens) { return NumericalSemigroup::from_generators(gens); }

TEST(Semigroup, BasicFacts) {
  const auto s = sg({6, 7, 15});
  EXPECT_EQ(s.generators(), (V{6, 7, 15}));
  EXPECT_EQ(s.apery(), (V{0, 7, 14, 15, 22, 29}));
  EXPECT_EQ(s.frobenius(), 23);
  EXPECT_EQ(s.conductor(), 24u);
  EXPECT_EQ(s.genus(), 12u);
  EXPECT_TRUE(s.is_symmetric());
  EXPECT_EQ(s.to_string(), "<6,7,15>");
  EXPECT_EQ(sg_reduction_number(s), 5u);
}

TEST(Semigroup, RedundantGeneratorsAndNaturals) {
  EXPECT_EQ(sg({12, 6, 7, 15, 13}).generators(), (V{6, 7, 15}));
  const auto n = sg({1});
  EXPECT_EQ(n.to_string(), "<1>");
  EXPECT_EQ(n.frobenius(), -1);
  EXPECT_EQ(sg_reduction_number(n), 0u);
}

TEST(Semigroup, InvalidInput) {
  EXPECT_THROW(sg({}), InputError);
  EXPECT_THROW(sg({0, 3}), InputError);
  EXPECT_THROW(sg({4, 6}), InputError);
  std::vector<bool> below{true, false, true, false, false};
  EXPECT_THROW(NumericalSemigroup::from_values(ValueSet(below, 5)), DefectError);
}

TEST(Semigroup, PowerAperyOfExample) {
  const auto s = sg({6, 7, 15});
  const auto seq = sg_power_sequence(s, 6);
  EXPECT_EQ(seq[4].apery, (V{24, 25, 26, 27, 28, 35}));
  EXPECT_EQ(seq[3].apery, (V{18, 19, 20, 21, 28, 29}));
  EXPECT_EQ(seq[6].apery, (V{36, 37, 38, 39, 40, 41}));
  EXPECT_EQ(power_tail_threshold(24, 6, 4), 42u);
  EXPECT_EQ(reduction_number_cap(24, 6), 32u);
}

TEST(Semigroup, PowersMatchSumsetOracle) {
  for (std::size_t e = 2; e <= 7; ++e) {
    for (const auto& gens : enumerate_semigroups(e, 20)) {
      const auto s = sg(gens);
      const std::size_t r = sg_reduction_number(s);
      EXPECT_EQ(r, oracle::sumset_reduction_number(gens)) << s.to_string();
      const std::size_t bound = s.conductor() + (r + 3) * e + 1;
      for (std::size_t i = 0; i <= r + 2; ++i) {
        const auto lib = sg_power_values(s, i);
        const auto brute = oracle::sumset_power(gens, i, bound);
        for (std::size_t n = 0; n < bound; ++n) ASSERT_EQ(lib.values.contains(n), brute[n]) << s.to_string() << " i=" << i << " n=" << n;
        EXPECT_EQ(lib.apery, oracle::apery(brute, e));
      }
    }
  }
}

// Every subset of [1, F] closed under addition, completed by all n > F.
std::map<std::size_t, std::set<V>> brute_force_semigroups(long max_f) {
  std::map<std::size_t, std::set<V>> by_e;
  const std::size_t m = static_cast<std::size_t>(max_f);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<bool> in(2 * m + 2, true);
    for (std::size_t n = 1; n <= m; ++n) in[n] = (mask >> (n - 1)) & 1;
    bool closed = true;
    for (std::size_t a = 1; a <= m && closed; ++a) {
      for (std::size_t b = a; a + b <= m && closed; ++b) closed = !(in[a] && in[b] && !in[a + b]);
    }
    if (!closed) continue;
    std::size_t e = 1;
    while (!in[e]) ++e;
    V gens;
    for (std::size_t n = 1; n < in.size(); ++n) {
      if (in[n] && !oracle::monoid(gens, n + 1)[n]) gens.push_back(n);
    }
    by_e[e].insert(gens);
  }
  return by_e;
}

TEST(Semigroup, EnumerationMatchesBruteForce) {
  constexpr long kMaxF = 12;
  const auto brute = brute_force_semigroups(kMaxF);
  std::size_t total = 0;
  for (std::size_t e = 1; e <= kMaxF + 1; ++e) {
    const auto listed = enumerate_semigroups(e, kMaxF);
    const std::set<V> got(listed.begin(), listed.end());
    EXPECT_EQ(got.size(), listed.size()) << "duplicates at e=" << e;
    const auto it = brute.find(e);
    EXPECT_EQ(got, it == brute.end() ? std::set<V>{} : it->second) << "e=" << e;
    total += got.size();
  }
  // 170 semigroups with 0 <= F <= 12, plus N itself.
  EXPECT_EQ(total, 171u);
}

TEST(Semigroup, CompleteIntersectionCases) {
  const auto c = sg_three_gen_ci(sg({4, 6, 7}));
  EXPECT_TRUE(c.is_ci);
  EXPECT_TRUE(c.gr_ci);
  ASSERT_NE(c.chosen_representation(), nullptr);
  EXPECT_EQ(c.chosen_representation()->case_tag, CICase::c);
  EXPECT_EQ(c.chosen_representation()->third(), 7u);

  const auto x = sg_three_gen_ci(sg({6, 7, 15}));
  EXPECT_TRUE(x.is_ci);
  EXPECT_FALSE(x.gr_ci);
  EXPECT_EQ(x.chosen_representation()->case_tag, CICase::none);

  const auto a = sg_three_gen_ci(sg({6, 8, 9}));
  EXPECT_TRUE(a.gr_ci);
  EXPECT_EQ(a.chosen_representation()->case_tag, CICase::a);
  EXPECT_EQ(a.chosen_representation()->subcase, "n<n1");

  const auto n = sg_three_gen_ci(sg({3, 4, 5}));
  EXPECT_FALSE(n.is_ci);
  EXPECT_FALSE(n.gr_ci);

  const auto plane = sg_three_gen_ci(sg({3, 5}));
  EXPECT_TRUE(plane.plane);
  EXPECT_TRUE(plane.is_ci && plane.gr_ci);

  EXPECT_THROW(sg_three_gen_ci(sg({5, 6, 7, 8})), InputError);
}

TEST(Semigroup, ThreeGeneratedCiIffSymmetric) {
  for (std::size_t e = 3; e <= 8; ++e) {
    for (const auto& gens : enumerate_semigroups(e, 30)) {
      if (gens.size() != 3) continue;
      const auto s = sg(gens);
      const auto ci = sg_three_gen_ci(s);
      EXPECT_EQ(ci.is_ci, s.is_symmetric()) << s.to_string();
      for (const auto& rep : ci.representations) {
        V triple{rep.n * rep.a, rep.n * rep.b, rep.third()};
        std::sort(triple.begin(), triple.end());
        EXPECT_EQ(triple, s.generators()) << s.to_string();
        EXPECT_EQ(std::gcd(rep.a, rep.b), 1u);
      }
    }
  }
}

}  // namespace
}  // namespace apery
