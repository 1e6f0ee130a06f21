#include <gtest/gtest.h>

#include <iostream>

#include "properties.hpp"

namespace {

TEST(Properties, MonomialAndPerturbedSample) {
  const auto instances = props::sample_instances(200, 150, 20240601u);
  ASSERT_GE(instances.size(), 300u);
  const auto tally = props::run_suite(instances, 8);
  for (const auto& v : tally.violations) ADD_FAILURE() << v;
  EXPECT_EQ(tally.instances, instances.size());
  EXPECT_GE(tally.perturbed, 100u);
  EXPECT_EQ(tally.literal_inequality_fails_cm, 0u);
  EXPECT_EQ(tally.literal_inequality_fails, tally.non_cm);
  EXPECT_GT(tally.descent_checked, 0u);
  std::cout << "descent basis: " << tally.descent_checked << " checked, " << tally.descent_anomalies.size()
            << " anomalies\n";
  for (const auto& label : tally.descent_anomalies) ADD_FAILURE() << "descent basis does not certify BF: " << label;
}

}  // namespace
