// Parameter defaults, derived constants, and enum parsing.

#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "cogrelay/params.hpp"

namespace {

using namespace cogrelay;

TEST(Params, DefaultsMatchTheReferenceOperatingPoint) {
  SystemParams p;
  EXPECT_EQ(p.n_su, 2);
  EXPECT_DOUBLE_EQ(p.lambda_p, 0.1);
  EXPECT_DOUBLE_EQ(p.rate_r0, 2.0);
  EXPECT_DOUBLE_EQ(p.p0_over_n0, 10.0);
  EXPECT_NEAR(p.pmax_over_n0, 5.0118723362727229, 1e-15);  // 7 dB
  EXPECT_DOUBLE_EQ(p.sigma_p_sq, 0.25);
  EXPECT_NO_THROW(p.validate());
}

TEST(Params, DerivedConstantsAtDefaults) {
  const DerivedConstants c = derive_constants(SystemParams{});
  EXPECT_DOUBLE_EQ(c.alpha, 0.3);  // (2^2 - 1) / 10
  EXPECT_NEAR(c.a, 0.59857869449066388, 3e-16);  // within ulps of the stored
  EXPECT_NEAR(c.b, 1.0 / 3.0, 1e-17);            // 7 dB cap
  EXPECT_NEAR(c.beta, 0.45040778031152906, 3e-16);
}

TEST(Params, ZeroCapMeansInfiniteThreshold) {
  SystemParams p;
  p.pmax_over_n0 = 0.0;
  const DerivedConstants c = derive_constants(p);
  EXPECT_TRUE(std::isinf(c.a));
  EXPECT_DOUBLE_EQ(c.beta, 1.0);
}

TEST(Params, ValidationRejectsNonsense) {
  SystemParams p;
  p.n_su = 1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = SystemParams{};
  p.lambda_p = 1.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = SystemParams{};
  p.lambda_p = -0.1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = SystemParams{};
  p.rate_r0 = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = SystemParams{};
  p.p0_over_n0 = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = SystemParams{};
  p.sigma_p_sq = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Params, EnumParsingRoundTrips) {
  EXPECT_EQ(parse_power_policy("EP"), PowerPolicy::EP);
  EXPECT_EQ(parse_power_policy("AP"), PowerPolicy::AP);
  EXPECT_EQ(parse_selection_policy("BSL"), SelectionPolicy::BSL);
  EXPECT_EQ(parse_selection_policy("BPL"), SelectionPolicy::BPL);
  EXPECT_EQ(parse_reselect_mode("analysis_faithful"),
            ReselectMode::AnalysisFaithful);
  EXPECT_EQ(parse_reselect_mode("literal"), ReselectMode::Literal);
  EXPECT_THROW(parse_power_policy("XX"), std::invalid_argument);
  EXPECT_THROW(parse_selection_policy(""), std::invalid_argument);
  EXPECT_THROW(parse_reselect_mode("sometimes"), std::invalid_argument);
}

TEST(Params, PolicyLabelsAreStable) {
  PolicyConfig c;
  EXPECT_EQ(policy_label(c), "EP-BSL");
  c.power = PowerPolicy::AP;
  c.selection = SelectionPolicy::BPL;
  EXPECT_EQ(policy_label(c), "AP-BPL");
}

}  // namespace
