// The independent oracles themselves: numeric integration of the success
// probability, exact Monte Carlo, and the KS machinery.

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "cogrelay/closed_form.hpp"
#include "cogrelay/oracle.hpp"

namespace {

using namespace cogrelay;

DerivedConstants consts_for(double a) {
  DerivedConstants c;
  c.a = a;
  c.b = 1.0 / 3.0;
  c.beta = -std::expm1(-a);
  return c;
}

TEST(QuadratureOracle, AgreesWithClosedFormAtReferencePoint) {
  const DerivedConstants c = consts_for(0.59857869449066388);  // 7 dB cap
  PolicyConfig policy;
  for (PowerPolicy power : {PowerPolicy::EP, PowerPolicy::AP}) {
    for (SelectionPolicy selection :
         {SelectionPolicy::BSL, SelectionPolicy::BPL}) {
      policy.power = power;
      policy.selection = selection;
      EXPECT_NEAR(quadrature_f_rstar(policy, c, 2), f_rstar(policy, c, 2),
                  1e-7)
          << policy_label(policy);
    }
  }
}

TEST(QuadratureOracle, ZeroCapLimit) {
  DerivedConstants c = consts_for(1.0);
  c.a = std::numeric_limits<double>::infinity();
  c.beta = 1.0;
  PolicyConfig policy;
  EXPECT_EQ(quadrature_f_rstar(policy, c, 3), 0.0);
}

TEST(QuadratureOracle, RejectsUnsupportedSizes) {
  const DerivedConstants c = consts_for(0.5);
  PolicyConfig policy;
  EXPECT_THROW(quadrature_f_rstar(policy, c, 1), std::invalid_argument);
  EXPECT_THROW(quadrature_f_rstar(policy, c, 11), std::domain_error);
}

TEST(ExactMonteCarlo, TracksClosedFormUnderBestSecondarySelection) {
  PolicyConfig policy;  // EP-BSL: the analysis is exact here
  SystemParams params;
  const MonteCarloEstimate est =
      monte_carlo_success(policy, params, 400000, 12345);
  const double truth = f_rstar(policy, derive_constants(params), 2);
  EXPECT_NEAR(est.f_rstar_hat, truth, est.ci_halfwidth);
  EXPECT_GT(est.ci_halfwidth, 0.0);
  EXPECT_LT(est.ci_halfwidth, 0.01);
}

TEST(ExactMonteCarlo, RevealsTheIndependenceRelaxationGap) {
  PolicyConfig policy;
  policy.selection = SelectionPolicy::BPL;  // EP-BPL carries the known gap
  SystemParams params;
  const MonteCarloEstimate est =
      monte_carlo_success(policy, params, 400000, 12345);
  const double relaxed = f_rstar(policy, derive_constants(params), 2);
  EXPECT_GT(relaxed - est.f_rstar_hat, 10.0 * est.ci_halfwidth / 3.0);
}

TEST(ExactMonteCarlo, RejectsTinyDrawCounts) {
  PolicyConfig policy;
  SystemParams params;
  EXPECT_THROW(monte_carlo_success(policy, params, 99999, 1),
               std::invalid_argument);
}

TEST(ExactMonteCarlo, GridSharesDrawsConsistently) {
  const std::vector<double> a_values = {0.3, 1.0};
  const auto grid = exact_mc_grid(2, a_values, 2.0, 150000, 777);
  ASSERT_EQ(grid.size(), 2u);
  for (std::size_t i = 0; i < a_values.size(); ++i) {
    const DerivedConstants c = consts_for(a_values[i]);
    // Columns 0 and 2 are the best-secondary-link policies; exact MC and
    // the closed forms must agree within the (wide) 3-sigma band.
    PolicyConfig policy;
    policy.power = PowerPolicy::EP;
    EXPECT_NEAR(grid[i][0].f_rstar_hat, f_rstar(policy, c, 2),
                grid[i][0].ci_halfwidth * 1.5);
    policy.power = PowerPolicy::AP;
    EXPECT_NEAR(grid[i][2].f_rstar_hat, f_rstar(policy, c, 2),
                grid[i][2].ci_halfwidth * 1.5);
  }
}

TEST(KsMachinery, UniformSamplesAgainstOwnLaw) {
  // Samples drawn from the exact law must produce a tiny KS distance, and a
  // deliberately wrong law must produce a large one.
  const PdfSpec own2{SelectionPolicy::BSL, LinkKind::Own, 2};
  const std::vector<double> samples =
      selected_gain_samples(SelectionPolicy::BSL, LinkKind::Own, 2, 200000, 5);
  EXPECT_LT(ks_distance(samples, own2), 0.01);
  const PdfSpec wrong{SelectionPolicy::BSL, LinkKind::Own, 5};
  EXPECT_GT(ks_distance(samples, wrong), 0.05);
}

TEST(KsMachinery, RejectsSmallSamples) {
  const PdfSpec spec{SelectionPolicy::BSL, LinkKind::Own, 2};
  std::vector<double> samples(9999, 0.5);
  EXPECT_THROW(ks_distance(samples, spec), std::invalid_argument);
}

TEST(SelectedGains, InterferenceUnderBplMatchesItsMixtureLaw) {
  const std::vector<double> samples = selected_gain_samples(
      SelectionPolicy::BPL, LinkKind::Interference, 3, 200000, 6);
  const PdfSpec spec{SelectionPolicy::BPL, LinkKind::Interference, 3};
  EXPECT_LT(ks_distance(samples, spec), 0.01);
}

}  // namespace
