// Selected-gain distributions: normalization, moments with closed answers,
// and pdf/cdf consistency.

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "cogrelay/order_stats.hpp"
#include "cogrelay/quadrature.hpp"

namespace {

using namespace cogrelay;

std::vector<PdfSpec> all_specs(std::size_t n) {
  return {
      {SelectionPolicy::BSL, LinkKind::Own, n},
      {SelectionPolicy::BSL, LinkKind::Relay, n},
      {SelectionPolicy::BSL, LinkKind::Interference, n},
      {SelectionPolicy::BPL, LinkKind::Relay, n},
      {SelectionPolicy::BPL, LinkKind::Own, n},
      {SelectionPolicy::BPL, LinkKind::Interference, n},
  };
}

TEST(OrderStats, PdfsIntegrateToOne) {
  for (std::size_t n : {2u, 3u, 5u}) {
    for (const PdfSpec& spec : all_specs(n)) {
      const QuadResult mass = integrate(
          [&](double h) { return pdf(spec, h); }, 0.0, 80.0, 1e-10, {1.0, 8.0});
      EXPECT_TRUE(mass.converged);
      EXPECT_NEAR(mass.value, 1.0, 1e-9)
          << to_string(spec.policy) << "/" << to_string(spec.link)
          << " n=" << n;
    }
  }
}

TEST(OrderStats, StrongestOfNMeansAreHarmonicNumbers) {
  // Mean of the max of n unit exponentials is 1 + 1/2 + ... + 1/n.
  const struct {
    std::size_t n;
    double mean;
  } rows[] = {{2, 1.5}, {3, 1.8333333333333333}, {5, 2.2833333333333333}};
  for (const auto& row : rows) {
    const PdfSpec spec{SelectionPolicy::BSL, LinkKind::Own, row.n};
    const QuadResult mean = integrate(
        [&](double h) { return h * pdf(spec, h); }, 0.0, 90.0, 1e-10,
        {1.0, 8.0, 30.0});
    EXPECT_TRUE(mean.converged);
    EXPECT_NEAR(mean.value, row.mean, 1e-9) << "n=" << row.n;
  }
}

TEST(OrderStats, SecondDrawIsMaxOfNMinusOne) {
  // The relay under best-secondary selection is the best of the other N-1
  // relay links, so its law equals the (N-1)-max law.
  const PdfSpec relay3{SelectionPolicy::BSL, LinkKind::Relay, 3};
  const PdfSpec own2{SelectionPolicy::BSL, LinkKind::Own, 2};
  for (double h : {0.1, 0.7, 1.9, 4.0}) {
    EXPECT_NEAR(pdf(relay3, h), pdf(own2, h), 1e-15);
    EXPECT_NEAR(cdf(relay3, h), cdf(own2, h), 1e-15);
  }
}

TEST(OrderStats, InterferenceUnderBslIsPlainExponential) {
  const PdfSpec spec{SelectionPolicy::BSL, LinkKind::Interference, 4};
  for (double h : {0.05, 0.5, 2.0, 6.0}) {
    EXPECT_NEAR(pdf(spec, h), std::exp(-h), 1e-15);
    EXPECT_NEAR(cdf(spec, h), -std::expm1(-h), 1e-15);
  }
}

TEST(OrderStats, InterferenceUnderBplHasClosedFormMean) {
  // Relay gain of the best-own SU when the best-relay SU is excluded:
  // the mean comes out at exactly 1/2 for N=2 and 7/12 for N=3.
  const struct {
    std::size_t n;
    double mean;
  } rows[] = {{2, 0.5}, {3, 0.58333333333333333}};
  for (const auto& row : rows) {
    const PdfSpec spec{SelectionPolicy::BPL, LinkKind::Interference, row.n};
    const QuadResult mean = integrate(
        [&](double h) { return h * pdf(spec, h); }, 0.0, 70.0, 1e-10,
        {1.0, 8.0});
    EXPECT_TRUE(mean.converged);
    EXPECT_NEAR(mean.value, row.mean, 1e-9) << "n=" << row.n;
  }
}

TEST(OrderStats, CdfMatchesIntegratedPdf) {
  for (const PdfSpec& spec : all_specs(3)) {
    for (double h : {0.3, 1.1, 2.7}) {
      const QuadResult mass =
          integrate([&](double x) { return pdf(spec, x); }, 0.0, h, 1e-11);
      EXPECT_TRUE(mass.converged);
      EXPECT_NEAR(mass.value, cdf(spec, h), 1e-10)
          << to_string(spec.policy) << "/" << to_string(spec.link);
    }
  }
}

TEST(OrderStats, CdfIsMonotoneWithCorrectLimits) {
  for (const PdfSpec& spec : all_specs(4)) {
    double prev = 0.0;
    EXPECT_EQ(cdf(spec, 0.0), 0.0);
    for (double h = 0.25; h <= 40.0; h += 0.25) {
      const double cur = cdf(spec, h);
      EXPECT_GE(cur, prev);
      prev = cur;
    }
    EXPECT_NEAR(prev, 1.0, 1e-12);
  }
}

TEST(OrderStats, RejectsDegenerateArguments) {
  const PdfSpec bad{SelectionPolicy::BSL, LinkKind::Own, 1};
  EXPECT_THROW(pdf(bad, 1.0), std::invalid_argument);
  const PdfSpec good{SelectionPolicy::BSL, LinkKind::Own, 2};
  EXPECT_THROW(pdf(good, -0.1), std::domain_error);
  EXPECT_THROW(cdf(good, -0.1), std::domain_error);
}

}  // namespace
