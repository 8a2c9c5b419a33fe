#pragma once
// Adaptive Gauss-Kronrod quadrature (7-point Gauss rule embedded in the
// 15-point Kronrod extension).  Each panel is evaluated once with both rules;
// the difference drives a QUADPACK-style error estimate, and the panel with
// the largest estimate is bisected until the summed error meets the absolute
// tolerance.  Used for the order-statistic integrals that cross-check the
// closed-form success probabilities.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cogrelay {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

struct PanelEstimate {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double error = 0.0;
};

// 15-point Kronrod nodes on [0, 1] (symmetric about the midpoint) and the
// matching weights; the embedded 7-point Gauss rule uses the odd-indexed
// nodes plus the centre.
inline constexpr double kGkNodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kKronrodWeights[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
inline constexpr double kGaussWeights[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

template <typename F>
PanelEstimate gauss_kronrod_panel(F& f, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);

  double samples[15];
  const double f_mid = f(mid);
  samples[14] = f_mid;
  double kronrod = kKronrodWeights[7] * f_mid;
  double gauss = kGaussWeights[3] * f_mid;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kGkNodes[i];
    const double f_lo = f(mid - dx);
    const double f_hi = f(mid + dx);
    samples[2 * i] = f_lo;
    samples[2 * i + 1] = f_hi;
    kronrod += kKronrodWeights[i] * (f_lo + f_hi);
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (f_lo + f_hi);
  }

  // Error model from QUADPACK: scale |K - G| by how much the integrand
  // deviates from its mean over the panel, so smooth panels are not
  // penalised for having large values.
  const double mean = 0.5 * kronrod;
  double deviation = kKronrodWeights[7] * std::fabs(f_mid - mean);
  for (int i = 0; i < 7; ++i) {
    deviation += kKronrodWeights[i] * (std::fabs(samples[2 * i] - mean) +
                                       std::fabs(samples[2 * i + 1] - mean));
  }
  deviation *= std::fabs(half);

  double error = std::fabs((kronrod - gauss) * half);
  if (deviation > 0.0 && error > 0.0) {
    error = deviation * std::min(1.0, std::pow(200.0 * error / deviation, 1.5));
  }

  PanelEstimate panel;
  panel.lo = lo;
  panel.hi = hi;
  panel.value = kronrod * half;
  panel.error = error;
  return panel;
}

}  // namespace detail

// Integrates f over [lo, hi] to the requested absolute tolerance.  Initial
// breakpoints let callers pre-split at known knees of the integrand; points
// outside (lo, hi) are ignored.
template <typename F>
QuadResult integrate(F f, double lo, double hi, double abs_tol = 1e-8,
                     const std::vector<double>& breakpoints = {},
                     std::size_t max_panels = 4000) {
  if (!(lo < hi)) throw std::invalid_argument("integrate: requires lo < hi");
  if (!(abs_tol > 0.0))
    throw std::invalid_argument("integrate: requires abs_tol > 0");

  std::vector<double> edges;
  edges.push_back(lo);
  for (double p : breakpoints) {
    if (p > lo && p < hi) edges.push_back(p);
  }
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());

  QuadResult result;
  std::vector<detail::PanelEstimate> panels;
  panels.reserve(64);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    panels.push_back(detail::gauss_kronrod_panel(f, edges[i], edges[i + 1]));
    result.evaluations += 15;
  }

  auto total_error = [&panels]() {
    double sum = 0.0;
    for (const auto& p : panels) sum += p.error;
    return sum;
  };

  while (total_error() > abs_tol && panels.size() < max_panels) {
    auto worst = std::max_element(
        panels.begin(), panels.end(),
        [](const detail::PanelEstimate& x, const detail::PanelEstimate& y) {
          return x.error < y.error;
        });
    const double mid = 0.5 * (worst->lo + worst->hi);
    if (mid <= worst->lo || mid >= worst->hi) break;  // interval exhausted
    const detail::PanelEstimate left =
        detail::gauss_kronrod_panel(f, worst->lo, mid);
    const detail::PanelEstimate right =
        detail::gauss_kronrod_panel(f, mid, worst->hi);
    *worst = left;
    panels.push_back(right);
    result.evaluations += 30;
  }

  double value = 0.0;
  for (const auto& p : panels) value += p.value;
  result.value = value;
  result.error_estimate = total_error();
  result.converged = result.error_estimate <= abs_tol;
  return result;
}

}  // namespace cogrelay
