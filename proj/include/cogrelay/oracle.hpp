#pragma once
// Independent ground truth for the analytic engine.  Two oracles:
//
//  * quadrature_f_rstar integrates the selection-law densities directly,
//    mirroring the total-probability structure behind the closed forms —
//    including, for best-primary-link selection, the same independence
//    relaxation between the interference gain and the relay gain.  Agreement
//    with the closed forms therefore validates the algebra, not the model.
//
//  * monte_carlo_success runs the real selection/allocation code on raw
//    channel draws with no relaxation at all.  Its gap to the closed form is
//    the model error of the relaxation (zero for best-secondary-link
//    selection, small but reproducibly nonzero for best-primary-link).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogrelay/model.hpp"
#include "cogrelay/numerics.hpp"
#include "cogrelay/order_stats.hpp"
#include "cogrelay/params.hpp"
#include "cogrelay/policy.hpp"
#include "cogrelay/quadrature.hpp"
#include "cogrelay/rng.hpp"

namespace cogrelay {

struct MonteCarloEstimate {
  double f_rstar_hat = 0.0;
  double f_sstar_hat = 0.0;
  double ci_halfwidth = 0.0;  // 3-sigma binomial half-width of f_rstar_hat
};

namespace detail {

// One additive piece of the closed-form joint probability
// P[h_s* >= a, h_I <= z * h_s*]: both the own-gain density and the
// interference CDF are finite sums of exponentials, so conditioning on the
// relay gain leaves coef * (e^{-a r0}/r0 - e^{-a (r0 + z s)}/(r0 + z s)).
struct JointTerm {
  double coef = 0.0;
  double r0 = 0.0;
  double zscale = 0.0;
};

inline std::vector<JointTerm> joint_terms(SelectionPolicy selection, int n) {
  std::vector<JointTerm> terms;
  if (selection == SelectionPolicy::BSL) {
    // Own gain: max of n; interference: unit exponential.
    for (int j = 0; j < n; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      terms.push_back({static_cast<double>(n) * binomial(n - 1, j) * sign,
                       static_cast<double>(j + 1), 1.0});
    }
  } else {
    // Own gain: max of n-1; interference: the lower-order-statistic mixture.
    for (int m = 0; m + 1 < n; ++m) {
      const double cm = static_cast<double>(n - 1) * binomial(n - 2, m) *
                        ((m % 2 == 0) ? 1.0 : -1.0);
      for (int k = 1; k < n; ++k) {
        for (int j = 0; j < k; ++j) {
          const double d = static_cast<double>(n - k + 1 + j);
          const double ckj = static_cast<double>(n) /
                             static_cast<double>(n - 1) * binomial(n - 1, k - 1) *
                             binomial(k - 1, j) * ((j % 2 == 0) ? 1.0 : -1.0) / d;
          terms.push_back({cm * ckj, static_cast<double>(m + 1), d});
        }
      }
    }
  }
  return terms;
}

// Evaluates the real selection + allocation + rate rules on one sample.
struct CooperativeOutcome {
  bool relay_ok = false;
  bool own_ok = false;
};

inline CooperativeOutcome cooperative_outcome(const ChannelSample& sample,
                                              const PolicyConfig& policy,
                                              const DerivedConstants& consts,
                                              const SystemParams& params) {
  Assignment roles = select_pair(sample, policy.selection);
  roles = allocate(sample, roles, consts, params, policy);
  CooperativeOutcome outcome;
  outcome.relay_ok =
      roles.relay_su && roles.p_r > 0.0 &&
      meets_rate(rate_relay(roles.p_r, roles.h_relay, roles.p_s, roles.h_i),
                 params.rate_r0);
  outcome.own_ok =
      roles.own_su && roles.p_s > 0.0 &&
      meets_rate(rate_secondary(roles.p_s, roles.h_own), params.rate_r0);
  return outcome;
}

}  // namespace detail

// Numeric integration of the relay-link success probability with the same
// probabilistic structure as the closed forms.  Supported for n <= 10, where
// the integrands are cheap and the 1e-8 tolerance leaves margin under the
// 1e-6 agreement requirement.
inline double quadrature_f_rstar(const PolicyConfig& policy,
                                 const DerivedConstants& consts, int n) {
  if (n < 2) throw std::invalid_argument("quadrature_f_rstar: n must be >= 2");
  if (n > 10)
    throw std::domain_error("quadrature_f_rstar: supported for n <= 10");
  const double a = consts.a;
  const double b = consts.b;
  if (std::isinf(a)) return 0.0;  // zero power cap: nothing ever transmits

  const std::size_t n_su = static_cast<std::size_t>(n);
  QuadResult res;
  double first = 0.0;

  if (policy.power == PowerPolicy::EP) {
    const PdfSpec relay_spec{policy.selection, LinkKind::Relay, n_su};
    const PdfSpec i_spec{policy.selection, LinkKind::Interference, n_su};
    res = integrate(
        [&](double h) {
          return (1.0 - cdf(relay_spec, a + h / b)) * pdf(i_spec, h);
        },
        0.0, 60.0, 1e-8, {a * b, 1.0, 5.0, 15.0});
  } else {
    if (a == 0.0) return 1.0;  // unconstrained cap: no silencing, no outage
    const double beta = consts.beta;
    // Case 1: the own transmitter is silenced.  Under best-secondary-link
    // selection the relay is re-drawn as the best of all n relay gains;
    // under best-primary-link it already is.
    const int relay_order =
        policy.selection == SelectionPolicy::BSL ? n - 1 : n;
    if (policy.selection == SelectionPolicy::BSL) {
      first = std::pow(beta, n) * (1.0 - std::pow(beta, n));
    } else {
      first = std::pow(beta, n - 1) * (1.0 - std::pow(beta, n));
    }
    // Case 2: both transmit; conditioned on the relay gain w, success needs
    // h_I / h_s* <= b (w/a - 1).
    const std::vector<detail::JointTerm> terms =
        detail::joint_terms(policy.selection, n);
    auto joint = [&](double z) {
      double sum = 0.0;
      for (const auto& t : terms) {
        const double r1 = t.r0 + z * t.zscale;
        sum += t.coef *
               (std::exp(-a * t.r0) / t.r0 - std::exp(-a * r1) / r1);
      }
      return sum;
    };
    res = integrate(
        [&](double w) {
          return detail::max_law_pdf(static_cast<std::size_t>(relay_order),
                                     w) *
                 joint(b * (w / a - 1.0));
        },
        a, a + 60.0, 1e-8, {a + 0.5, a + 5.0, a + 20.0});
  }

  if (!res.converged)
    throw std::runtime_error("quadrature_f_rstar: integration did not reach " +
                             std::string("the requested tolerance"));
  return first + res.value;
}

// Exact Monte Carlo estimate (no independence relaxation): repeated channel
// draws pushed through the production selection and allocation rules.
inline MonteCarloEstimate monte_carlo_success(const PolicyConfig& policy,
                                              const SystemParams& params,
                                              std::uint64_t draws,
                                              std::uint64_t seed) {
  if (draws < 100000)
    throw std::invalid_argument("monte_carlo_success: need >= 1e5 draws");
  params.validate();
  const DerivedConstants consts = derive_constants(params);

  Rng rng(seed);
  ChannelSample sample;
  std::uint64_t relay_ok = 0;
  std::uint64_t own_ok = 0;
  for (std::uint64_t i = 0; i < draws; ++i) {
    sample_channels(rng, params, sample);
    const detail::CooperativeOutcome outcome =
        detail::cooperative_outcome(sample, policy, consts, params);
    relay_ok += outcome.relay_ok ? 1 : 0;
    own_ok += outcome.own_ok ? 1 : 0;
  }

  MonteCarloEstimate est;
  est.f_rstar_hat =
      static_cast<double>(relay_ok) / static_cast<double>(draws);
  est.f_sstar_hat = static_cast<double>(own_ok) / static_cast<double>(draws);
  est.ci_halfwidth = 3.0 * std::sqrt(est.f_rstar_hat *
                                     (1.0 - est.f_rstar_hat) /
                                     static_cast<double>(draws));
  return est;
}

// Batched form of the exact Monte Carlo: one fading stream per n, with every
// (silence threshold, policy combination) evaluated on the same draws.  Each
// entry matches what monte_carlo_success would estimate, at a twelfth of the
// sampling cost; sharing draws correlates the estimates without biasing any
// of them.  Combos are indexed EP-BSL, EP-BPL, AP-BSL, AP-BPL.
inline std::vector<std::array<MonteCarloEstimate, 4>> exact_mc_grid(
    int n, const std::vector<double>& a_values, double rate_r0,
    std::uint64_t draws, std::uint64_t seed) {
  if (draws < 100000)
    throw std::invalid_argument("exact_mc_grid: need >= 1e5 draws");
  static constexpr PolicyConfig kCombos[4] = {
      {PowerPolicy::EP, SelectionPolicy::BSL, ReselectMode::AnalysisFaithful},
      {PowerPolicy::EP, SelectionPolicy::BPL, ReselectMode::AnalysisFaithful},
      {PowerPolicy::AP, SelectionPolicy::BSL, ReselectMode::AnalysisFaithful},
      {PowerPolicy::AP, SelectionPolicy::BPL, ReselectMode::AnalysisFaithful}};

  std::vector<SystemParams> params(a_values.size());
  std::vector<DerivedConstants> consts(a_values.size());
  for (std::size_t i = 0; i < a_values.size(); ++i) {
    if (!(a_values[i] > 0.0))
      throw std::invalid_argument("exact_mc_grid: thresholds must be > 0");
    params[i].n_su = n;
    params[i].rate_r0 = rate_r0;
    params[i].pmax_over_n0 = (std::exp2(rate_r0) - 1.0) / a_values[i];
    params[i].validate();
    consts[i] = derive_constants(params[i]);
  }

  std::vector<std::array<std::uint64_t, 4>> relay_ok(
      a_values.size(), std::array<std::uint64_t, 4>{});
  std::vector<std::array<std::uint64_t, 4>> own_ok(
      a_values.size(), std::array<std::uint64_t, 4>{});

  Rng rng(seed);
  ChannelSample sample;
  for (std::uint64_t d = 0; d < draws; ++d) {
    sample_channels(rng, params[0], sample);
    for (std::size_t i = 0; i < a_values.size(); ++i) {
      for (std::size_t c = 0; c < 4; ++c) {
        const detail::CooperativeOutcome outcome = detail::cooperative_outcome(
            sample, kCombos[c], consts[i], params[i]);
        relay_ok[i][c] += outcome.relay_ok ? 1 : 0;
        own_ok[i][c] += outcome.own_ok ? 1 : 0;
      }
    }
  }

  std::vector<std::array<MonteCarloEstimate, 4>> grid(a_values.size());
  for (std::size_t i = 0; i < a_values.size(); ++i) {
    for (std::size_t c = 0; c < 4; ++c) {
      MonteCarloEstimate& est = grid[i][c];
      est.f_rstar_hat =
          static_cast<double>(relay_ok[i][c]) / static_cast<double>(draws);
      est.f_sstar_hat =
          static_cast<double>(own_ok[i][c]) / static_cast<double>(draws);
      est.ci_halfwidth =
          3.0 * std::sqrt(est.f_rstar_hat * (1.0 - est.f_rstar_hat) /
                          static_cast<double>(draws));
    }
  }
  return grid;
}

// Kolmogorov-Smirnov sup distance between an empirical sample and a selected-
// gain law.
inline double ks_distance(std::vector<double> samples, const PdfSpec& spec) {
  if (samples.size() < 10000)
    throw std::invalid_argument("ks_distance: need >= 1e4 samples");
  std::sort(samples.begin(), samples.end());
  const double count = static_cast<double>(samples.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double theory = cdf(spec, samples[i]);
    const double below = theory - static_cast<double>(i) / count;
    const double above = static_cast<double>(i + 1) / count - theory;
    sup = std::max(sup, std::max(below, above));
  }
  return sup;
}

// Draws cooperative-slot selections and returns the gain series the law in
// `link` describes, for KS testing against pdf/cdf.
inline std::vector<double> selected_gain_samples(SelectionPolicy selection,
                                                 LinkKind link, int n_su,
                                                 std::uint64_t draws,
                                                 std::uint64_t seed) {
  SystemParams params;
  params.n_su = n_su;
  params.validate();
  std::vector<double> values;
  values.reserve(draws);
  Rng rng(seed);
  ChannelSample sample;
  for (std::uint64_t i = 0; i < draws; ++i) {
    sample_channels(rng, params, sample);
    const Assignment roles = select_pair(sample, selection);
    switch (link) {
      case LinkKind::Relay: values.push_back(roles.h_relay); break;
      case LinkKind::Own: values.push_back(roles.h_own); break;
      case LinkKind::Interference: values.push_back(roles.h_i); break;
    }
  }
  return values;
}

}  // namespace cogrelay
