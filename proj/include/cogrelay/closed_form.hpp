#pragma once
// Every analytic expression of the model: per-link success probabilities,
// the PU service rate, the four relay-link success closed forms (one per power x
// selection policy combination), the stability bound, SU throughput, and the
// primary-delay chain.
//
// The relay-link closed forms are alternating binomial sums whose |term| totals
// explode combinatorially (at N = 25 they reach ~1e24, i.e. the result is the
// cancellation of 24 leading digits).  Each sum therefore runs through
// compensated summation that tracks the exact sum of |terms|; the result is
// accepted only if eps_effective * sum|terms| certifies it to kCertifyTol.
// If long double cannot certify, the same templated code re-runs in
// __float128.  Values are clamped to [0,1] only within the certified band.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogrelay/expint.hpp"
#include "cogrelay/numerics.hpp"
#include "cogrelay/params.hpp"

namespace cogrelay {

// The analytic quadruple feeding the throughput/delay formulas.
struct LinkStats {
  double f_p = 0.0;      // PU direct-link success
  double f_ps = 0.0;     // at least one SU decodes the PU packet
  double f_rstar = 0.0;  // relay-link success (policy dependent)
  double f_sstar = 0.0;  // secondary-link success (policy dependent)
};

struct DelayBreakdown {
  double n_p = 0.0;      // mean length of Q_p, packets
  double n_r = 0.0;      // mean length of Q_r, packets
  double tau = 0.0;      // mean primary-packet delay, slots
  double epsilon = 0.0;  // fraction of PU packets delivered through the relay
  // Intermediate coefficients of the N_r rational form.
  double r = 0.0, s = 0.0, delta = 0.0, zeta = 0.0, eta = 0.0;
};

// Thrown when an arrival rate is at or beyond the maximum stable throughput:
// the relay queue would grow without bound and the closed forms are undefined.
struct StabilityError : std::runtime_error {
  double lambda_p;
  double bound;
  StabilityError(double lambda, double bnd)
      : std::runtime_error("lambda_p = " + std::to_string(lambda) +
                           " is not strictly below the stability bound " +
                           std::to_string(bnd) + "; relay queue saturates"),
        lambda_p(lambda),
        bound(bnd) {}
};

inline constexpr int kMaxClosedFormN = 25;
inline constexpr double kCertifyTol = 5e-7;

inline double f_p(const SystemParams& p) {
  const DerivedConstants c = derive_constants(p);
  return std::exp(-c.alpha / p.sigma_p_sq);
}

inline double f_ps(const SystemParams& p) {
  const DerivedConstants c = derive_constants(p);
  return 1.0 - std::pow(-std::expm1(-c.alpha), p.n_su);
}

inline double mu_p(double fp, double fps) { return fp + (1.0 - fp) * fps; }

// Fraction of delivered PU packets that took the relay path.
inline double relayed_fraction(double fp, double fps) {
  return (1.0 - fp) * fps / mu_p(fp, fps);
}

namespace detail {

template <typename T>
T pow_int(T base, int n) {
  T out = T(1);
  for (int i = 0; i < n; ++i) out *= base;
  return out;
}

template <typename T>
struct SumAndAbs {
  T value;
  T abs_total;
};

// ---- Relay-success sum bodies, templated over the summation float type ----

// EP-BSL: relay is the best of the N-1 SUs not chosen as s*; interferer has a
// plain unit-exponential gain.
template <typename T>
SumAndAbs<T> frstar_sum_ep_bsl(T a, T b, int n) {
  CompensatedSum<T> acc;
  acc.add(T(1));
  for (int k = 0; k < n; ++k) {
    const T sign = (k % 2 == 0) ? T(1) : T(-1);
    acc.add(-T(binomial(n - 1, k)) * sign * wide_exp(-T(k) * a) /
            (T(1) + T(k) / b));
  }
  return {acc.value(), acc.abs_total};
}

// EP-BPL: relay is the best of all N; interferer gain is an order-statistic
// mixture, expanded binomially term by term.
template <typename T>
SumAndAbs<T> frstar_sum_ep_bpl(T a, T b, int n) {
  CompensatedSum<T> acc;
  const T pref = T(n) / T(n - 1);
  for (int k = 1; k < n; ++k) {
    const T ck = T(binomial(n - 1, k - 1));
    for (int m = 0; m < k; ++m) {
      const T cm = T(binomial(k - 1, m)) * ((m % 2 == 0) ? T(1) : T(-1));
      acc.add(pref * ck * cm / T(n - k + m + 1));
      for (int l = 0; l <= n; ++l) {
        const T cl = T(binomial(n, l)) * ((l % 2 == 0) ? T(1) : T(-1));
        acc.add(-pref * ck * cm * cl * wide_exp(-a * T(l)) /
                (T(n - k + m + 1) + T(l) / b));
      }
    }
  }
  return {acc.value(), acc.abs_total};
}

// AP-BSL: first term is the s*-silenced branch (relay re-drawn over all N);
// the both-active branch splits into an interference-free term and an E1
// interference penalty.  The e^{...}E1(...) product of the penalty is
// evaluated through e1_scaled with the exponents cancelled analytically, so
// nothing overflows.
template <typename T>
SumAndAbs<T> frstar_sum_ap_bsl(T a, T b, int n) {
  CompensatedSum<T> acc;
  const T beta = T(1) - wide_exp(-a);
  acc.add(pow_int(beta, n) * (T(1) - pow_int(beta, n)));
  for (int k = 0; k < n; ++k) {
    const T pk = T(n) * T(binomial(n - 1, k)) * ((k % 2 == 0) ? T(1) : T(-1)) *
                 wide_exp(-a * T(k + 1));
    for (int l = 0; l <= n - 2; ++l) {
      const T cl = T(binomial(n - 2, l)) * ((l % 2 == 0) ? T(1) : T(-1));
      const T base_term = T(n - 1) / T(k + 1) * cl * wide_exp(-a * T(l + 1)) / T(l + 1);
      const T e1_arg = a * (T(1) + b + T(l)) * T(k + 1) / b;
      const T e1_term = a / b * T(n - 1) * cl * wide_exp(-a * T(l + 1)) *
                   e1_scaled(e1_arg);
      acc.add(pk * base_term);
      acc.add(-pk * e1_term);
    }
  }
  return {acc.value(), acc.abs_total};
}

// AP-BPL: first term is the s*-silenced branch (relay already best of all N);
// the triple sum covers the both-active branch.  The E1-free inner sum does
// not depend on the outer indices and the E1-bearing one depends only on
// (q, m), so both are cached with their |term| totals propagated into the
// rounding bound.
template <typename T>
SumAndAbs<T> frstar_sum_ap_bpl(T a, T b, int n) {
  CompensatedSum<T> acc;
  const T beta = T(1) - wide_exp(-a);
  acc.add(pow_int(beta, n - 1) * (T(1) - pow_int(beta, n)));

  CompensatedSum<T> inner_base;
  for (int j = 0; j < n; ++j) {
    const T cj = T(binomial(n - 1, j)) * ((j % 2 == 0) ? T(1) : T(-1));
    inner_base.add(cj * wide_exp(-a * T(j + 1)) / T(j + 1));
  }

  // E1-bearing inner sums, cached over q in [2, n], m in [0, n-2].
  std::vector<SumAndAbs<T>> e1_inner(static_cast<std::size_t>((n - 1) * (n - 1)));
  auto e1_inner_at = [&](int q, int m) -> SumAndAbs<T>& {
    return e1_inner[static_cast<std::size_t>((q - 2) * (n - 1) + m)];
  };
  for (int q = 2; q <= n; ++q) {
    const T bq = b * T(q);
    for (int m = 0; m <= n - 2; ++m) {
      CompensatedSum<T> inner_acc;
      const T c_term = a * (T(m + 1) / bq - T(1));
      for (int j = 0; j < n; ++j) {
        const T t_term = bq + T(j + 1);
        const T cj = T(binomial(n - 1, j)) * ((j % 2 == 0) ? T(1) : T(-1));
        inner_acc.add(a * cj * wide_exp(-a * T(m + j + 2)) / (t_term - T(j + 1)) *
                   e1_scaled(t_term * (a + c_term)));
      }
      e1_inner_at(q, m) = {inner_acc.value(), inner_acc.abs_total};
    }
  }

  for (int k = 1; k < n; ++k) {
    for (int l = 0; l < k; ++l) {
      for (int m = 0; m <= n - 2; ++m) {
        const int q = n - k + l + 1;
        const T sign = ((m + l) % 2 == 0) ? T(1) : T(-1);
        const T pref = T(binomial(n - 1, k - 1)) * T(binomial(k - 1, l)) *
                       T(binomial(n - 2, m)) * sign * T(n) * T(n) / T(q);
        const T base_factor = wide_exp(-a * T(m + 1)) / T(m + 1);
        acc.add(pref * base_factor * inner_base.value(),
                wide_fabs(pref * base_factor) * inner_base.abs_total);
        acc.add(-pref * e1_inner_at(q, m).value,
                wide_fabs(pref) * e1_inner_at(q, m).abs_total);
      }
    }
  }
  return {acc.value(), acc.abs_total};
}

enum class FrstarForm { EpBsl, EpBpl, ApBsl, ApBpl };

template <typename T>
SumAndAbs<T> run_frstar_sum(FrstarForm id, T a, T b, int n) {
  switch (id) {
    case FrstarForm::EpBsl: return frstar_sum_ep_bsl(a, b, n);
    case FrstarForm::EpBpl: return frstar_sum_ep_bpl(a, b, n);
    case FrstarForm::ApBsl: return frstar_sum_ap_bsl(a, b, n);
    default: return frstar_sum_ap_bpl(a, b, n);
  }
}

inline double clamp_certified(double value, double certified_err, const char* what) {
  if (value < -certified_err || value > 1.0 + certified_err)
    throw std::range_error(std::string(what) +
                           ": result outside [0,1] beyond its certified error band");
  if (value < 0.0) return 0.0;
  if (value > 1.0) return 1.0;
  return value;
}

inline double evaluate_frstar(FrstarForm id, const DerivedConstants& c, int n,
                             const char* what) {
  if (n < 2) throw std::invalid_argument(std::string(what) + ": requires N >= 2");
  if (n > kMaxClosedFormN)
    throw std::domain_error(std::string(what) + ": N > 25 exceeds the cancellation guard");
  const bool adaptive = (id == FrstarForm::ApBsl || id == FrstarForm::ApBpl);
  if (std::isinf(c.a)) return 0.0;  // zero-power limit
  if (c.a == 0.0 && adaptive) return 1.0;  // unconstrained power: AP never fails

  const SumAndAbs<long double> ld =
      run_frstar_sum<long double>(id, c.a, c.b, n);
  const double err_ld =
      static_cast<double>(ld.abs_total) * wide_eps_effective<long double>();
  if (err_ld <= kCertifyTol)
    return clamp_certified(static_cast<double>(ld.value), err_ld, what);

#if defined(COGRELAY_HAVE_QUADMATH)
  const SumAndAbs<__float128> wide =
      run_frstar_sum<__float128>(id, static_cast<__float128>(c.a),
                            static_cast<__float128>(c.b), n);
  const double err_wide =
      static_cast<double>(wide.abs_total) * wide_eps_effective<__float128>();
  if (err_wide <= kCertifyTol)
    return clamp_certified(static_cast<double>(wide.value), err_wide, what);
#endif
  throw std::range_error(std::string(what) +
                         ": cancellation exceeds every available precision");
}

}  // namespace detail

inline double f_rstar_ep_bsl(const DerivedConstants& c, int n) {
  return detail::evaluate_frstar(detail::FrstarForm::EpBsl, c, n, "f_rstar_ep_bsl");
}
inline double f_rstar_ep_bpl(const DerivedConstants& c, int n) {
  return detail::evaluate_frstar(detail::FrstarForm::EpBpl, c, n, "f_rstar_ep_bpl");
}
inline double f_rstar_ap_bsl(const DerivedConstants& c, int n) {
  return detail::evaluate_frstar(detail::FrstarForm::ApBsl, c, n, "f_rstar_ap_bsl");
}
inline double f_rstar_ap_bpl(const DerivedConstants& c, int n) {
  return detail::evaluate_frstar(detail::FrstarForm::ApBpl, c, n, "f_rstar_ap_bpl");
}

inline double f_rstar(const PolicyConfig& policy, const DerivedConstants& c, int n) {
  if (policy.power == PowerPolicy::EP)
    return policy.selection == SelectionPolicy::BSL ? f_rstar_ep_bsl(c, n)
                                                    : f_rstar_ep_bpl(c, n);
  return policy.selection == SelectionPolicy::BSL ? f_rstar_ap_bsl(c, n)
                                                  : f_rstar_ap_bpl(c, n);
}

// Secondary-link success.  Under BSL the own transmitter is the best of all N
// whether or not the relay queue is busy; under BPL it is the best of N-1
// while the relay queue is busy (probability gamma) and the best of N when it
// is idle.
inline double f_sstar_bsl(const DerivedConstants& c, int n) {
  return 1.0 - detail::pow_int(c.beta, n);
}

inline double f_sstar_bpl(const DerivedConstants& c, int n, double gamma) {
  const double busy = 1.0 - detail::pow_int(c.beta, n - 1);
  const double idle = 1.0 - detail::pow_int(c.beta, n);
  return gamma * busy + (1.0 - gamma) * idle;
}

// Maximum stable PU arrival rate.
inline double max_stable_arrival(double fp, double fps, double frstar) {
  const double phi = (1.0 - fp) * fps;
  if (frstar + phi == 0.0) return 0.0;
  return frstar * mu_p(fp, fps) / (frstar + phi);
}

// Long-run probability that the relay queue is non-empty.
inline double gamma_qr_busy(double lambda_p, double fp, double fps, double frstar) {
  const double bound = max_stable_arrival(fp, fps, frstar);
  if (!(lambda_p < bound) && lambda_p != 0.0)
    throw StabilityError(lambda_p, bound);
  if (lambda_p == 0.0) return 0.0;
  return lambda_p * (1.0 - fp) * fps / ((mu_p(fp, fps) - lambda_p) * frstar);
}

inline LinkStats link_stats(const SystemParams& params, const PolicyConfig& policy) {
  params.validate();
  const DerivedConstants c = derive_constants(params);
  LinkStats st;
  st.f_p = f_p(params);
  st.f_ps = f_ps(params);
  st.f_rstar = f_rstar(policy, c, params.n_su);
  if (policy.selection == SelectionPolicy::BSL) {
    st.f_sstar = f_sstar_bsl(c, params.n_su);
  } else {
    const double g = gamma_qr_busy(params.lambda_p, st.f_p, st.f_ps, st.f_rstar);
    st.f_sstar = f_sstar_bpl(c, params.n_su, g);
  }
  return st;
}

// Per-SU own-data throughput.
inline double su_throughput(double lambda_p, const LinkStats& st, int n) {
  const double bound = max_stable_arrival(st.f_p, st.f_ps, st.f_rstar);
  if (!(lambda_p < bound) && lambda_p != 0.0)
    throw StabilityError(lambda_p, bound);
  return (1.0 - lambda_p / mu_p(st.f_p, st.f_ps)) * st.f_sstar / n;
}

// Mean primary-packet delay: Q_p is a discrete-time M/M/1 whose mean length
// follows from Pollaczek-Khinchine; Q_r's mean length comes from the joint
// queue MGF and is a rational function of lambda_p.
inline DelayBreakdown avg_delay(double lambda_p, const LinkStats& st) {
  if (!(lambda_p > 0.0))
    throw std::invalid_argument("avg_delay: requires lambda_p > 0");
  const double bound = max_stable_arrival(st.f_p, st.f_ps, st.f_rstar);
  if (!(lambda_p < bound)) throw StabilityError(lambda_p, bound);

  const double mu = mu_p(st.f_p, st.f_ps);
  const double phi = st.f_ps * (1.0 - st.f_p);
  DelayBreakdown d;
  d.epsilon = relayed_fraction(st.f_p, st.f_ps);
  d.n_p = lambda_p * (1.0 - lambda_p) / (mu - lambda_p);
  d.r = phi * ((st.f_rstar - st.f_p) / mu - st.f_rstar - phi);
  d.s = phi * mu;
  d.delta = st.f_rstar + phi;
  d.zeta = mu * (-2.0 * st.f_rstar - phi);
  d.eta = mu * mu * st.f_rstar;
  d.n_r = (d.r * lambda_p * lambda_p + d.s * lambda_p) /
          (d.delta * lambda_p * lambda_p + d.zeta * lambda_p + d.eta);
  d.tau = (d.n_p + d.n_r) / lambda_p;
  return d;
}

}  // namespace cogrelay
