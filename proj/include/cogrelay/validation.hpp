#pragma once
// End-to-end validation: every acceptance check cross-examines the analytic
// engine against an independent oracle (numeric integration, exact Monte
// Carlo, or the slot simulator).  Checks are deterministic given the master
// seed; no timing or environment data enters the rendered report, so
// repeated runs are byte-identical.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogrelay/closed_form.hpp"
#include "cogrelay/experiment.hpp"
#include "cogrelay/oracle.hpp"
#include "cogrelay/params.hpp"
#include "cogrelay/rng.hpp"
#include "cogrelay/simulator.hpp"

namespace cogrelay {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // comma-free so the report stays valid CSV
};

struct ValidationOptions {
  std::uint64_t seed = 1;
  std::uint64_t mc_draws = 10000000;       // exact-MC draws per grid point
  std::uint64_t slots = 1000000;           // default simulation horizon
  std::uint64_t warmup_slots = 10000;
  std::uint64_t power_grid_slots = 200000;  // horizon per power-grid point
  std::uint64_t ks_samples = 1000000;
};

namespace detail {

inline const std::array<PolicyConfig, 4>& all_combos() {
  static const std::array<PolicyConfig, 4> combos = {{
      {PowerPolicy::EP, SelectionPolicy::BSL, ReselectMode::AnalysisFaithful},
      {PowerPolicy::EP, SelectionPolicy::BPL, ReselectMode::AnalysisFaithful},
      {PowerPolicy::AP, SelectionPolicy::BSL, ReselectMode::AnalysisFaithful},
      {PowerPolicy::AP, SelectionPolicy::BPL, ReselectMode::AnalysisFaithful},
  }};
  return combos;
}

inline DerivedConstants constants_for_threshold(double a, double rate_r0) {
  SystemParams params;
  params.rate_r0 = rate_r0;
  params.pmax_over_n0 = (std::exp2(rate_r0) - 1.0) / a;
  return derive_constants(params);
}

inline std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  return hash;
}

// Memoizes simulation runs so checks sharing an operating point reuse one
// run.  Seeds derive from the cache key, making every run reproducible
// independently of which check requests it first.
class SimCache {
 public:
  explicit SimCache(const ValidationOptions& opts) : opts_(opts) {}

  const SimMetrics& get(const SystemParams& params, const PolicyConfig& policy,
                        std::uint64_t slots, std::uint64_t warmup) {
    std::ostringstream key;
    key << policy_label(policy) << '/' << to_string(policy.reselect_on_silence)
        << '/' << params.n_su << '/' << format_csv_double(params.lambda_p)
        << '/' << format_csv_double(params.pmax_over_n0) << '/'
        << format_csv_double(params.rate_r0) << '/' << slots << '/' << warmup;
    const std::string key_text = key.str();
    auto found = cache_.find(key_text);
    if (found != cache_.end()) return found->second;

    SimConfig config;
    config.params = params;
    config.policy = policy;
    config.slots = slots;
    config.warmup_slots = warmup;
    config.seed = splitmix64(opts_.seed ^ fnv1a64(key_text));
    return cache_.emplace(key_text, run(config)).first->second;
  }

 private:
  const ValidationOptions& opts_;
  std::map<std::string, SimMetrics> cache_;
};

inline std::string pct(double value) { return format_csv_double(value); }

}  // namespace detail

// 1. Closed forms against the numeric-integration oracle on the full grid.
inline CheckResult check_c01(const ValidationOptions&) {
  CheckResult result{1, "closed-form-vs-quadrature", false, ""};
  const double b = 1.0 / (std::exp2(2.0) - 1.0);
  double worst = 0.0;
  std::string worst_at = "none";
  for (const PolicyConfig& policy : detail::all_combos()) {
    for (int n = 2; n <= 6; ++n) {
      for (double a : {0.1, 0.6, 2.0}) {
        DerivedConstants c;
        c.a = a;
        c.b = b;
        c.beta = -std::expm1(-a);
        const double closed_form = f_rstar(policy, c, n);
        const double quad = quadrature_f_rstar(policy, c, n);
        const double delta = std::fabs(closed_form - quad);
        if (delta > worst) {
          worst = delta;
          std::ostringstream at;
          at << policy_label(policy) << " n=" << n
             << " a=" << format_csv_double(a);
          worst_at = at.str();
        }
      }
    }
  }
  result.passed = worst <= 1e-6;
  result.detail = "max|closed_form-quadrature|=" + format_csv_double(worst) +
                  " at " + worst_at + " tol=1e-06";
  return result;
}

// 2. Closed forms against the exact Monte Carlo (no independence relaxation).
// The best-secondary-link variants must sit inside the 3-sigma band; the
// best-primary-link variants carry the documented relaxation gap, required
// to stay under 0.03 while being reproducibly nonzero.
inline CheckResult check_c02(const ValidationOptions& opts) {
  CheckResult result{2, "closed-form-vs-exact-monte-carlo", false, ""};
  const std::vector<double> a_values = {0.1, 0.6, 2.0};
  double bsl_worst_sigma = 0.0;
  double bpl_worst_gap = 0.0;
  std::string bpl_worst_at = "none";
  bool bpl_gap_significant = false;

  for (int n = 2; n <= 6; ++n) {
    const auto grid =
        exact_mc_grid(n, a_values, 2.0,
                      opts.mc_draws, subrun_seed(opts.seed, 100 + n));
    for (std::size_t i = 0; i < a_values.size(); ++i) {
      const DerivedConstants c =
          detail::constants_for_threshold(a_values[i], 2.0);
      for (std::size_t combo = 0; combo < 4; ++combo) {
        const PolicyConfig& policy = detail::all_combos()[combo];
        const double closed_form = f_rstar(policy, c, n);
        const MonteCarloEstimate& est = grid[i][combo];
        const double gap = est.f_rstar_hat - closed_form;
        if (policy.selection == SelectionPolicy::BSL) {
          const double sigmas =
              std::fabs(gap) / (est.ci_halfwidth / 3.0);
          bsl_worst_sigma = std::max(bsl_worst_sigma, sigmas);
        } else {
          if (std::fabs(gap) > bpl_worst_gap) {
            bpl_worst_gap = std::fabs(gap);
            std::ostringstream at;
            at << policy_label(policy) << " n=" << n
               << " a=" << format_csv_double(a_values[i]);
            bpl_worst_at = at.str();
          }
          if (std::fabs(gap) > est.ci_halfwidth) bpl_gap_significant = true;
        }
      }
    }
  }

  const bool bsl_ok = bsl_worst_sigma <= 3.0;
  const bool bpl_ok = bpl_worst_gap <= 0.03;
  result.passed = bsl_ok && bpl_ok && bpl_gap_significant;
  result.detail = "bsl_worst=" + format_csv_double(bsl_worst_sigma) +
                  "sigma (tol 3) bpl_worst_gap=" +
                  format_csv_double(bpl_worst_gap) + " at " + bpl_worst_at +
                  " (tol 0.03) gap_nonzero=" +
                  std::string(bpl_gap_significant ? "1" : "0");
  return result;
}

// 3. Theorem-1 stability bracket: just below the bound the system is stable
// and lossless; just above it the relay queue grows.
inline CheckResult check_c03(const ValidationOptions& opts,
                             detail::SimCache& sims) {
  CheckResult result{3, "stability-bracket", false, ""};
  bool all_ok = true;
  std::ostringstream detail_os;
  for (const PolicyConfig& policy : detail::all_combos()) {
    SystemParams params;  // N=2, 7 dB defaults
    const AnalyticPoint base = analytic_point(params, policy);
    const double bound = base.bound;

    params.lambda_p = 0.95 * bound;
    const SimMetrics& below =
        sims.get(params, policy, opts.slots, opts.warmup_slots);
    const double tput_err = std::fabs(below.pu_throughput - params.lambda_p);
    const bool below_ok = !below.stability.growing && tput_err <= 0.002;

    params.lambda_p = 1.05 * bound;
    const SimMetrics& above =
        sims.get(params, policy, opts.slots, opts.warmup_slots);
    const bool above_ok = above.stability.growing;

    all_ok = all_ok && below_ok && above_ok;
    detail_os << policy_label(policy) << ":bound="
              << format_csv_double(bound) << " below("
              << (below_ok ? "ok" : "FAIL")
              << " tput_err=" << format_csv_double(tput_err) << ") above("
              << (above_ok ? "ok" : "FAIL")
              << " slope=" << format_csv_double(above.stability.slope)
              << "); ";
  }
  result.passed = all_ok;
  result.detail = detail_os.str();
  return result;
}

// 4. Per-SU own-data throughput against the analytic value, plus symmetry.
inline CheckResult check_c04(const ValidationOptions& opts,
                             detail::SimCache& sims) {
  CheckResult result{4, "su-throughput", false, ""};
  bool all_ok = true;
  double worst_abs = 0.0;
  double worst_spread = 0.0;
  for (const PolicyConfig& policy : detail::all_combos()) {
    for (double lambda : {0.05, 0.10}) {
      SystemParams params;
      params.lambda_p = lambda;
      const AnalyticPoint pt = analytic_point(params, policy);
      const SimMetrics& sim =
          sims.get(params, policy, opts.slots, opts.warmup_slots);
      double lo = sim.su_throughput.front();
      double hi = lo;
      for (double v : sim.su_throughput) {
        worst_abs = std::max(worst_abs, std::fabs(v - pt.mu_si));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      worst_spread = std::max(worst_spread, hi - lo);
    }
  }
  all_ok = worst_abs <= 0.01 && worst_spread <= 0.005;
  result.passed = all_ok;
  result.detail = "max|sim-analytic|=" + format_csv_double(worst_abs) +
                  " (tol 0.01) max_spread=" + format_csv_double(worst_spread) +
                  " (tol 0.005)";
  return result;
}

// 5. Theorem-2 delay closure at a stable load, and the delay-vs-cap trend.
inline CheckResult check_c05(const ValidationOptions& opts,
                             detail::SimCache& sims) {
  CheckResult result{5, "delay-closure-and-trend", false, ""};
  bool all_ok = true;
  std::ostringstream detail_os;

  for (const PolicyConfig& policy : detail::all_combos()) {
    SystemParams params;
    params.lambda_p = 0.1;
    const AnalyticPoint pt = analytic_point(params, policy);
    const double tau = pt.tau;
    const SimMetrics& sim =
        sims.get(params, policy, opts.slots, opts.warmup_slots);
    const double rel = std::fabs(sim.avg_delay - tau) / tau;
    const double tol = policy.selection == SelectionPolicy::BSL ? 0.05 : 0.10;
    const bool point_ok = rel <= tol;

    bool trend_ok = true;
    double prev = 0.0;
    double first = 0.0;
    double last = 0.0;
    const double trend_lambda = 0.08;
    bool first_point = true;
    for (double db : {5.0, 8.0, 11.0, 14.0, 17.0, 20.0}) {
      SystemParams sweep_params;
      sweep_params.lambda_p = trend_lambda;
      sweep_params.pmax_over_n0 = std::pow(10.0, db / 10.0);
      const SimMetrics& point =
          sims.get(sweep_params, policy, opts.slots, opts.warmup_slots);
      if (first_point) {
        first = point.avg_delay;
        first_point = false;
      } else if (point.avg_delay > prev * 1.02) {
        trend_ok = false;  // 2% slack absorbs simulation noise
      }
      prev = point.avg_delay;
      last = point.avg_delay;
    }
    trend_ok = trend_ok && last < first;

    all_ok = all_ok && point_ok && trend_ok;
    detail_os << policy_label(policy) << ":rel_err=" << format_csv_double(rel)
              << " (tol " << format_csv_double(tol) << ") trend="
              << (trend_ok ? "ok" : "FAIL") << "; ";
  }
  result.passed = all_ok;
  result.detail = detail_os.str();
  return result;
}

// 6. Queue-length closure: mean primary-queue length and the relayed share
// of deliveries against their closed forms.
inline CheckResult check_c06(const ValidationOptions& opts,
                             detail::SimCache& sims) {
  CheckResult result{6, "queue-length-closure", false, ""};
  bool all_ok = true;
  double worst_qp_rel = 0.0;
  double worst_eps_abs = 0.0;
  for (const PolicyConfig& policy : detail::all_combos()) {
    SystemParams params;
    params.lambda_p = 0.1;
    const AnalyticPoint pt = analytic_point(params, policy);
    const DelayBreakdown breakdown = avg_delay(params.lambda_p, pt.stats);
    const SimMetrics& sim =
        sims.get(params, policy, opts.slots, opts.warmup_slots);
    worst_qp_rel = std::max(
        worst_qp_rel, std::fabs(sim.mean_qp - breakdown.n_p) / breakdown.n_p);
    worst_eps_abs = std::max(
        worst_eps_abs, std::fabs(sim.relayed_fraction - breakdown.epsilon));
  }
  all_ok = worst_qp_rel <= 0.05 && worst_eps_abs <= 0.01;
  result.passed = all_ok;
  result.detail = "max_qp_rel_err=" + format_csv_double(worst_qp_rel) +
                  " (tol 0.05) max_eps_err=" + format_csv_double(worst_eps_abs) +
                  " (tol 0.01)";
  return result;
}

// 7. Adaptive-power no-outage property, exact over the horizon.
inline CheckResult check_c07(const ValidationOptions& opts) {
  CheckResult result{7, "ap-no-outage", false, ""};
  std::uint64_t failures = 0;
  for (SelectionPolicy selection :
       {SelectionPolicy::BSL, SelectionPolicy::BPL}) {
    SimConfig config;
    config.params.lambda_p = 0.1;
    config.policy.power = PowerPolicy::AP;
    config.policy.selection = selection;
    config.slots = opts.slots;
    config.warmup_slots = 0;
    config.seed = subrun_seed(opts.seed, 700 + static_cast<int>(selection));

    SimState state;
    Rng rng(config.seed);
    ChannelSample sample;
    const DerivedConstants consts = derive_constants(config.params);
    for (std::uint64_t s = 0; s < config.slots; ++s) {
      sample_channels(rng, config.params, sample);
      const SlotOutcome out = step(state, sample, rng, config, consts);
      if (out.assignment.p_r > 0.0 && !out.relay_delivered) ++failures;
      if (out.assignment.p_s > 0.0 && out.own_scheduled && !out.own_delivered)
        ++failures;
    }
  }
  result.passed = failures == 0;
  result.detail = "non_silenced_failures=" + std::to_string(failures) +
                  " over 2x" + std::to_string(opts.slots) + " slots (tol 0)";
  return result;
}

// 8. Selected-gain laws against their closed-form CDFs (KS distance).
inline CheckResult check_c08(const ValidationOptions& opts) {
  CheckResult result{8, "order-statistic-distributions", false, ""};
  struct Case {
    SelectionPolicy policy;
    LinkKind link;
  };
  const Case cases[] = {{SelectionPolicy::BSL, LinkKind::Own},
                        {SelectionPolicy::BSL, LinkKind::Relay},
                        {SelectionPolicy::BPL, LinkKind::Relay},
                        {SelectionPolicy::BPL, LinkKind::Own},
                        {SelectionPolicy::BPL, LinkKind::Interference}};
  double worst = 0.0;
  std::string worst_at = "none";
  int index = 0;
  for (int n : {2, 4}) {
    for (const Case& c : cases) {
      const std::vector<double> samples = selected_gain_samples(
          c.policy, c.link, n, opts.ks_samples,
          subrun_seed(opts.seed, 800 + index));
      ++index;
      const PdfSpec spec{c.policy, c.link, static_cast<std::size_t>(n)};
      const double ks = ks_distance(samples, spec);
      if (ks > worst) {
        worst = ks;
        std::ostringstream at;
        at << to_string(c.policy) << "-" << to_string(c.link) << " n=" << n;
        worst_at = at.str();
      }
    }
  }
  result.passed = worst < 0.005;
  result.detail = "max_ks=" + format_csv_double(worst) + " at " + worst_at +
                  " (tol 0.005)";
  return result;
}

// 9. Power behaviour over the cap grid: adaptive power always averages
// strictly below the cap on scheduled slots; equal power transmits at the cap
// exactly.
inline CheckResult check_c09(const ValidationOptions& opts,
                             detail::SimCache& sims) {
  CheckResult result{9, "power-savings", false, ""};
  bool all_ok = true;
  double worst_margin = 1e300;
  for (int db = 0; db <= 20; ++db) {
    SystemParams params;
    params.lambda_p = 0.1;
    params.pmax_over_n0 = std::pow(10.0, db / 10.0);
    for (const PolicyConfig& policy : detail::all_combos()) {
      const SimMetrics& sim = sims.get(params, policy, opts.power_grid_slots,
                                       opts.warmup_slots);
      if (policy.power == PowerPolicy::AP) {
        const double margin =
            std::min(params.pmax_over_n0 - sim.avg_power_s,
                     params.pmax_over_n0 - sim.avg_power_r);
        worst_margin = std::min(worst_margin, margin);
        if (!(sim.avg_power_s < params.pmax_over_n0 &&
              sim.avg_power_r < params.pmax_over_n0))
          all_ok = false;
      } else {
        if (sim.cond_power_s != params.pmax_over_n0 ||
            sim.cond_power_r != params.pmax_over_n0)
          all_ok = false;
      }
    }
  }
  result.passed = all_ok;
  result.detail = "ap_min_margin=" + format_csv_double(worst_margin) +
                  " (must be > 0) ep_cond_power_exact=" +
                  std::string(all_ok ? "1" : "0");
  return result;
}

// 10. Relay-link success probability is nondecreasing in both the number of
// SUs and the power cap (within the engine's certified precision).
inline CheckResult check_c10(const ValidationOptions&) {
  CheckResult result{10, "f-rstar-monotonicity", false, ""};
  const double slack = 2.0 * kCertifyTol;
  const double t = std::exp2(2.0) - 1.0;
  bool all_ok = true;
  std::string fail_at = "none";

  auto threshold_for_db = [&](double db) {
    return t / std::pow(10.0, db / 10.0);
  };
  auto value = [&](const PolicyConfig& policy, double a, int n) {
    DerivedConstants c;
    c.a = a;
    c.b = 1.0 / t;
    c.beta = -std::expm1(-a);
    return f_rstar(policy, c, n);
  };

  for (const PolicyConfig& policy : detail::all_combos()) {
    for (double db : {0.0, 5.0, 10.0, 15.0, 20.0}) {
      const double a = threshold_for_db(db);
      double prev = value(policy, a, 2);
      for (int n = 3; n <= 8; ++n) {
        const double cur = value(policy, a, n);
        if (cur < prev - slack) {
          all_ok = false;
          fail_at = policy_label(policy) + " n-step at n=" + std::to_string(n);
        }
        prev = cur;
      }
    }
    for (int n : {2, 4, 8}) {
      double prev = value(policy, threshold_for_db(0.0), n);
      for (int db = 1; db <= 20; ++db) {
        const double cur = value(policy, threshold_for_db(db), n);
        if (cur < prev - slack) {
          all_ok = false;
          fail_at = policy_label(policy) + " cap-step at " +
                    std::to_string(db) + "dB n=" + std::to_string(n);
        }
        prev = cur;
      }
    }
  }
  result.passed = all_ok;
  result.detail = "nondecreasing=" + std::string(all_ok ? "1" : "0") +
                  " first_violation=" + fail_at +
                  " slack=" + format_csv_double(slack);
  return result;
}

inline std::vector<CheckResult> run_core_checks(const ValidationOptions& opts) {
  detail::SimCache sims(opts);
  std::vector<CheckResult> results;
  results.push_back(check_c01(opts));
  results.push_back(check_c02(opts));
  results.push_back(check_c03(opts, sims));
  results.push_back(check_c04(opts, sims));
  results.push_back(check_c05(opts, sims));
  results.push_back(check_c06(opts, sims));
  results.push_back(check_c07(opts));
  results.push_back(check_c08(opts));
  results.push_back(check_c09(opts, sims));
  results.push_back(check_c10(opts));
  return results;
}

inline std::string render_report(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  os << "id,name,pass,detail\n";
  for (const CheckResult& r : results) {
    os << 'c' << (r.id < 10 ? "0" : "") << r.id << ',' << r.name << ','
       << (r.passed ? "PASS" : "FAIL") << ',' << r.detail << '\n';
  }
  return os.str();
}

// 11. Determinism and budget: the core suite, run twice from the same master
// seed, must render byte-identical reports within the time budget.  Elapsed
// time never enters the report (that would defeat the byte comparison); the
// detail carries only the boolean outcome and the report size.
inline CheckResult check_c11(const ValidationOptions& opts) {
  CheckResult result{11, "determinism-and-budget", false, ""};
  const auto start = std::chrono::steady_clock::now();
  const std::string first = render_report(run_core_checks(opts));
  const auto mid = std::chrono::steady_clock::now();
  const std::string second = render_report(run_core_checks(opts));
  const bool identical = first == second;
  const double seconds =
      std::chrono::duration<double>(mid - start).count();
  const bool in_budget = seconds < 300.0;
  result.passed = identical && in_budget;
  result.detail = "byte_identical=" + std::string(identical ? "1" : "0") +
                  " report_bytes=" + std::to_string(first.size()) +
                  " within_300s=" + std::string(in_budget ? "1" : "0");
  return result;
}

// Full suite in criterion order.  Note c11 internally reruns the core suite
// twice, so this costs roughly three core passes.
inline std::vector<CheckResult> run_all_checks(const ValidationOptions& opts) {
  std::vector<CheckResult> results = run_core_checks(opts);
  results.push_back(check_c11(opts));
  return results;
}

// Runs one check by id (1..11).  Checks that share simulation points reuse
// them only within a single call; the per-run seeds depend solely on the
// master seed and the operating point, so results are identical either way.
inline CheckResult run_check(int id, const ValidationOptions& opts) {
  detail::SimCache sims(opts);
  switch (id) {
    case 1: return check_c01(opts);
    case 2: return check_c02(opts);
    case 3: return check_c03(opts, sims);
    case 4: return check_c04(opts, sims);
    case 5: return check_c05(opts, sims);
    case 6: return check_c06(opts, sims);
    case 7: return check_c07(opts);
    case 8: return check_c08(opts);
    case 9: return check_c09(opts, sims);
    case 10: return check_c10(opts);
    case 11: return check_c11(opts);
    default: throw std::invalid_argument("check id must be 1..11");
  }
}

}  // namespace cogrelay
