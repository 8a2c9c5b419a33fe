#pragma once
// Config-driven experiment runner: parses a sectioned key = value file into
// an ExperimentSpec, evaluates analytic curves and/or simulation runs, and
// emits CSV with a header comment recording the artifact version and seed.
// Decibel fields exist only in this layer; everything below works in linear
// units.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogrelay/closed_form.hpp"
#include "cogrelay/params.hpp"
#include "cogrelay/rng.hpp"
#include "cogrelay/simulator.hpp"
#include "cogrelay/version.hpp"

namespace cogrelay {

enum class RunMode { Analytic, Simulate, Sweep, Validate };

inline const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Analytic: return "analytic";
    case RunMode::Simulate: return "simulate";
    case RunMode::Sweep: return "sweep";
    case RunMode::Validate: return "validate";
  }
  throw std::invalid_argument("to_string: bad RunMode");
}

inline RunMode parse_run_mode(const std::string& text) {
  if (text == "analytic") return RunMode::Analytic;
  if (text == "simulate") return RunMode::Simulate;
  if (text == "sweep") return RunMode::Sweep;
  if (text == "validate") return RunMode::Validate;
  throw std::invalid_argument("unknown mode: " + text);
}

struct SweepAxis {
  std::string axis;  // pmax_db | lambda_p | n_su
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

struct ExperimentSpec {
  RunMode mode = RunMode::Analytic;
  SystemParams params;
  PolicyConfig policy;
  std::uint64_t slots = 1000000;
  std::uint64_t warmup_slots = 10000;
  std::uint64_t seed = 1;
  std::string out_path;  // empty: stdout
  std::optional<SweepAxis> sweep;
};

namespace detail {

inline std::string trim(const std::string& text) {
  std::size_t lo = 0;
  std::size_t hi = text.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(text[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1])))
    --hi;
  return text.substr(lo, hi - lo);
}

inline double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": bad number '" +
                                value + "'");
  }
  if (used != value.size())
    throw std::invalid_argument("config key " + key + ": bad number '" +
                                value + "'");
  return parsed;
}

inline std::uint64_t parse_u64(const std::string& key,
                               const std::string& value) {
  std::size_t used = 0;
  unsigned long long parsed = 0;
  try {
    parsed = std::stoull(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": bad integer '" +
                                value + "'");
  }
  if (used != value.size())
    throw std::invalid_argument("config key " + key + ": bad integer '" +
                                value + "'");
  return static_cast<std::uint64_t>(parsed);
}

}  // namespace detail

// Reads `[section]` headers and `key = value` lines (# starts a comment) into
// a flat "section.key" map.  Duplicate keys and lines that fit neither shape
// are errors.
inline std::map<std::string, std::string> parse_config(std::istream& input) {
  std::map<std::string, std::string> keys;
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = detail::trim(line);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": malformed section header");
      section = detail::trim(text.substr(1, text.size() - 2));
      if (section.empty())
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": empty section name");
      continue;
    }
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos || section.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value inside a section");
    const std::string key = section + "." + detail::trim(text.substr(0, eq));
    const std::string value = detail::trim(text.substr(eq + 1));
    if (key.size() == section.size() + 1 || value.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty key or value");
    if (!keys.emplace(key, value).second)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": duplicate key " + key);
  }
  return keys;
}

inline ExperimentSpec spec_from_config(
    const std::map<std::string, std::string>& keys) {
  ExperimentSpec spec;
  SweepAxis axis;
  bool has_axis = false;
  for (const auto& [key, value] : keys) {
    if (key == "params.n_su") {
      spec.params.n_su = static_cast<int>(detail::parse_u64(key, value));
    } else if (key == "params.lambda_p") {
      spec.params.lambda_p = detail::parse_double(key, value);
    } else if (key == "params.rate_r0") {
      spec.params.rate_r0 = detail::parse_double(key, value);
    } else if (key == "params.p0_over_n0") {
      spec.params.p0_over_n0 = detail::parse_double(key, value);
    } else if (key == "params.p0_over_n0_db") {
      spec.params.p0_over_n0 =
          std::pow(10.0, detail::parse_double(key, value) / 10.0);
    } else if (key == "params.pmax_over_n0") {
      spec.params.pmax_over_n0 = detail::parse_double(key, value);
    } else if (key == "params.pmax_over_n0_db") {
      spec.params.pmax_over_n0 =
          std::pow(10.0, detail::parse_double(key, value) / 10.0);
    } else if (key == "params.sigma_p_sq") {
      spec.params.sigma_p_sq = detail::parse_double(key, value);
    } else if (key == "policy.power") {
      spec.policy.power = parse_power_policy(value);
    } else if (key == "policy.selection") {
      spec.policy.selection = parse_selection_policy(value);
    } else if (key == "policy.reselect_on_silence") {
      spec.policy.reselect_on_silence = parse_reselect_mode(value);
    } else if (key == "run.mode") {
      spec.mode = parse_run_mode(value);
    } else if (key == "run.seed") {
      spec.seed = detail::parse_u64(key, value);
    } else if (key == "run.slots") {
      spec.slots = detail::parse_u64(key, value);
    } else if (key == "run.warmup_slots") {
      spec.warmup_slots = detail::parse_u64(key, value);
    } else if (key == "run.out") {
      spec.out_path = value;
    } else if (key == "sweep.axis") {
      axis.axis = value;
      has_axis = true;
    } else if (key == "sweep.start") {
      axis.start = detail::parse_double(key, value);
      has_axis = true;
    } else if (key == "sweep.stop") {
      axis.stop = detail::parse_double(key, value);
      has_axis = true;
    } else if (key == "sweep.step") {
      axis.step = detail::parse_double(key, value);
      has_axis = true;
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  if (has_axis) {
    if (axis.axis.empty())
      throw std::invalid_argument("sweep block needs an axis name");
    spec.sweep = axis;
  }
  if (spec.mode == RunMode::Sweep && !spec.sweep)
    throw std::invalid_argument("sweep mode needs a [sweep] block");
  return spec;
}

inline void apply_axis(SystemParams& params, const std::string& axis,
                       double value) {
  if (axis == "pmax_db") {
    params.pmax_over_n0 = std::pow(10.0, value / 10.0);
  } else if (axis == "lambda_p") {
    params.lambda_p = value;
  } else if (axis == "n_su") {
    params.n_su = static_cast<int>(std::llround(value));
  } else {
    throw std::invalid_argument("unknown sweep axis: " + axis);
  }
}

inline std::vector<double> axis_values(const SweepAxis& axis) {
  if (!(axis.step > 0.0))
    throw std::invalid_argument("sweep step must be > 0");
  if (axis.stop < axis.start)
    throw std::invalid_argument("sweep stop must be >= start");
  const int count =
      1 + static_cast<int>(std::floor((axis.stop - axis.start) / axis.step +
                                      1e-9));
  std::vector<double> values(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    values[static_cast<std::size_t>(i)] = axis.start + i * axis.step;
  return values;
}

// All CSV numbers go through one formatter so outputs are reproducible
// byte-for-byte across runs.
inline std::string format_csv_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return buffer;
}

// Analytic quantities at one operating point.  Everything that requires a
// stable relay queue is NaN when lambda_p sits at or above the bound; the
// policy-level probabilities stay finite.
struct AnalyticPoint {
  LinkStats stats;
  double bound = 0.0;
  double mu_si = 0.0;
  double tau = 0.0;
  bool stable = false;
};

inline AnalyticPoint analytic_point(const SystemParams& params,
                                    const PolicyConfig& policy) {
  params.validate();
  const DerivedConstants c = derive_constants(params);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  AnalyticPoint pt;
  pt.stats.f_p = f_p(params);
  pt.stats.f_ps = f_ps(params);
  pt.stats.f_rstar = f_rstar(policy, c, params.n_su);
  pt.bound = max_stable_arrival(pt.stats.f_p, pt.stats.f_ps, pt.stats.f_rstar);
  pt.stable = params.lambda_p < pt.bound || params.lambda_p == 0.0;

  if (policy.selection == SelectionPolicy::BSL) {
    pt.stats.f_sstar = f_sstar_bsl(c, params.n_su);
  } else if (pt.stable) {
    const double gamma = gamma_qr_busy(params.lambda_p, pt.stats.f_p,
                                       pt.stats.f_ps, pt.stats.f_rstar);
    pt.stats.f_sstar = f_sstar_bpl(c, params.n_su, gamma);
  } else {
    pt.stats.f_sstar = nan;
  }

  pt.mu_si = pt.stable
                 ? su_throughput(params.lambda_p, pt.stats, params.n_su)
                 : nan;
  pt.tau = pt.stable && params.lambda_p > 0.0
               ? avg_delay(params.lambda_p, pt.stats).tau
               : nan;
  return pt;
}

namespace detail {

inline void append_param_columns(std::vector<std::string>& header) {
  const char* names[] = {"power",       "selection",    "reselect",
                         "n_su",        "lambda_p",     "rate_r0",
                         "p0_over_n0",  "pmax_over_n0", "sigma_p_sq"};
  header.insert(header.end(), std::begin(names), std::end(names));
}

inline void append_param_cells(std::vector<std::string>& row,
                               const SystemParams& params,
                               const PolicyConfig& policy) {
  row.push_back(to_string(policy.power));
  row.push_back(to_string(policy.selection));
  row.push_back(to_string(policy.reselect_on_silence));
  row.push_back(std::to_string(params.n_su));
  row.push_back(format_csv_double(params.lambda_p));
  row.push_back(format_csv_double(params.rate_r0));
  row.push_back(format_csv_double(params.p0_over_n0));
  row.push_back(format_csv_double(params.pmax_over_n0));
  row.push_back(format_csv_double(params.sigma_p_sq));
}

inline void append_analytic_columns(std::vector<std::string>& header) {
  const char* names[] = {"f_p",  "f_ps",  "f_rstar", "f_sstar",
                         "stability_bound", "mu_si", "tau",     "stable"};
  header.insert(header.end(), std::begin(names), std::end(names));
}

inline void append_analytic_cells(std::vector<std::string>& row,
                                  const AnalyticPoint& pt) {
  row.push_back(format_csv_double(pt.stats.f_p));
  row.push_back(format_csv_double(pt.stats.f_ps));
  row.push_back(format_csv_double(pt.stats.f_rstar));
  row.push_back(format_csv_double(pt.stats.f_sstar));
  row.push_back(format_csv_double(pt.bound));
  row.push_back(format_csv_double(pt.mu_si));
  row.push_back(format_csv_double(pt.tau));
  row.push_back(pt.stable ? "1" : "0");
}

inline void append_sim_columns(std::vector<std::string>& header) {
  const char* names[] = {
      "pu_throughput",      "su_throughput_sum", "su_throughput_spread",
      "avg_delay",          "mean_qp",           "mean_qr",
      "avg_power_s",        "avg_power_r",       "cond_power_s",
      "cond_power_r",       "relay_success_rate", "own_success_rate",
      "relayed_fraction",   "sim_stable",        "qr_slope",
      "slots",              "warmup_slots",      "seed"};
  header.insert(header.end(), std::begin(names), std::end(names));
}

inline void append_sim_cells(std::vector<std::string>& row,
                             const SimMetrics& metrics,
                             const SimConfig& config) {
  double sum = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  if (!metrics.su_throughput.empty()) {
    lo = metrics.su_throughput.front();
    hi = lo;
    for (double v : metrics.su_throughput) {
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  row.push_back(format_csv_double(metrics.pu_throughput));
  row.push_back(format_csv_double(sum));
  row.push_back(format_csv_double(hi - lo));
  row.push_back(format_csv_double(metrics.avg_delay));
  row.push_back(format_csv_double(metrics.mean_qp));
  row.push_back(format_csv_double(metrics.mean_qr));
  row.push_back(format_csv_double(metrics.avg_power_s));
  row.push_back(format_csv_double(metrics.avg_power_r));
  row.push_back(format_csv_double(metrics.cond_power_s));
  row.push_back(format_csv_double(metrics.cond_power_r));
  row.push_back(format_csv_double(metrics.relay_success_rate));
  row.push_back(format_csv_double(metrics.own_success_rate));
  row.push_back(format_csv_double(metrics.relayed_fraction));
  row.push_back(metrics.stability.growing ? "0" : "1");
  row.push_back(format_csv_double(metrics.stability.slope));
  row.push_back(std::to_string(config.slots));
  row.push_back(std::to_string(config.warmup_slots));
  row.push_back(std::to_string(config.seed));
}

inline void write_csv_line(std::ostream& os,
                           const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) os << ',';
    os << cells[i];
  }
  os << '\n';
}

}  // namespace detail

inline void write_csv_preamble(std::ostream& os, const ExperimentSpec& spec) {
  os << "# cogrelay v" << kVersion << " mode=" << to_string(spec.mode)
     << " seed=" << spec.seed << "\n";
}

inline void run_analytic(const ExperimentSpec& spec, std::ostream& os) {
  write_csv_preamble(os, spec);
  std::vector<std::string> header;
  detail::append_param_columns(header);
  detail::append_analytic_columns(header);
  detail::write_csv_line(os, header);

  std::vector<double> points = {0.0};
  const bool swept = spec.sweep.has_value();
  if (swept) points = axis_values(*spec.sweep);
  for (double value : points) {
    SystemParams params = spec.params;
    if (swept) apply_axis(params, spec.sweep->axis, value);
    const AnalyticPoint pt = analytic_point(params, spec.policy);
    std::vector<std::string> row;
    detail::append_param_cells(row, params, spec.policy);
    detail::append_analytic_cells(row, pt);
    detail::write_csv_line(os, row);
  }
}

inline void run_simulate(const ExperimentSpec& spec, std::ostream& os) {
  write_csv_preamble(os, spec);
  std::vector<std::string> header;
  detail::append_param_columns(header);
  detail::append_sim_columns(header);
  detail::write_csv_line(os, header);

  SimConfig config;
  config.params = spec.params;
  config.policy = spec.policy;
  config.slots = spec.slots;
  config.warmup_slots = spec.warmup_slots;
  config.seed = spec.seed;
  const SimMetrics metrics = run(config);
  std::vector<std::string> row;
  detail::append_param_cells(row, config.params, config.policy);
  detail::append_sim_cells(row, metrics, config);
  detail::write_csv_line(os, row);
}

inline void run_sweep(const ExperimentSpec& spec, std::ostream& os) {
  if (!spec.sweep)
    throw std::invalid_argument("sweep mode needs a [sweep] block");
  write_csv_preamble(os, spec);
  std::vector<std::string> header;
  detail::append_param_columns(header);
  detail::append_analytic_columns(header);
  detail::append_sim_columns(header);
  detail::write_csv_line(os, header);

  const std::vector<double> points = axis_values(*spec.sweep);
  for (std::size_t i = 0; i < points.size(); ++i) {
    SystemParams params = spec.params;
    apply_axis(params, spec.sweep->axis, points[i]);
    const AnalyticPoint pt = analytic_point(params, spec.policy);

    SimConfig config;
    config.params = params;
    config.policy = spec.policy;
    config.slots = spec.slots;
    config.warmup_slots = spec.warmup_slots;
    config.seed = subrun_seed(spec.seed, i);
    const SimMetrics metrics = run(config);

    std::vector<std::string> row;
    detail::append_param_cells(row, params, spec.policy);
    detail::append_analytic_cells(row, pt);
    detail::append_sim_cells(row, metrics, config);
    detail::write_csv_line(os, row);
  }
}

}  // namespace cogrelay
