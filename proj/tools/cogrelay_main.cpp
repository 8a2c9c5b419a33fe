// Command-line driver: analytic tables, single simulations, parameter
// sweeps, and the self-validation suite.  Results go to stdout or --out as
// CSV; progress and timing go to stderr so outputs stay byte-reproducible.

#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "cogrelay/cogrelay.hpp"

namespace {

int run_validate(const cogrelay::ExperimentSpec& spec, std::ostream& os) {
  cogrelay::ValidationOptions opts;
  opts.seed = spec.seed;
  opts.slots = spec.slots;
  opts.warmup_slots = spec.warmup_slots;

  const auto start = std::chrono::steady_clock::now();
  const std::vector<cogrelay::CheckResult> results =
      cogrelay::run_all_checks(opts);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  os << cogrelay::render_report(results);
  int passed = 0;
  for (const cogrelay::CheckResult& r : results) passed += r.passed ? 1 : 0;
  std::cerr << "validate: " << passed << "/" << results.size()
            << " checks passed in " << seconds << " s\n";
  return passed == static_cast<int>(results.size()) ? 0 : 2;
}

int dispatch(const cogrelay::ExperimentSpec& spec, std::ostream& os) {
  switch (spec.mode) {
    case cogrelay::RunMode::Analytic:
      cogrelay::run_analytic(spec, os);
      return 0;
    case cogrelay::RunMode::Simulate:
      cogrelay::run_simulate(spec, os);
      return 0;
    case cogrelay::RunMode::Sweep:
      cogrelay::run_sweep(spec, os);
      return 0;
    case cogrelay::RunMode::Validate:
      return run_validate(spec, os);
  }
  return 1;  // unreachable
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cogrelay: cooperative cognitive-relay network analysis and "
      "simulation"};

  std::string config_path;
  std::string mode_text;
  std::string out_path;
  std::uint64_t seed = 0;
  std::uint64_t slots = 0;

  app.add_option("--config", config_path,
                 "INI-style experiment file ([params]/[policy]/[run]/[sweep])")
      ->check(CLI::ExistingFile);
  auto* mode_opt = app.add_option(
      "--mode", mode_text, "analytic | simulate | sweep | validate");
  auto* seed_opt = app.add_option("--seed", seed, "master RNG seed");
  auto* slots_opt =
      app.add_option("--slots", slots, "simulation horizon in slots");
  auto* out_opt =
      app.add_option("--out", out_path, "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    cogrelay::ExperimentSpec spec;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot open " + config_path);
      spec = cogrelay::spec_from_config(cogrelay::parse_config(in));
    }
    if (mode_opt->count() > 0) spec.mode = cogrelay::parse_run_mode(mode_text);
    if (seed_opt->count() > 0) spec.seed = seed;
    if (slots_opt->count() > 0) spec.slots = slots;
    if (out_opt->count() > 0) spec.out_path = out_path;

    if (spec.out_path.empty()) return dispatch(spec, std::cout);
    std::ofstream file(spec.out_path);
    if (!file) throw std::runtime_error("cannot write " + spec.out_path);
    return dispatch(spec, file);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
