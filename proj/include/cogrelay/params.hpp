#pragma once
// Shared domain types for the cooperative cognitive relaying model: one
// primary user (PU), N backlogged secondary users (SUs), and a shared relay
// queue, all under frequency-flat Rayleigh block fading.  Every power in the
// library is a power-to-noise ratio (N0 normalized to 1); dB conversion is a
// CLI-layer concern only.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogrelay {

enum class PowerPolicy { EP, AP };           // equal power / adaptive power
enum class SelectionPolicy { BSL, BPL };     // best secondary / best primary link
enum class ReselectMode { AnalysisFaithful, Literal };

struct PolicyConfig {
  PowerPolicy power = PowerPolicy::EP;
  SelectionPolicy selection = SelectionPolicy::BSL;
  // When the adaptive policy silences one transmitter, AnalysisFaithful
  // reselects exactly the way the closed-form analysis assumes (relay re-drawn
  // over all N SUs under BSL; never under BPL, where r* is already the best of
  // all N).  Literal always re-draws a lone surviving transmitter as the best
  // of all N links to its destination.
  ReselectMode reselect_on_silence = ReselectMode::AnalysisFaithful;
};

inline const char* to_string(PowerPolicy p) {
  return p == PowerPolicy::EP ? "EP" : "AP";
}
inline const char* to_string(SelectionPolicy s) {
  return s == SelectionPolicy::BSL ? "BSL" : "BPL";
}
inline const char* to_string(ReselectMode m) {
  return m == ReselectMode::AnalysisFaithful ? "analysis_faithful" : "literal";
}
inline std::string policy_label(const PolicyConfig& c) {
  return std::string(to_string(c.power)) + "-" + to_string(c.selection);
}

inline PowerPolicy parse_power_policy(const std::string& s) {
  if (s == "EP" || s == "ep") return PowerPolicy::EP;
  if (s == "AP" || s == "ap") return PowerPolicy::AP;
  throw std::invalid_argument("unknown power policy '" + s + "' (want EP|AP)");
}
inline SelectionPolicy parse_selection_policy(const std::string& s) {
  if (s == "BSL" || s == "bsl") return SelectionPolicy::BSL;
  if (s == "BPL" || s == "bpl") return SelectionPolicy::BPL;
  throw std::invalid_argument("unknown selection policy '" + s + "' (want BSL|BPL)");
}
inline ReselectMode parse_reselect_mode(const std::string& s) {
  if (s == "analysis_faithful") return ReselectMode::AnalysisFaithful;
  if (s == "literal") return ReselectMode::Literal;
  throw std::invalid_argument("unknown reselect mode '" + s +
                              "' (want analysis_faithful|literal)");
}

// Physical and traffic constants.  sigma_sq (mean of every SU-side link gain)
// is fixed to 1; the model requires sigma_p_sq <= 1.
struct SystemParams {
  int n_su = 2;                  // N >= 2
  double lambda_p = 0.1;         // PU Bernoulli arrival rate, packets/slot
  double rate_r0 = 2.0;          // target rate, bits/channel use
  double p0_over_n0 = 10.0;      // PU transmit SNR, linear
  double pmax_over_n0 = 5.011872336272722;  // SU power cap, linear (7 dB)
  double sigma_p_sq = 0.25;      // mean of the PU direct-link gain
  static constexpr double sigma_sq = 1.0;

  void validate() const {
    if (n_su < 2) throw std::invalid_argument("n_su must be >= 2");
    if (!(lambda_p >= 0.0 && lambda_p < 1.0))
      throw std::invalid_argument("lambda_p must be in [0,1)");
    if (!(rate_r0 > 0.0)) throw std::invalid_argument("rate_r0 must be > 0");
    if (!(p0_over_n0 > 0.0)) throw std::invalid_argument("p0_over_n0 must be > 0");
    if (!(pmax_over_n0 >= 0.0)) throw std::invalid_argument("pmax_over_n0 must be >= 0");
    if (!(sigma_p_sq > 0.0 && sigma_p_sq <= sigma_sq))
      throw std::invalid_argument("sigma_p_sq must be in (0,1]");
  }
};

// Constants the analysis is phrased in:
//   alpha = (2^R0 - 1)/(P0/N0),  a = (2^R0 - 1)/(Pmax/N0),
//   b = 1/(2^R0 - 1),            beta = 1 - e^{-a}.
// pmax_over_n0 = 0 yields a = +inf, beta = 1 (the zero-power limit).
struct DerivedConstants {
  double alpha = 0.0;
  double a = 0.0;
  double b = 0.0;
  double beta = 0.0;
};

inline DerivedConstants derive_constants(const SystemParams& p) {
  const double t = std::exp2(p.rate_r0) - 1.0;
  DerivedConstants c;
  c.alpha = t / p.p0_over_n0;
  c.a = p.pmax_over_n0 > 0.0 ? t / p.pmax_over_n0
                             : std::numeric_limits<double>::infinity();
  c.b = 1.0 / t;
  c.beta = -std::expm1(-c.a);
  return c;
}

// One slot's fading draws.  h_p: PU -> D_p; h_ps[i]: PU -> SU_i;
// h_r[i]: SU_i -> D_p (the relay link, and the interference path when SU_i is
// the secondary transmitter); h_s[i]: SU_i -> D_s.
struct ChannelSample {
  double h_p = 0.0;
  std::vector<double> h_ps;
  std::vector<double> h_r;
  std::vector<double> h_s;
};

}  // namespace cogrelay
