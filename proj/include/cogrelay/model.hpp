#pragma once
// Rate/success predicates and the single-queue update rule.
//
// Success conventions: threshold events on raw gains use strict inequality
// (the boundary has probability zero; strictness just pins determinism).
// Rate-target events use rate >= R0 - 1e-12 because the adaptive policy
// chooses powers meeting the target with *equality*, and the comparison must
// not fail on the last floating-point ulp.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cogrelay/params.hpp"

namespace cogrelay {

inline constexpr double kRateTolerance = 1e-12;

inline bool direct_success(const ChannelSample& s, const DerivedConstants& c) {
  return s.h_p > c.alpha;
}

inline bool su_decode_success(const ChannelSample& s, const DerivedConstants& c) {
  return *std::max_element(s.h_ps.begin(), s.h_ps.end()) > c.alpha;
}

// Secondary link s* -> D_s is interference-free (dirty-paper precoding at the
// relay side removes the cross term).
inline double rate_secondary(double p_s, double h_s) {
  return std::log2(1.0 + p_s * h_s);
}

// Relay link r* -> D_p sees the secondary transmission as noise
// (Z-interference channel, D_p treats it as Gaussian interference).
inline double rate_relay(double p_r, double h_r, double p_s, double h_i) {
  return std::log2(1.0 + p_r * h_r / (1.0 + p_s * h_i));
}

inline bool meets_rate(double rate, double r0) {
  return rate >= r0 - kRateTolerance;
}

// Departure-first (late-arrival) slot update: a packet arriving in slot n is
// first servable in slot n+1.
inline int queue_step(int length, int departed, int arrived) {
  if (departed < 0 || departed > 1 || arrived < 0 || arrived > 1)
    throw std::invalid_argument("queue_step: departed/arrived must be 0 or 1");
  if (departed > length)
    throw std::logic_error("queue_step: departure from an empty queue");
  return length - departed + arrived;
}

}  // namespace cogrelay
