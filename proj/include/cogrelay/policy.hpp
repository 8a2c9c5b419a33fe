#pragma once
// Role selection and power allocation for the cooperative slot.  Selection
// picks which secondary relays the head of the relay queue (r*) and which
// transmits its own packet (s*); allocation assigns their powers, silencing a
// role under the adaptive policy when even the power cap cannot reach the
// target rate.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cogrelay/params.hpp"

namespace cogrelay {

// The scheduled roles and powers for one cooperative slot.  Indices are
// per-SU positions; a missing index means no SU holds that role this slot
// (e.g. empty relay queue, or a silenced role whose reselected replacement
// coincides with the other transmitter).  A present index with zero power is
// a scheduled-but-silenced role.
struct Assignment {
  std::optional<std::size_t> own_su;
  std::optional<std::size_t> relay_su;
  double p_s = 0.0;
  double p_r = 0.0;
  double h_own = 0.0;    // own-link gain of s*
  double h_relay = 0.0;  // relay-link gain of r*
  double h_i = 0.0;      // interference gain h_r[s*] seen on the relay link
};

namespace detail {

inline std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

inline std::size_t argmax_excluding(const std::vector<double>& v,
                                    std::size_t excluded) {
  std::size_t best = excluded == 0 ? 1 : 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i == excluded) continue;
    if (v[i] > v[best]) best = i;
  }
  return best;
}

inline void require_two_sus(const ChannelSample& sample) {
  if (sample.h_s.size() < 2 || sample.h_r.size() != sample.h_s.size())
    throw std::invalid_argument("selection requires at least two SUs");
}

}  // namespace detail

// Best-secondary-link selection: the own transmitter gets the strongest own
// link; the relay is the best of the remaining SUs.
inline Assignment select_pair_bsl(const ChannelSample& sample) {
  detail::require_two_sus(sample);
  Assignment roles;
  roles.own_su = detail::argmax(sample.h_s);
  roles.relay_su = detail::argmax_excluding(sample.h_r, *roles.own_su);
  roles.h_own = sample.h_s[*roles.own_su];
  roles.h_relay = sample.h_r[*roles.relay_su];
  roles.h_i = sample.h_r[*roles.own_su];
  return roles;
}

// Best-primary-link selection: the relay gets the strongest relay link; the
// own transmitter is the best of the remaining SUs.
inline Assignment select_pair_bpl(const ChannelSample& sample) {
  detail::require_two_sus(sample);
  Assignment roles;
  roles.relay_su = detail::argmax(sample.h_r);
  roles.own_su = detail::argmax_excluding(sample.h_s, *roles.relay_su);
  roles.h_own = sample.h_s[*roles.own_su];
  roles.h_relay = sample.h_r[*roles.relay_su];
  roles.h_i = sample.h_r[*roles.own_su];
  return roles;
}

inline Assignment select_pair(const ChannelSample& sample,
                              SelectionPolicy policy) {
  return policy == SelectionPolicy::BSL ? select_pair_bsl(sample)
                                        : select_pair_bpl(sample);
}

// Relay queue empty and PU idle: a single SU transmits its own packet over
// the strongest own link.
inline std::size_t select_single(const ChannelSample& sample) {
  detail::require_two_sus(sample);
  return detail::argmax(sample.h_s);
}

// Roles for a slot where only an own packet is sent (relay queue empty).
inline Assignment assign_single(const ChannelSample& sample) {
  Assignment roles;
  roles.own_su = select_single(sample);
  roles.h_own = sample.h_s[*roles.own_su];
  return roles;
}

// Equal-power allocation: every scheduled role transmits at the cap,
// regardless of channel state.  No silencing ever occurs.
inline Assignment allocate_ep(Assignment roles, const SystemParams& params) {
  if (roles.own_su) roles.p_s = params.pmax_over_n0;
  if (roles.relay_su) roles.p_r = params.pmax_over_n0;
  return roles;
}

// Adaptive allocation: each role transmits with exactly the power that meets
// the target rate, and is silenced when that power exceeds the cap.  The own
// power is computed first because it sets the interference the relay must
// overcome.
inline Assignment allocate_ap(const ChannelSample& sample, Assignment roles,
                              const DerivedConstants& consts,
                              const SystemParams& params,
                              const PolicyConfig& policy) {
  (void)consts;
  const double pmax = params.pmax_over_n0;
  const double rate_gap = std::exp2(params.rate_r0) - 1.0;

  bool own_silenced = false;
  if (roles.own_su) {
    const double required = rate_gap / roles.h_own;
    if (required > pmax) {
      own_silenced = true;
      roles.p_s = 0.0;
    } else {
      roles.p_s = required;
    }
  }

  if (roles.relay_su) {
    // A silenced own transmitter may free the relay role to be re-drawn.
    const bool redraw_relay =
        own_silenced &&
        ((policy.reselect_on_silence == ReselectMode::AnalysisFaithful &&
          policy.selection == SelectionPolicy::BSL) ||
         policy.reselect_on_silence == ReselectMode::Literal);
    if (redraw_relay) {
      roles.relay_su = detail::argmax(sample.h_r);
      roles.h_relay = sample.h_r[*roles.relay_su];
      if (*roles.relay_su == *roles.own_su) {
        // The silenced own transmitter itself has the best relay link; it
        // abandons the own role for this slot.
        roles.own_su.reset();
        roles.h_own = 0.0;
        roles.h_i = 0.0;
      }
    }
    const double interference = 1.0 + roles.p_s * roles.h_i;
    const double required = rate_gap * interference / roles.h_relay;
    if (required > pmax) {
      roles.p_r = 0.0;
      if (policy.reselect_on_silence == ReselectMode::Literal && !own_silenced &&
          roles.own_su) {
        // Lone surviving own transmitter is re-drawn as the best own link of
        // all N, possibly the silenced relay's SU.  The redrawn gain is at
        // least the original feasible one, so no silencing check is needed.
        const std::size_t redrawn = detail::argmax(sample.h_s);
        roles.own_su = redrawn;
        roles.h_own = sample.h_s[redrawn];
        roles.h_i = sample.h_r[redrawn];
        roles.p_s = rate_gap / roles.h_own;
      }
    } else {
      roles.p_r = required;
    }
  }

  return roles;
}

inline Assignment allocate(const ChannelSample& sample, Assignment roles,
                           const DerivedConstants& consts,
                           const SystemParams& params,
                           const PolicyConfig& policy) {
  if (policy.power == PowerPolicy::EP) return allocate_ep(roles, params);
  return allocate_ap(sample, roles, consts, params, policy);
}

}  // namespace cogrelay
