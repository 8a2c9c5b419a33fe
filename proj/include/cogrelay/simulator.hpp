#pragma once
// Slot-by-slot simulation of the cooperative protocol.  Each slot: the PU
// transmits whenever its queue is non-empty (a failed direct transmission
// that at least one SU decodes hands the packet to the shared relay queue);
// otherwise the SUs transmit — a relay/own pair when the relay queue is
// backlogged, a single own transmission when it is empty.  A Bernoulli
// primary arrival closes the slot, so packets arriving in slot t are first
// served in slot t+1 and queue lengths sampled at slot start follow the
// late-arrival convention of the queue evolution equation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cogrelay/model.hpp"
#include "cogrelay/params.hpp"
#include "cogrelay/policy.hpp"
#include "cogrelay/queue.hpp"
#include "cogrelay/rng.hpp"

namespace cogrelay {

struct SimConfig {
  SystemParams params;
  PolicyConfig policy;
  std::uint64_t slots = 1000000;
  std::uint64_t warmup_slots = 10000;
  std::uint64_t seed = 1;

  void validate() const {
    params.validate();
    if (slots <= warmup_slots)
      throw std::invalid_argument("SimConfig: slots must exceed warmup_slots");
  }
};

struct StabilityDiagnostic {
  bool growing = false;
  double slope = 0.0;  // least-squares slope of window means, packets/slot
  double first_window_mean = 0.0;
  double last_window_mean = 0.0;
};

struct SimMetrics {
  double pu_throughput = 0.0;   // delivered primary packets per slot
  std::vector<double> su_throughput;  // own deliveries per slot, per SU
  double avg_delay = 0.0;       // mean departure-arrival slots; 0 if none
  double mean_qp = 0.0;         // time-average queue lengths at slot start
  double mean_qr = 0.0;
  double avg_power_s = 0.0;     // mean power over scheduled slots, silenced = 0
  double avg_power_r = 0.0;
  double cond_power_s = 0.0;    // mean power over transmitting slots only
  double cond_power_r = 0.0;
  double relay_success_rate = 0.0;  // deliveries per relay-scheduled slot
  double own_success_rate = 0.0;    // deliveries per own-scheduled slot
  double relayed_fraction = 0.0;    // share of deliveries that went via q_r
  StabilityDiagnostic stability;
};

struct SimState {
  PacketQueue q_p;
  PacketQueue q_r;
  std::uint64_t slot = 0;
};

struct SlotOutcome {
  bool pu_transmitted = false;
  bool pu_delivered = false;     // direct delivery to D_p
  bool pu_handoff = false;       // packet moved q_p -> q_r
  bool relay_scheduled = false;  // a relay role existed this slot
  bool relay_delivered = false;  // head of q_r delivered to D_p
  bool own_scheduled = false;    // an own-transmission role existed
  bool own_delivered = false;
  bool pu_arrival = false;
  Assignment assignment;  // powers/indices when any SU role was scheduled
  std::optional<std::uint64_t> delivered_arrival_slot;  // of the primary
                                                        // packet, if delivered
};

// Advances one slot.  The queue states at entry decide the branch; the
// Bernoulli arrival is drawn last so it cannot be served in the same slot.
inline SlotOutcome step(SimState& state, const ChannelSample& sample, Rng& rng,
                        const SimConfig& config,
                        const DerivedConstants& consts) {
  const SystemParams& params = config.params;
  SlotOutcome out;

  if (!state.q_p.empty()) {
    out.pu_transmitted = true;
    if (direct_success(sample, consts)) {
      const PacketRecord packet = state.q_p.pop();
      out.pu_delivered = true;
      out.delivered_arrival_slot = packet.arrival_slot;
    } else if (su_decode_success(sample, consts)) {
      PacketRecord packet = state.q_p.pop();
      packet.relayed = true;
      state.q_r.push(packet);
      out.pu_handoff = true;
    }
  } else if (!state.q_r.empty()) {
    out.relay_scheduled = true;
    out.own_scheduled = true;
    Assignment roles = select_pair(sample, config.policy.selection);
    roles = allocate(sample, roles, consts, params, config.policy);
    out.assignment = roles;
    if (roles.relay_su && roles.p_r > 0.0) {
      const double rate =
          rate_relay(roles.p_r, roles.h_relay, roles.p_s, roles.h_i);
      if (meets_rate(rate, params.rate_r0)) {
        const PacketRecord packet = state.q_r.pop();
        out.relay_delivered = true;
        out.delivered_arrival_slot = packet.arrival_slot;
      }
    }
    if (roles.own_su && roles.p_s > 0.0 &&
        meets_rate(rate_secondary(roles.p_s, roles.h_own), params.rate_r0)) {
      out.own_delivered = true;
    }
  } else {
    out.own_scheduled = true;
    Assignment roles = assign_single(sample);
    roles = allocate(sample, roles, consts, params, config.policy);
    out.assignment = roles;
    if (roles.p_s > 0.0 &&
        meets_rate(rate_secondary(roles.p_s, roles.h_own), params.rate_r0)) {
      out.own_delivered = true;
    }
  }

  if (rng.bernoulli(params.lambda_p)) {
    PacketRecord packet;
    packet.arrival_slot = state.slot;
    state.q_p.push(packet);
    out.pu_arrival = true;
  }
  ++state.slot;
  return out;
}

inline SlotOutcome step(SimState& state, const ChannelSample& sample, Rng& rng,
                        const SimConfig& config) {
  return step(state, sample, rng, config, derive_constants(config.params));
}

// Ten-window trend test on the relay-queue length trace: the queue is called
// growing when the least-squares slope of the window means is materially
// positive and the last window sits well above the first, so a stable queue
// with a noisy excursion is not misclassified.
inline StabilityDiagnostic stability_diagnostic(
    const std::vector<double>& qr_length_trace) {
  constexpr std::size_t kWindows = 10;
  if (qr_length_trace.size() < kWindows)
    throw std::invalid_argument("stability_diagnostic: trace too short");
  const std::size_t window = qr_length_trace.size() / kWindows;

  double means[kWindows];
  for (std::size_t w = 0; w < kWindows; ++w) {
    double sum = 0.0;
    for (std::size_t i = w * window; i < (w + 1) * window; ++i)
      sum += qr_length_trace[i];
    means[w] = sum / static_cast<double>(window);
  }

  double x_bar = 0.0;
  double m_bar = 0.0;
  for (std::size_t w = 0; w < kWindows; ++w) {
    x_bar += (static_cast<double>(w) + 0.5) * static_cast<double>(window);
    m_bar += means[w];
  }
  x_bar /= kWindows;
  m_bar /= kWindows;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t w = 0; w < kWindows; ++w) {
    const double dx =
        (static_cast<double>(w) + 0.5) * static_cast<double>(window) - x_bar;
    num += dx * (means[w] - m_bar);
    den += dx * dx;
  }

  StabilityDiagnostic diag;
  diag.slope = num / den;
  diag.first_window_mean = means[0];
  diag.last_window_mean = means[kWindows - 1];
  diag.growing =
      diag.slope > 1e-4 && diag.last_window_mean > 3.0 * diag.first_window_mean;
  return diag;
}

inline SimMetrics run(const SimConfig& config) {
  config.validate();
  const std::size_t n = static_cast<std::size_t>(config.params.n_su);
  const double pmax = config.params.pmax_over_n0;
  const DerivedConstants consts = derive_constants(config.params);

  SimState state;
  Rng rng(config.seed);
  ChannelSample sample;

  std::uint64_t delivered_direct = 0;
  std::uint64_t delivered_relayed = 0;
  std::vector<std::uint64_t> own_deliveries(n, 0);
  std::uint64_t own_delivered_total = 0;
  std::uint64_t delay_sum = 0;
  std::uint64_t delay_count = 0;
  double qp_sum = 0.0;
  double qr_sum = 0.0;
  std::uint64_t own_scheduled = 0;
  std::uint64_t relay_scheduled = 0;
  std::uint64_t transmitting_s = 0;
  std::uint64_t transmitting_r = 0;
  double power_s_sum = 0.0;
  double power_r_sum = 0.0;
  // Conditional powers accumulate deviations from the cap so the equal-power
  // policy reports the cap exactly, not a rounded re-sum of it.
  double cond_dev_s = 0.0;
  double cond_dev_r = 0.0;
  std::uint64_t all_direct = 0;
  std::uint64_t all_handoff = 0;

  std::vector<double> qr_trace;
  qr_trace.reserve(config.slots - config.warmup_slots);

  for (std::uint64_t s = 0; s < config.slots; ++s) {
    const bool measured = s >= config.warmup_slots;
    if (measured) {
      qp_sum += static_cast<double>(state.q_p.size());
      qr_sum += static_cast<double>(state.q_r.size());
      qr_trace.push_back(static_cast<double>(state.q_r.size()));
    }

    sample_channels(rng, config.params, sample);
    const SlotOutcome out = step(state, sample, rng, config, consts);

    if (out.pu_delivered) ++all_direct;
    if (out.pu_handoff) ++all_handoff;
    if (!measured) continue;

    if (out.pu_delivered) ++delivered_direct;
    if (out.relay_delivered) ++delivered_relayed;
    if (out.delivered_arrival_slot &&
        *out.delivered_arrival_slot >= config.warmup_slots) {
      delay_sum += s - *out.delivered_arrival_slot;
      ++delay_count;
    }
    if (out.own_scheduled) {
      ++own_scheduled;
      power_s_sum += out.assignment.p_s;
      if (out.assignment.p_s > 0.0) {
        ++transmitting_s;
        cond_dev_s += out.assignment.p_s - pmax;
      }
    }
    if (out.relay_scheduled) {
      ++relay_scheduled;
      power_r_sum += out.assignment.p_r;
      if (out.assignment.p_r > 0.0) {
        ++transmitting_r;
        cond_dev_r += out.assignment.p_r - pmax;
      }
    }
    if (out.own_delivered) {
      ++own_deliveries[*out.assignment.own_su];
      ++own_delivered_total;
    }
  }

  // Packet accounting: every queue departure must be a counted event.
  if (state.q_p.departures() != all_direct + all_handoff ||
      state.q_r.arrivals() != all_handoff)
    throw std::logic_error("run: packet accounting mismatch");

  const double measured_slots =
      static_cast<double>(config.slots - config.warmup_slots);

  SimMetrics metrics;
  metrics.pu_throughput =
      static_cast<double>(delivered_direct + delivered_relayed) /
      measured_slots;
  metrics.su_throughput.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    metrics.su_throughput[i] =
        static_cast<double>(own_deliveries[i]) / measured_slots;
  }
  metrics.avg_delay =
      delay_count == 0
          ? 0.0
          : static_cast<double>(delay_sum) / static_cast<double>(delay_count);
  metrics.mean_qp = qp_sum / measured_slots;
  metrics.mean_qr = qr_sum / measured_slots;
  metrics.avg_power_s =
      own_scheduled == 0 ? 0.0
                         : power_s_sum / static_cast<double>(own_scheduled);
  metrics.avg_power_r =
      relay_scheduled == 0 ? 0.0
                           : power_r_sum / static_cast<double>(relay_scheduled);
  metrics.cond_power_s =
      transmitting_s == 0
          ? 0.0
          : pmax + cond_dev_s / static_cast<double>(transmitting_s);
  metrics.cond_power_r =
      transmitting_r == 0
          ? 0.0
          : pmax + cond_dev_r / static_cast<double>(transmitting_r);
  metrics.relay_success_rate =
      relay_scheduled == 0
          ? 0.0
          : static_cast<double>(delivered_relayed) /
                static_cast<double>(relay_scheduled);
  metrics.own_success_rate =
      own_scheduled == 0 ? 0.0
                         : static_cast<double>(own_delivered_total) /
                               static_cast<double>(own_scheduled);
  const std::uint64_t delivered = delivered_direct + delivered_relayed;
  metrics.relayed_fraction =
      delivered == 0
          ? 0.0
          : static_cast<double>(delivered_relayed) /
                static_cast<double>(delivered);
  metrics.stability = stability_diagnostic(qr_trace);
  return metrics;
}

}  // namespace cogrelay
