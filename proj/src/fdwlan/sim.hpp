// SPDX-License-Identifier: Apache-2.0
#ifndef FDWLAN_SIM_HPP
#define FDWLAN_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fdwlan/analytics.hpp"
#include "fdwlan/model.hpp"

namespace fdwlan {

struct SimConfig {
    std::uint64_t horizon_slots = 1'000'000;  // renewal slots simulated
    std::uint64_t warmup_slots = 10'000;      // leading slots excluded from statistics
    std::uint64_t seed = 1;
};

/// Tally for one per-slot state of one node. Durations are renewal-slot
/// time; the component fields split the same span by what the radio was
/// doing, so energy is an exact dot product with the power profile.
struct StateTally {
    std::string label;
    std::uint64_t count = 0;
    double slot_us = 0.0;
    double tx_us = 0.0;
    double rx_us = 0.0;
    double idle_us = 0.0;
    double ctrl_us = 0.0;
    double sic_us = 0.0;
    double energy_uj = 0.0;   // filled at report time from the components
};

struct NodeReport {
    NodeRole role;
    std::vector<StateTally> states;
    double elapsed_us = 0.0;   // sum of the per-state slot times
    double energy_uj = 0.0;
    double power_w = 0.0;
    std::uint64_t tx_bits = 0;
    std::uint64_t rx_bits = 0;
    std::uint64_t attempts = 0;
    std::uint64_t collisions = 0;
    std::uint64_t successes = 0;
    double empirical_tau = 0.0;  // attempts per renewal slot
    double empirical_p = 0.0;    // collisions per attempt
};

struct SimReport {
    DuplexMode mode;
    std::uint64_t seed = 0;
    std::uint64_t slots = 0;        // renewal slots covered by statistics
    std::uint64_t busy_slots = 0;
    std::uint64_t success_slots = 0;
    double elapsed_us = 0.0;
    std::vector<NodeReport> nodes;  // [0] is the AP
    double aggregate_throughput_mbps = 0.0;
    double network_power_w = 0.0;
    double node_mean_power_w = 0.0;
    double sta_mean_power_w = 0.0;
    double efficiency_mbpj = 0.0;
    double empirical_p_tr = 0.0;
    double empirical_p_s = 0.0;
};

/// Slot-synchronous simulation of the saturated contention game. Every
/// backoff counter ticks once per renewal slot (the contention model's
/// clock); expired counters transmit and the slot resolves by mode:
/// half duplex, a unique expirer succeeds (stations send to the AP, the
/// AP to a uniformly chosen station) and two or more expirers collide;
/// full duplex, a lone expiring station is answered by the AP in a
/// full-duplex exchange regardless of the AP's own counter, a lone
/// expiring AP picks a station which responds in full duplex, and two or
/// more expiring stations collide taking the AP's response with them.
/// Deterministic for a given seed (mt19937_64, modulo draws).
SimReport simulate(const Model& model, DuplexMode mode, const SimConfig& sim);

struct ReplicateStat {
    double mean = 0.0;
    double stddev = 0.0;   // sample standard deviation
};

struct ReplicateReport {
    std::size_t runs = 0;
    ReplicateStat ap_power_w;
    ReplicateStat sta_mean_power_w;
    ReplicateStat node_mean_power_w;
    ReplicateStat aggregate_throughput_mbps;
    ReplicateStat network_power_w;
    ReplicateStat efficiency_mbpj;
};

/// Runs one simulation per seed and reports mean / sample stddev of the
/// scalar summary fields. Requires at least two seeds.
ReplicateReport replicate(const Model& model, DuplexMode mode, const SimConfig& base,
                          std::span<const std::uint64_t> seeds);

}  // namespace fdwlan

#endif
