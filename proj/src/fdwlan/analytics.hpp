// SPDX-License-Identifier: Apache-2.0
#ifndef FDWLAN_ANALYTICS_HPP
#define FDWLAN_ANALYTICS_HPP

#include <string>
#include <vector>

#include "fdwlan/airtime.hpp"
#include "fdwlan/dcf.hpp"
#include "fdwlan/model.hpp"

namespace fdwlan {

enum class NodeRole { HdAp, HdSta, IbfdAp, IbfdSta };

const char* to_string(NodeRole role);

/// One mutually exclusive per-slot state: its per-event energy and its
/// stationary probability.
struct LedgerEntry {
    std::string label;
    double energy_uj;
    double probability;
};

/// Ordered state table for one node role: 6 entries for a half-duplex
/// node, 3 for the full-duplex AP, 5 for a full-duplex station.
struct StateLedger {
    NodeRole role;
    std::vector<LedgerEntry> entries;

    double probability_sum() const;
};

/// Six-state table for a half-duplex node. The transmit duration is the
/// role's own payload; receive and overhear durations are the expectation
/// over which of the other n-1 nodes transmits.
StateLedger hd_state_ledger(NodeRole role, const Model& model, const DcfSolution& solution);

/// Three-state table for the full-duplex AP.
StateLedger ibfd_ap_ledger(const Model& model, const DcfSolution& solution);

/// Five-state table for a full-duplex station.
StateLedger ibfd_sta_ledger(const Model& model, const DcfSolution& solution);

/// Sum of energy * probability over the ledger, in microjoules.
double expected_energy(const StateLedger& ledger);

/// Expected renewal-slot duration: (1-P_tr) sigma + P_tr P_s T_s
/// + P_tr (1-P_s) T_c, with the half-duplex exchange durations weighted
/// over transmitter identity (successes) and collision composition.
double expected_slot_us(const Model& model, const DcfSolution& solution, DuplexMode mode);

/// Average power in watts: expected energy over expected slot time.
double node_power_w(const StateLedger& ledger, double expected_slot_us);

struct NodeMetrics {
    NodeRole role;
    double expected_energy_uj = 0.0;
    double expected_slot_us = 0.0;
    double power_w = 0.0;
    double throughput_share_mbps = 0.0;   // this role's delivered payload rate
    double network_throughput_mbps = 0.0;
    double network_power_w = 0.0;
    double efficiency_mbpj = 0.0;         // network throughput / network power
};

/// Full analytic evaluation of one (model, mode) point.
struct NetworkMetrics {
    DuplexMode mode;
    DcfSolution solution;
    SlotDurations slots;
    NodeMetrics ap;
    NodeMetrics sta;
    double expected_slot_us = 0.0;
    double network_throughput_mbps = 0.0;
    double network_power_w = 0.0;         // AP + (n-1) stations
    double efficiency_mbpj = 0.0;
    double node_mean_power_w = 0.0;       // network power / n
};

NetworkMetrics network_metrics(const Model& model, DuplexMode mode);

}  // namespace fdwlan

#endif
