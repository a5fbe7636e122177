// SPDX-License-Identifier: Apache-2.0
#include "fdwlan/analytics.hpp"

#include <cmath>

namespace fdwlan {

const char* to_string(NodeRole role) {
    switch (role) {
        case NodeRole::HdAp: return "HdNode-AP";
        case NodeRole::HdSta: return "HdNode-STA";
        case NodeRole::IbfdAp: return "IbfdAP";
        case NodeRole::IbfdSta: return "IbfdSTA";
    }
    return "?";
}

double StateLedger::probability_sum() const {
    double sum = 0.0;
    for (const auto& e : entries) sum += e.probability;
    return sum;
}

namespace {

/// Composite powers used by the state energies.
struct Powers {
    double tx_ctrl;   // transmitting a frame
    double rx_ctrl;   // receiving / overhearing a frame
    double tx_sic;    // full-duplex transmit with self-interference cancellation
    double rx_sic;    // full-duplex receive behind the canceller
    double idle;
};

Powers powers_of(const PowerProfile& p) {
    return Powers{p.tx_w + p.ctrl_w, p.rx_w + p.ctrl_w, p.tx_w + p.sic_w,
                  p.rx_w + p.sic_w, p.idle_w};
}

}  // namespace

StateLedger hd_state_ledger(NodeRole role, const Model& model, const DcfSolution& solution) {
    const auto& cfg = model.config;
    const int n = cfg.n_nodes;
    const Powers w = powers_of(model.profile);
    const SlotDurations d = slot_durations(DuplexMode::HalfDuplex, cfg, model.traffic);

    const double tau = solution.tau_sta;
    const double p = solution.p_sta;
    const double q = 1.0 - tau;
    const double qn1 = std::pow(q, n - 1);
    const double qn2 = std::pow(q, n - 2);

    // Own payload on transmit; expectation over the transmitting peer on
    // receive/overhear (AP receives only uplinks; a station hears the AP's
    // downlink 1/(n-1) of the time and a peer uplink otherwise).
    double t_tx, t_rx;
    if (role == NodeRole::HdAp) {
        t_tx = d.t_data_dl_us;
        t_rx = d.t_data_ul_us;
    } else {
        t_tx = d.t_data_ul_us;
        t_rx = (d.t_data_dl_us + (n - 2) * d.t_data_ul_us) / (n - 1);
    }

    const double ds = cfg.difs_us + cfg.sifs_us;
    const double dsa = ds + d.t_ack_us;

    StateLedger ledger;
    ledger.role = role;
    ledger.entries = {
        {"d", w.idle * cfg.slot_us, std::pow(q, n)},
        {"S-TX", w.tx_ctrl * t_tx + w.idle * ds + w.rx_ctrl * d.t_ack_us, tau * (1.0 - p)},
        {"S-RX", w.rx_ctrl * t_rx + w.idle * ds + w.tx_ctrl * d.t_ack_us, tau * qn1},
        {"S-R\xcc\x84X", w.rx_ctrl * (t_rx + d.t_ack_us) + w.idle * ds, (n - 2) * tau * qn1},
        {"C-TX", w.tx_ctrl * t_tx + w.idle * dsa, tau * p},
        {"C-R\xcc\x84X", w.rx_ctrl * t_rx + w.idle * dsa,
         q * (1.0 - qn1 - (n - 1) * tau * qn2)},
    };
    return ledger;
}

StateLedger ibfd_ap_ledger(const Model& model, const DcfSolution& solution) {
    const auto& cfg = model.config;
    const int n = cfg.n_nodes;
    const Powers w = powers_of(model.profile);
    const SlotDurations d = slot_durations(DuplexMode::InBandFullDuplex, cfg, model.traffic);

    const double ta = solution.tau_ap;
    const double ts = solution.tau_sta;
    const double qs = 1.0 - ts;
    const double qn1 = std::pow(qs, n - 1);
    const double qn2 = std::pow(qs, n - 2);

    const double ds = cfg.difs_us + cfg.sifs_us;
    const double dsa = ds + d.t_ack_us;
    const double pr_idle = (1.0 - ta) * qn1;
    const double pr_success = ta * qn1 + (n - 1) * ts * qn2;

    StateLedger ledger;
    ledger.role = NodeRole::IbfdAp;
    ledger.entries = {
        {"AP-d", w.idle * cfg.slot_us, pr_idle},
        {"AP-S-TXRX",
         w.tx_ctrl * (d.t_data_dl_us + d.t_ack_us) + w.rx_sic * (d.t_data_ul_us + d.t_ack_us) +
             w.idle * ds,
         pr_success},
        {"AP-C-TXRX",
         w.tx_ctrl * d.t_data_dl_us + w.rx_sic * d.t_data_ul_us + w.idle * dsa,
         1.0 - pr_idle - pr_success},
    };
    return ledger;
}

StateLedger ibfd_sta_ledger(const Model& model, const DcfSolution& solution) {
    const auto& cfg = model.config;
    const int n = cfg.n_nodes;
    const Powers w = powers_of(model.profile);
    const SlotDurations d = slot_durations(DuplexMode::InBandFullDuplex, cfg, model.traffic);

    const double ta = solution.tau_ap;
    const double ts = solution.tau_sta;
    const double ps = solution.p_sta;
    const double qs = 1.0 - ts;
    const double qn1 = std::pow(qs, n - 1);
    const double qn2 = std::pow(qs, n - 2);

    const double ds = cfg.difs_us + cfg.sifs_us;
    const double dsa = ds + d.t_ack_us;

    // A station transmits its uplink behind its own canceller and receives
    // the downlink; the downlink is also on air during overheard exchanges
    // and collisions (the AP transmits into every busy slot).
    const double t_up = d.t_data_ul_us;
    const double t_down = d.t_data_dl_us;

    const double pr_idle = (1.0 - ta) * qn1;
    const double pr_success = ts * (1.0 - ps) + qn1 * ta / (n - 1);
    const double pr_overhear =
        (n - 2) * ts * qn2 * (1.0 - ta) +
        static_cast<double>(n - 2) / (n - 1) * ta * (ts * qn2 + qn1);
    const double pr_coll = ts * ps;

    StateLedger ledger;
    ledger.role = NodeRole::IbfdSta;
    ledger.entries = {
        {"STA-d", w.idle * cfg.slot_us, pr_idle},
        {"STA-S-TXRX",
         w.tx_sic * (t_up + d.t_ack_us) + w.rx_ctrl * (t_down + d.t_ack_us) + w.idle * ds,
         pr_success},
        {"STA-S-R\xcc\x84X", w.rx_ctrl * (t_down + d.t_ack_us) + w.idle * ds, pr_overhear},
        {"STA-C-TXRX", w.tx_sic * t_up + w.rx_ctrl * t_down + w.idle * dsa, pr_coll},
        {"STA-C-R\xcc\x84X", w.rx_ctrl * t_down + w.idle * dsa,
         1.0 - pr_idle - pr_success - pr_overhear - pr_coll},
    };
    return ledger;
}

double expected_energy(const StateLedger& ledger) {
    double sum = 0.0;
    for (const auto& e : ledger.entries) sum += e.energy_uj * e.probability;
    return sum;
}

double expected_slot_us(const Model& model, const DcfSolution& solution, DuplexMode mode) {
    const auto& cfg = model.config;
    const int n = cfg.n_nodes;
    const SlotDurations d = slot_durations(mode, cfg, model.traffic);
    const double p_tr = solution.p_tr;
    const double p_s = solution.p_s;

    double t_success = d.t_success_us;
    double t_collision = d.t_collision_us;
    if (mode == DuplexMode::HalfDuplex) {
        const double tau = solution.tau_sta;
        const double ex_dl = exchange_duration_us(d.t_data_dl_us, cfg);
        const double ex_ul = exchange_duration_us(d.t_data_ul_us, cfg);
        // success: the transmitter is the AP with probability 1/n
        t_success = (ex_dl + (n - 1) * ex_ul) / n;
        // collision: downlink-length if the AP is among the colliders
        const double qn1 = std::pow(1.0 - tau, n - 1);
        const double qn2 = std::pow(1.0 - tau, n - 2);
        const double pr_with_ap = tau * (1.0 - qn1);
        const double pr_sta_only = (1.0 - tau) * (1.0 - qn1 - (n - 1) * tau * qn2);
        const double pr_coll = pr_with_ap + pr_sta_only;
        if (pr_coll > 0.0)
            t_collision = (pr_with_ap * ex_dl + pr_sta_only * ex_ul) / pr_coll;
    }
    return (1.0 - p_tr) * cfg.slot_us + p_tr * p_s * t_success +
           p_tr * (1.0 - p_s) * t_collision;
}

double node_power_w(const StateLedger& ledger, double expected_slot_us) {
    return expected_energy(ledger) / expected_slot_us;
}

NetworkMetrics network_metrics(const Model& model, DuplexMode mode) {
    const auto& cfg = model.config;
    const int n = cfg.n_nodes;

    NetworkMetrics m;
    m.mode = mode;
    m.solution = mode == DuplexMode::HalfDuplex ? solve_hd(cfg) : solve_ibfd(cfg);
    m.slots = slot_durations(mode, cfg, model.traffic);
    m.expected_slot_us = expected_slot_us(model, m.solution, mode);

    const double bits_dl = 8.0 * model.traffic.downlink_bytes;
    const double bits_ul = 8.0 * model.traffic.uplink_bytes();
    const double succ_rate = m.solution.p_tr * m.solution.p_s;   // successes per slot

    StateLedger ap_ledger, sta_ledger;
    double ap_share, sta_share, payload_bits;
    if (mode == DuplexMode::HalfDuplex) {
        ap_ledger = hd_state_ledger(NodeRole::HdAp, model, m.solution);
        sta_ledger = hd_state_ledger(NodeRole::HdSta, model, m.solution);
        // each node transmits 1/n of the successes
        payload_bits = (bits_dl + (n - 1) * bits_ul) / n;
        ap_share = succ_rate * bits_dl / n / m.expected_slot_us;
        sta_share = succ_rate * bits_ul / n / m.expected_slot_us;
    } else {
        ap_ledger = ibfd_ap_ledger(model, m.solution);
        sta_ledger = ibfd_sta_ledger(model, m.solution);
        // both directions in every success; the uplink is carried by one of
        // the n-1 stations, each equally likely
        payload_bits = bits_dl + bits_ul;
        ap_share = succ_rate * bits_dl / m.expected_slot_us;
        sta_share = succ_rate * bits_ul / (n - 1) / m.expected_slot_us;
    }

    m.network_throughput_mbps = succ_rate * payload_bits / m.expected_slot_us;

    auto fill = [&](NodeMetrics& nm, NodeRole role, const StateLedger& ledger, double share) {
        nm.role = role;
        nm.expected_energy_uj = expected_energy(ledger);
        nm.expected_slot_us = m.expected_slot_us;
        nm.power_w = nm.expected_energy_uj / m.expected_slot_us;
        nm.throughput_share_mbps = share;
        nm.network_throughput_mbps = m.network_throughput_mbps;
    };
    fill(m.ap, mode == DuplexMode::HalfDuplex ? NodeRole::HdAp : NodeRole::IbfdAp, ap_ledger,
         ap_share);
    fill(m.sta, mode == DuplexMode::HalfDuplex ? NodeRole::HdSta : NodeRole::IbfdSta, sta_ledger,
         sta_share);

    m.network_power_w = m.ap.power_w + (n - 1) * m.sta.power_w;
    m.node_mean_power_w = m.network_power_w / n;
    m.efficiency_mbpj = m.network_throughput_mbps / m.network_power_w;
    m.ap.network_power_w = m.sta.network_power_w = m.network_power_w;
    m.ap.efficiency_mbpj = m.sta.efficiency_mbpj = m.efficiency_mbpj;
    return m;
}

}  // namespace fdwlan
