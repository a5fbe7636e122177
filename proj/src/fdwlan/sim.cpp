// SPDX-License-Identifier: Apache-2.0
#include "fdwlan/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fdwlan/airtime.hpp"

namespace fdwlan {

namespace {

// HD state indices
enum { kIdle = 0, kSTx, kSRx, kSOv, kCTx, kCOv, kHdStates };
// IBFD AP state indices
enum { kApIdle = 0, kApS, kApC, kApStates };
// IBFD STA state indices
enum { kStaIdle = 0, kStaS, kStaSOv, kStaC, kStaCOv, kStaStates };

const char* const kHdLabels[kHdStates] = {"d",      "S-TX", "S-RX",
                                          "S-R\xcc\x84X", "C-TX", "C-R\xcc\x84X"};
const char* const kApLabels[kApStates] = {"AP-d", "AP-S-TXRX", "AP-C-TXRX"};
const char* const kStaLabels[kStaStates] = {"STA-d", "STA-S-TXRX", "STA-S-R\xcc\x84X",
                                            "STA-C-TXRX", "STA-C-R\xcc\x84X"};

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    // modulo draw: bias is bound/2^64, immaterial for contention windows
    std::uint32_t below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(gen() % bound);
    }
};

struct Tally {
    std::uint64_t count = 0;
    double slot_us = 0.0;
    double tx = 0.0, rx = 0.0, idle = 0.0, ctrl = 0.0, sic = 0.0;
};

struct NodeState {
    std::int64_t bc = 0;   // backoff counter
    int stage = 0;
    std::vector<Tally> tally;
    std::uint64_t tx_bits = 0, rx_bits = 0;
    std::uint64_t attempts = 0, collisions = 0, successes = 0;
};

struct Ctx {
    const Model& model;
    SlotDurations d;
    double ds;    // DIFS + SIFS
    double dsa;   // DIFS + SIFS + ACK
    std::uint64_t bits_dl, bits_ul;
    Rng rng;
    std::vector<NodeState> nodes;
    std::uint64_t slot = 0, total = 0, warmup = 0;
    std::uint64_t busy_slots = 0, success_slots = 0;
    int cw_min, cw_max, stages;

    Ctx(const Model& m, DuplexMode mode, const SimConfig& sim)
        : model(m),
          d(slot_durations(mode, m.config, m.traffic)),
          ds(m.config.difs_us + m.config.sifs_us),
          dsa(ds + d.t_ack_us),
          bits_dl(8ull * m.traffic.downlink_bytes),
          bits_ul(8ull * m.traffic.uplink_bytes()),
          rng(sim.seed),
          cw_min(m.config.cw_min),
          cw_max(m.config.cw_max),
          stages(m.config.backoff_stages()) {}

    int cw(int stage) const { return std::min(cw_min << stage, cw_max); }

    void reset_stats() {
        for (auto& n : nodes) {
            for (auto& t : n.tally) t = Tally{};
            n.tx_bits = n.rx_bits = 0;
            n.attempts = n.collisions = n.successes = 0;
        }
        busy_slots = success_slots = 0;
    }

    bool in_stats() const { return slot >= warmup; }

    // draws the initial backoff for every node, in node order
    void init_counters(std::size_t count, int states_per_node) {
        nodes.resize(count);
        for (auto& n : nodes) {
            n.bc = rng.below(static_cast<std::uint32_t>(cw_min));
            n.tally.resize(states_per_node);
        }
    }

    void redraw(NodeState& n, bool success) {
        n.stage = success ? 0 : std::min(n.stage + 1, stages);
        n.bc = rng.below(static_cast<std::uint32_t>(cw(n.stage)));
    }

    /// Advances all-idle slots in one step: every counter is positive, so
    /// the next min(bc) slots are idle for everyone.
    /// Returns false when no idle slot fits before the next boundary.
    bool advance_idle() {
        std::int64_t mn = nodes[0].bc;
        for (const auto& n : nodes) mn = std::min(mn, n.bc);
        if (mn <= 0) return false;
        std::uint64_t boundary = slot < warmup ? warmup : total;
        std::uint64_t k = std::min<std::uint64_t>(static_cast<std::uint64_t>(mn),
                                                  boundary - slot);
        if (k == 0) return false;
        double span = k * model.config.slot_us;
        if (in_stats()) {
            for (auto& n : nodes) {
                auto& t = n.tally[0];   // idle state is index 0 in every scheme
                t.count += k;
                t.slot_us += span;
                t.idle += span;
            }
        }
        for (auto& n : nodes) n.bc -= k;
        slot += k;
        return true;
    }
};

void run_hd(Ctx& c) {
    const int n = c.model.config.n_nodes;
    const double t_ack = c.d.t_ack_us;
    std::vector<double> tx_dur(n, c.d.t_data_ul_us);
    tx_dur[0] = c.d.t_data_dl_us;
    std::vector<std::uint64_t> tx_bits(n, c.bits_ul);
    tx_bits[0] = c.bits_dl;
    std::vector<int> txs;

    while (c.slot < c.total) {
        if (c.slot == c.warmup) c.reset_stats();
        if (c.advance_idle()) continue;

        txs.clear();
        for (int i = 0; i < n; ++i)
            if (c.nodes[i].bc == 0) txs.push_back(i);
        const bool stats = c.in_stats();

        if (txs.size() == 1) {
            int x = txs[0];
            int receiver = x == 0 ? 1 + static_cast<int>(c.rng.below(n - 1)) : 0;
            double t_data = tx_dur[x];
            double span = t_data + c.ds + t_ack;
            if (stats) {
                ++c.busy_slots;
                ++c.success_slots;
                for (int i = 0; i < n; ++i) {
                    auto& node = c.nodes[i];
                    int s = i == x ? kSTx : (i == receiver ? kSRx : kSOv);
                    auto& t = node.tally[s];
                    ++t.count;
                    t.slot_us += span;
                    t.idle += c.ds;
                    if (s == kSTx) {
                        t.tx += t_data;
                        t.ctrl += t_data + t_ack;
                        t.rx += t_ack;
                    } else if (s == kSRx) {
                        t.rx += t_data;
                        t.ctrl += t_data + t_ack;
                        t.tx += t_ack;
                    } else {
                        t.rx += t_data + t_ack;
                        t.ctrl += t_data + t_ack;
                    }
                }
                c.nodes[x].tx_bits += tx_bits[x];
                c.nodes[receiver].rx_bits += tx_bits[x];
                ++c.nodes[x].attempts;
                ++c.nodes[x].successes;
            }
            c.redraw(c.nodes[x], true);
        } else {
            double t_coll = 0.0;
            for (int i : txs) t_coll = std::max(t_coll, tx_dur[i]);
            double span = t_coll + c.dsa;
            if (stats) {
                ++c.busy_slots;
                std::size_t next = 0;
                for (int i = 0; i < n; ++i) {
                    auto& node = c.nodes[i];
                    bool transmitting = next < txs.size() && txs[next] == i;
                    if (transmitting) ++next;
                    auto& t = node.tally[transmitting ? kCTx : kCOv];
                    ++t.count;
                    t.slot_us += span;
                    t.idle += c.dsa;
                    if (transmitting) {
                        t.tx += tx_dur[i];
                        t.ctrl += tx_dur[i];
                        ++node.attempts;
                        ++node.collisions;
                    } else {
                        t.rx += t_coll;
                        t.ctrl += t_coll;
                    }
                }
            }
            for (int i : txs) c.redraw(c.nodes[i], false);
        }
        // the contention clock: every non-transmitting counter ticks once
        // per renewal slot, busy or idle
        std::size_t next = 0;
        for (int i = 0; i < n; ++i) {
            if (next < txs.size() && txs[next] == i) {
                ++next;
                continue;
            }
            --c.nodes[i].bc;
        }
        ++c.slot;
    }
}

void run_ibfd(Ctx& c) {
    const int n = c.model.config.n_nodes;
    const int n_sta = n - 1;
    const double t_ack = c.d.t_ack_us;
    const double t_dl = c.d.t_data_dl_us;
    const double t_ul = c.d.t_data_ul_us;
    const double span = t_dl + c.ds + t_ack;   // every busy slot, success or not
    std::vector<int> sta_tx;

    auto tally_ap_success = [&](NodeState& ap) {
        auto& t = ap.tally[kApS];
        ++t.count;
        t.slot_us += span;
        t.tx += t_dl + t_ack;
        t.ctrl += t_dl + t_ack;
        t.rx += t_ul + t_ack;
        t.sic += t_ul + t_ack;
        t.idle += c.ds;
        ap.tx_bits += c.bits_dl;
        ap.rx_bits += c.bits_ul;
    };
    auto tally_sta_success = [&](NodeState& sta) {
        auto& t = sta.tally[kStaS];
        ++t.count;
        t.slot_us += span;
        t.tx += t_ul + t_ack;
        t.sic += t_ul + t_ack;
        t.rx += t_dl + t_ack;
        t.ctrl += t_dl + t_ack;
        t.idle += c.ds;
        sta.tx_bits += c.bits_ul;
        sta.rx_bits += c.bits_dl;
    };
    auto tally_sta_overhear = [&](NodeState& sta) {
        auto& t = sta.tally[kStaSOv];
        ++t.count;
        t.slot_us += span;
        t.rx += t_dl + t_ack;
        t.ctrl += t_dl + t_ack;
        t.idle += c.ds;
    };

    while (c.slot < c.total) {
        if (c.slot == c.warmup) c.reset_stats();
        if (c.advance_idle()) continue;

        NodeState& ap = c.nodes[0];
        sta_tx.clear();
        for (int i = 1; i < n; ++i)
            if (c.nodes[i].bc == 0) sta_tx.push_back(i);
        const bool ap_tx = ap.bc == 0;
        const bool stats = c.in_stats();

        if (sta_tx.size() <= 1) {
            // full-duplex success: a lone station is answered by the AP
            // (redirect), or the lone AP picks its peer
            int peer = sta_tx.empty() ? 1 + static_cast<int>(c.rng.below(n_sta)) : sta_tx[0];
            if (stats) {
                ++c.busy_slots;
                ++c.success_slots;
                tally_ap_success(ap);
                for (int i = 1; i < n; ++i) {
                    if (i == peer)
                        tally_sta_success(c.nodes[i]);
                    else
                        tally_sta_overhear(c.nodes[i]);
                }
                if (ap_tx) {
                    ++ap.attempts;
                    ++ap.successes;
                }
                if (!sta_tx.empty()) {
                    ++c.nodes[peer].attempts;
                    ++c.nodes[peer].successes;
                }
            }
            if (!sta_tx.empty()) c.redraw(c.nodes[peer], true);
            if (ap_tx) c.redraw(ap, true);
        } else {
            // two or more stations: collision; the AP transmits its
            // downlink into the slot and receives garbage either way
            if (stats) {
                ++c.busy_slots;
                auto& t = ap.tally[kApC];
                ++t.count;
                t.slot_us += span;
                t.tx += t_dl;
                t.ctrl += t_dl;
                t.rx += t_ul;
                t.sic += t_ul;
                t.idle += c.dsa;
                if (ap_tx) {
                    ++ap.attempts;
                    ++ap.collisions;
                }
                std::size_t next = 0;
                for (int i = 1; i < n; ++i) {
                    auto& node = c.nodes[i];
                    bool transmitting = next < sta_tx.size() && sta_tx[next] == i;
                    if (transmitting) ++next;
                    auto& st = node.tally[transmitting ? kStaC : kStaCOv];
                    ++st.count;
                    st.slot_us += span;
                    st.idle += c.dsa;
                    st.rx += t_dl;
                    st.ctrl += t_dl;
                    if (transmitting) {
                        st.tx += t_ul;
                        st.sic += t_ul;
                        ++node.attempts;
                        ++node.collisions;
                    }
                }
            }
            for (int i : sta_tx) c.redraw(c.nodes[i], false);
            if (ap_tx) c.redraw(ap, false);
        }
        // per-renewal-slot tick for everyone whose counter did not expire
        if (!ap_tx) --ap.bc;
        std::size_t next = 0;
        for (int i = 1; i < n; ++i) {
            if (next < sta_tx.size() && sta_tx[next] == i) {
                ++next;
                continue;
            }
            --c.nodes[i].bc;
        }
        ++c.slot;
    }
}

SimReport build_report(Ctx& c, DuplexMode mode, const SimConfig& sim) {
    const auto& prof = c.model.profile;
    const int n = c.model.config.n_nodes;
    const bool hd = mode == DuplexMode::HalfDuplex;

    SimReport r;
    r.mode = mode;
    r.seed = sim.seed;
    r.slots = sim.horizon_slots - sim.warmup_slots;
    r.busy_slots = c.busy_slots;
    r.success_slots = c.success_slots;
    r.nodes.resize(n);

    std::uint64_t total_tx_bits = 0;
    for (int i = 0; i < n; ++i) {
        auto& src = c.nodes[i];
        auto& out = r.nodes[i];
        out.role = hd ? (i == 0 ? NodeRole::HdAp : NodeRole::HdSta)
                      : (i == 0 ? NodeRole::IbfdAp : NodeRole::IbfdSta);
        const char* const* labels = hd ? kHdLabels : (i == 0 ? kApLabels : kStaLabels);
        out.states.resize(src.tally.size());
        for (std::size_t s = 0; s < src.tally.size(); ++s) {
            const Tally& t = src.tally[s];
            StateTally& st = out.states[s];
            st.label = labels[s];
            st.count = t.count;
            st.slot_us = t.slot_us;
            st.tx_us = t.tx;
            st.rx_us = t.rx;
            st.idle_us = t.idle;
            st.ctrl_us = t.ctrl;
            st.sic_us = t.sic;
            st.energy_uj = prof.tx_w * t.tx + prof.rx_w * t.rx + prof.idle_w * t.idle +
                           prof.ctrl_w * t.ctrl + prof.sic_w * t.sic;
            out.elapsed_us += st.slot_us;
            out.energy_uj += st.energy_uj;
        }
        out.tx_bits = src.tx_bits;
        out.rx_bits = src.rx_bits;
        out.attempts = src.attempts;
        out.collisions = src.collisions;
        out.successes = src.successes;
        total_tx_bits += src.tx_bits;
    }

    r.elapsed_us = r.nodes[0].elapsed_us;
    double net_power = 0.0;
    for (auto& node : r.nodes) {
        node.power_w = node.energy_uj / r.elapsed_us;
        node.empirical_tau = static_cast<double>(node.attempts) / r.slots;
        node.empirical_p =
            node.attempts > 0 ? static_cast<double>(node.collisions) / node.attempts : 0.0;
        net_power += node.power_w;
    }
    r.aggregate_throughput_mbps = total_tx_bits / r.elapsed_us;
    r.network_power_w = net_power;
    r.node_mean_power_w = net_power / n;
    double sta_power = 0.0;
    for (int i = 1; i < n; ++i) sta_power += r.nodes[i].power_w;
    r.sta_mean_power_w = sta_power / (n - 1);
    r.efficiency_mbpj = r.aggregate_throughput_mbps / r.network_power_w;
    r.empirical_p_tr = static_cast<double>(r.busy_slots) / r.slots;
    r.empirical_p_s =
        r.busy_slots > 0 ? static_cast<double>(r.success_slots) / r.busy_slots : 0.0;
    return r;
}

}  // namespace

SimReport simulate(const Model& model, DuplexMode mode, const SimConfig& sim) {
    if (sim.horizon_slots < 10'000)
        throw ModelError("horizon_slots must be at least 10^4");
    if (sim.warmup_slots >= sim.horizon_slots)
        throw ModelError("warmup_slots must be smaller than horizon_slots");

    Ctx c(model, mode, sim);
    c.total = sim.horizon_slots;
    c.warmup = sim.warmup_slots;
    const bool hd = mode == DuplexMode::HalfDuplex;
    c.init_counters(model.config.n_nodes,
                    hd ? static_cast<int>(kHdStates) : static_cast<int>(kStaStates));
    if (!hd) c.nodes[0].tally.resize(kApStates);
    if (c.warmup == 0) c.reset_stats();

    if (hd)
        run_hd(c);
    else
        run_ibfd(c);
    return build_report(c, mode, sim);
}

namespace {

ReplicateStat stat_of(const std::vector<double>& xs) {
    ReplicateStat s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / xs.size();
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = xs.size() > 1 ? std::sqrt(ss / (xs.size() - 1)) : 0.0;
    return s;
}

}  // namespace

ReplicateReport replicate(const Model& model, DuplexMode mode, const SimConfig& base,
                          std::span<const std::uint64_t> seeds) {
    if (seeds.size() < 2) throw ModelError("replicate requires at least 2 seeds");
    std::vector<double> ap, sta, node, thr, net, eff;
    for (std::uint64_t seed : seeds) {
        SimConfig cfg = base;
        cfg.seed = seed;
        SimReport r = simulate(model, mode, cfg);
        ap.push_back(r.nodes[0].power_w);
        sta.push_back(r.sta_mean_power_w);
        node.push_back(r.node_mean_power_w);
        thr.push_back(r.aggregate_throughput_mbps);
        net.push_back(r.network_power_w);
        eff.push_back(r.efficiency_mbpj);
    }
    ReplicateReport rep;
    rep.runs = seeds.size();
    rep.ap_power_w = stat_of(ap);
    rep.sta_mean_power_w = stat_of(sta);
    rep.node_mean_power_w = stat_of(node);
    rep.aggregate_throughput_mbps = stat_of(thr);
    rep.network_power_w = stat_of(net);
    rep.efficiency_mbpj = stat_of(eff);
    return rep;
}

}  // namespace fdwlan
