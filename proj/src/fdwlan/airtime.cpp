// SPDX-License-Identifier: Apache-2.0
#include "fdwlan/airtime.hpp"

namespace fdwlan {

double data_duration_us(int payload_bytes, const WlanConfig& config) {
    double bits = 8.0 * (config.mac_header_bytes + payload_bytes + config.fcs_bytes);
    return config.phy_header_us + bits / (config.data_rate_bps * 1e-6);
}

double ack_duration_us(const WlanConfig& config) {
    return config.phy_header_us + 8.0 * config.ack_bytes / (config.basic_rate_bps * 1e-6);
}

double exchange_duration_us(double t_data_us, const WlanConfig& config) {
    return t_data_us + config.sifs_us + ack_duration_us(config) + config.difs_us;
}

SlotDurations slot_durations(DuplexMode mode, const WlanConfig& config,
                             const TrafficPattern& traffic) {
    SlotDurations d;
    d.t_data_dl_us = data_duration_us(traffic.downlink_bytes, config);
    d.t_data_ul_us = data_duration_us(traffic.uplink_bytes(), config);
    d.t_ack_us = ack_duration_us(config);
    // HD: canonical exchange at the (maximal) downlink payload. IBFD: the
    // directions overlap, max(t_dl, t_ul) = t_dl. Same value either way.
    (void)mode;
    d.t_success_us = exchange_duration_us(d.t_data_dl_us, config);
    d.t_collision_us = d.t_success_us;
    return d;
}

}  // namespace fdwlan
