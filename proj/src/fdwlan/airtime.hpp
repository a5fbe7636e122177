// SPDX-License-Identifier: Apache-2.0
#ifndef FDWLAN_AIRTIME_HPP
#define FDWLAN_AIRTIME_HPP

#include "fdwlan/model.hpp"

namespace fdwlan {

/// Durations of one renewal exchange, all in microseconds.
struct SlotDurations {
    double t_success_us;    // T_s: full DATA + SIFS + ACK + DIFS exchange
    double t_collision_us;  // T_c: same structure (nodes wait out the ACK timeout)
    double t_data_dl_us;    // downlink frame on air
    double t_data_ul_us;    // uplink frame on air
    double t_ack_us;
};

/// On-air time of a data frame: PHY header plus (MAC header + payload + FCS)
/// at the data rate. No OFDM symbol padding.
double data_duration_us(int payload_bytes, const WlanConfig& config);

/// ACK carried at the basic rate.
double ack_duration_us(const WlanConfig& config);

/// DATA + SIFS + ACK + DIFS for a given data airtime.
double exchange_duration_us(double t_data_us, const WlanConfig& config);

/// T_s/T_c for the mode. Half duplex: the canonical exchange at the
/// downlink payload (per-transmitter weighting happens in the analytics).
/// Full duplex: both directions overlap, and the downlink dominates since
/// the uplink load never exceeds it.
SlotDurations slot_durations(DuplexMode mode, const WlanConfig& config,
                             const TrafficPattern& traffic);

}  // namespace fdwlan

#endif
