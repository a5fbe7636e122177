// SPDX-License-Identifier: Apache-2.0
#ifndef FDWLAN_MODEL_HPP
#define FDWLAN_MODEL_HPP

#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

namespace fdwlan {

/// Raised by validate() and the config-file loader; what() names the
/// violated invariant or the offending line.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DuplexMode { HalfDuplex, InBandFullDuplex };

const char* to_string(DuplexMode mode);
DuplexMode duplex_mode_from_string(const std::string& s);

/// PHY/MAC timing and contention parameters. Defaults are the 802.11ac
/// set used throughout: 80 MHz, 2x2 MIMO operating point (234 Mb/s data,
/// 24 Mb/s basic rate).
struct WlanConfig {
    double slot_us = 9.0;
    double sifs_us = 16.0;
    double difs_us = 34.0;
    double phy_header_us = 44.0;
    double data_rate_bps = 234e6;
    double basic_rate_bps = 24e6;
    int mac_header_bytes = 36;
    int fcs_bytes = 4;
    int ack_bytes = 14;
    int mpdu_max_bytes = 7991;
    int cw_min = 16;
    int cw_max = 1024;
    int n_nodes = 2;   // AP + (n-1) stations

    /// Backoff stage count m = log2(cw_max / cw_min). Only meaningful for
    /// a validated config (the ratio is an exact power of two).
    int backoff_stages() const;
};

/// Per-component power draws in watts.
struct PowerProfile {
    double tx_w = 2.6883;
    double rx_w = 1.5900;
    double idle_w = 0.9484;
    double ctrl_w = 0.3000;
    double sic_w = 0.0650;
};

/// Saturated traffic description: the AP always sends downlink_bytes, each
/// station sends symmetry * downlink_bytes uplink.
struct TrafficPattern {
    int downlink_bytes = 7991;
    double symmetry = 1.0;   // uplink/downlink load ratio, in (0, 1]

    /// Uplink payload, rounded to a whole byte with a 1-byte floor.
    int uplink_bytes() const;
};

enum class PowerComponent { Tx, Rx, Idle, Ctrl, Sic };

/// Additive composition of the selected component draws.
double composite_power(const PowerProfile& profile,
                       std::span<const PowerComponent> components);
double composite_power(const PowerProfile& profile,
                       std::initializer_list<PowerComponent> components);

/// A validated (config, profile, traffic) triple. Immutable by convention
/// once constructed; safe to share across threads.
struct Model {
    WlanConfig config;
    PowerProfile profile;
    TrafficPattern traffic;
};

/// Checks every invariant and returns the triple unchanged. Throws
/// ModelError naming the first violated invariant.
Model validate(const WlanConfig& config, const PowerProfile& profile,
               const TrafficPattern& traffic);

/// Plain-text config format: one `key = value` per line, keys named after
/// the struct fields above. Blank lines and `#` comments are skipped;
/// unknown keys are an error. If downlink_bytes is not given it follows
/// mpdu_max_bytes. The result is validated.
Model load_model(std::istream& in);
Model load_model_file(const std::string& path);
void write_model(const Model& model, std::ostream& out);

/// Single-field access by config-file key. Unknown keys and malformed
/// values throw; invariants are not checked here (that is validate()'s
/// job, so fields can be set in any order).
void set_model_field(Model& model, const std::string& key, const std::string& value);
std::string get_model_field(const Model& model, const std::string& key);

}  // namespace fdwlan

#endif
