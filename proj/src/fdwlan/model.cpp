// SPDX-License-Identifier: Apache-2.0
#include "fdwlan/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace fdwlan {

const char* to_string(DuplexMode mode) {
    return mode == DuplexMode::HalfDuplex ? "hd" : "ibfd";
}

DuplexMode duplex_mode_from_string(const std::string& s) {
    if (s == "hd") return DuplexMode::HalfDuplex;
    if (s == "ibfd") return DuplexMode::InBandFullDuplex;
    throw ModelError("unknown duplex mode '" + s + "' (expected hd or ibfd)");
}

int WlanConfig::backoff_stages() const {
    int m = 0;
    int w = cw_min;
    while (w < cw_max) {
        w *= 2;
        ++m;
    }
    return m;
}

int TrafficPattern::uplink_bytes() const {
    auto b = static_cast<int>(std::llround(symmetry * downlink_bytes));
    return std::max(b, 1);
}

double composite_power(const PowerProfile& profile,
                       std::span<const PowerComponent> components) {
    double sum = 0.0;
    for (PowerComponent c : components) {
        switch (c) {
            case PowerComponent::Tx: sum += profile.tx_w; break;
            case PowerComponent::Rx: sum += profile.rx_w; break;
            case PowerComponent::Idle: sum += profile.idle_w; break;
            case PowerComponent::Ctrl: sum += profile.ctrl_w; break;
            case PowerComponent::Sic: sum += profile.sic_w; break;
        }
    }
    return sum;
}

double composite_power(const PowerProfile& profile,
                       std::initializer_list<PowerComponent> components) {
    return composite_power(profile,
                           std::span<const PowerComponent>(components.begin(), components.size()));
}

namespace {

bool is_power_of_two(int v) {
    return v > 0 && (v & (v - 1)) == 0;
}

void check(bool ok, const char* message) {
    if (!ok) throw ModelError(message);
}

}  // namespace

Model validate(const WlanConfig& config, const PowerProfile& profile,
               const TrafficPattern& traffic) {
    check(config.slot_us > 0, "slot_us must be positive");
    check(config.sifs_us > 0, "sifs_us must be positive");
    check(config.difs_us > 0, "difs_us must be positive");
    check(config.phy_header_us > 0, "phy_header_us must be positive");
    check(config.data_rate_bps > 0, "data_rate_bps must be positive");
    check(config.basic_rate_bps > 0, "basic_rate_bps must be positive");
    check(config.mac_header_bytes >= 0, "mac_header_bytes must be non-negative");
    check(config.fcs_bytes >= 0, "fcs_bytes must be non-negative");
    check(config.ack_bytes >= 0, "ack_bytes must be non-negative");
    check(config.mpdu_max_bytes > 0, "mpdu_max_bytes must be positive");
    check(config.cw_min >= 2, "cw_min must be at least 2");
    check(config.cw_max >= config.cw_min, "cw_max must be >= cw_min");
    check(config.cw_max % config.cw_min == 0 && is_power_of_two(config.cw_max / config.cw_min),
          "CW ratio not a power of two");
    check(config.n_nodes >= 2, "n_nodes must be at least 2");

    check(profile.tx_w >= 0 && profile.rx_w >= 0 && profile.idle_w >= 0 &&
              profile.ctrl_w >= 0 && profile.sic_w >= 0,
          "negative power");

    check(traffic.symmetry > 0 && traffic.symmetry <= 1, "symmetry out of range (0, 1]");
    check(traffic.downlink_bytes == config.mpdu_max_bytes,
          "downlink_bytes must equal mpdu_max_bytes");

    return Model{config, profile, traffic};
}

namespace {

struct FieldBinding {
    std::function<void(Model&, const std::string&)> set;
    std::function<std::string(const Model&)> get;
};

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

double parse_double(const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw ModelError("malformed numeric value '" + v + "'");
        return d;
    } catch (const ModelError&) {
        throw;
    } catch (const std::exception&) {
        throw ModelError("malformed numeric value '" + v + "'");
    }
}

int parse_int(const std::string& v) {
    try {
        size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw ModelError("malformed integer value '" + v + "'");
        return static_cast<int>(d);
    } catch (const ModelError&) {
        throw;
    } catch (const std::exception&) {
        throw ModelError("malformed integer value '" + v + "'");
    }
}

const std::map<std::string, FieldBinding>& field_table() {
    static const std::map<std::string, FieldBinding> table = [] {
        std::map<std::string, FieldBinding> t;
        auto add_d = [&t](const char* key, double WlanConfig::*f) {
            t[key] = {[f](Model& m, const std::string& v) { m.config.*f = parse_double(v); },
                      [f](const Model& m) { return format_double(m.config.*f); }};
        };
        auto add_i = [&t](const char* key, int WlanConfig::*f) {
            t[key] = {[f](Model& m, const std::string& v) { m.config.*f = parse_int(v); },
                      [f](const Model& m) { return std::to_string(m.config.*f); }};
        };
        auto add_p = [&t](const char* key, double PowerProfile::*f) {
            t[key] = {[f](Model& m, const std::string& v) { m.profile.*f = parse_double(v); },
                      [f](const Model& m) { return format_double(m.profile.*f); }};
        };
        add_d("slot_us", &WlanConfig::slot_us);
        add_d("sifs_us", &WlanConfig::sifs_us);
        add_d("difs_us", &WlanConfig::difs_us);
        add_d("phy_header_us", &WlanConfig::phy_header_us);
        add_d("data_rate_bps", &WlanConfig::data_rate_bps);
        add_d("basic_rate_bps", &WlanConfig::basic_rate_bps);
        add_i("mac_header_bytes", &WlanConfig::mac_header_bytes);
        add_i("fcs_bytes", &WlanConfig::fcs_bytes);
        add_i("ack_bytes", &WlanConfig::ack_bytes);
        add_i("mpdu_max_bytes", &WlanConfig::mpdu_max_bytes);
        add_i("cw_min", &WlanConfig::cw_min);
        add_i("cw_max", &WlanConfig::cw_max);
        add_i("n_nodes", &WlanConfig::n_nodes);
        add_p("tx_w", &PowerProfile::tx_w);
        add_p("rx_w", &PowerProfile::rx_w);
        add_p("idle_w", &PowerProfile::idle_w);
        add_p("ctrl_w", &PowerProfile::ctrl_w);
        add_p("sic_w", &PowerProfile::sic_w);
        t["downlink_bytes"] = {
            [](Model& m, const std::string& v) { m.traffic.downlink_bytes = parse_int(v); },
            [](const Model& m) { return std::to_string(m.traffic.downlink_bytes); }};
        t["symmetry"] = {
            [](Model& m, const std::string& v) { m.traffic.symmetry = parse_double(v); },
            [](const Model& m) { return format_double(m.traffic.symmetry); }};
        return t;
    }();
    return table;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

void set_model_field(Model& model, const std::string& key, const std::string& value) {
    auto it = field_table().find(key);
    if (it == field_table().end()) throw ModelError("unknown key '" + key + "'");
    it->second.set(model, value);
}

std::string get_model_field(const Model& model, const std::string& key) {
    auto it = field_table().find(key);
    if (it == field_table().end()) throw ModelError("unknown key '" + key + "'");
    return it->second.get(model);
}

Model load_model(std::istream& in) {
    Model m;
    bool downlink_given = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ModelError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            set_model_field(m, key, value);
        } catch (const ModelError& e) {
            throw ModelError("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (key == "downlink_bytes") downlink_given = true;
    }
    if (!downlink_given) m.traffic.downlink_bytes = m.config.mpdu_max_bytes;
    return validate(m.config, m.profile, m.traffic);
}

Model load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open config file '" + path + "'");
    return load_model(in);
}

void write_model(const Model& model, std::ostream& out) {
    for (const auto& [key, binding] : field_table())
        out << key << " = " << binding.get(model) << "\n";
}

}  // namespace fdwlan
