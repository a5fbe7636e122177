// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>
#include <sstream>

#include "fdwlan/model.hpp"

using namespace fdwlan;

TEST_CASE("defaults validate and match the 802.11ac operating point") {
    WlanConfig c;
    PowerProfile p;
    TrafficPattern t;
    Model m = validate(c, p, t);
    CHECK(m.config.slot_us == 9.0);
    CHECK(m.config.sifs_us == 16.0);
    CHECK(m.config.difs_us == 34.0);
    CHECK(m.config.phy_header_us == 44.0);
    CHECK(m.config.data_rate_bps == 234e6);
    CHECK(m.config.basic_rate_bps == 24e6);
    CHECK(m.config.mac_header_bytes == 36);
    CHECK(m.config.fcs_bytes == 4);
    CHECK(m.config.ack_bytes == 14);
    CHECK(m.config.mpdu_max_bytes == 7991);
    CHECK(m.config.cw_min == 16);
    CHECK(m.config.cw_max == 1024);
    CHECK(m.config.backoff_stages() == 6);
    CHECK(m.profile.tx_w == 2.6883);
    CHECK(m.profile.rx_w == 1.5900);
    CHECK(m.profile.idle_w == 0.9484);
    CHECK(m.profile.ctrl_w == 0.3000);
    CHECK(m.profile.sic_w == 0.0650);
    CHECK(m.profile.tx_w >= m.profile.rx_w);
    CHECK(m.profile.rx_w >= m.profile.idle_w);
}

TEST_CASE("validation rejects each violated invariant distinctly") {
    WlanConfig c;
    PowerProfile p;
    TrafficPattern t;

    SUBCASE("CW ratio not a power of two") {
        c.cw_min = 16;
        c.cw_max = 48;
        CHECK_THROWS_WITH_AS(validate(c, p, t), "CW ratio not a power of two", ModelError);
    }
    SUBCASE("n below two") {
        c.n_nodes = 1;
        CHECK_THROWS_WITH_AS(validate(c, p, t), "n_nodes must be at least 2", ModelError);
    }
    SUBCASE("symmetry boundary exclusion") {
        t.symmetry = 0.0;
        CHECK_THROWS_WITH_AS(validate(c, p, t), "symmetry out of range (0, 1]", ModelError);
        t.symmetry = 1.0000001;
        CHECK_THROWS_AS(validate(c, p, t), ModelError);
    }
    SUBCASE("negative power") {
        p.rx_w = -0.1;
        CHECK_THROWS_WITH_AS(validate(c, p, t), "negative power", ModelError);
    }
    SUBCASE("downlink load tied to the MPDU limit") {
        t.downlink_bytes = 1500;
        CHECK_THROWS_AS(validate(c, p, t), ModelError);
    }
}

TEST_CASE("validate is idempotent") {
    WlanConfig c;
    c.n_nodes = 7;
    PowerProfile p;
    TrafficPattern t;
    t.symmetry = 0.4;
    Model once = validate(c, p, t);
    Model twice = validate(once.config, once.profile, once.traffic);
    CHECK(twice.config.n_nodes == once.config.n_nodes);
    CHECK(twice.traffic.symmetry == once.traffic.symmetry);
    CHECK(twice.profile.tx_w == once.profile.tx_w);
}

TEST_CASE("composite power is an arithmetic sum") {
    PowerProfile p;
    CHECK(composite_power(p, {PowerComponent::Tx, PowerComponent::Ctrl}) ==
          doctest::Approx(2.9883).epsilon(1e-12));
    CHECK(composite_power(p, {PowerComponent::Rx, PowerComponent::Sic}) ==
          doctest::Approx(1.6550).epsilon(1e-12));
    CHECK(composite_power(p, {PowerComponent::Idle}) == doctest::Approx(0.9484).epsilon(1e-12));
}

TEST_CASE("composite power is monotone under component addition") {
    PowerProfile p;
    const PowerComponent all[] = {PowerComponent::Tx, PowerComponent::Rx, PowerComponent::Idle,
                                  PowerComponent::Ctrl, PowerComponent::Sic};
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<PowerComponent> set;
        for (PowerComponent c : all)
            if (rng() & 1) set.push_back(c);
        if (set.empty()) set.push_back(all[rng() % 5]);
        double before = composite_power(p, std::span<const PowerComponent>(set));
        set.push_back(all[rng() % 5]);
        double after = composite_power(p, std::span<const PowerComponent>(set));
        CHECK(after >= before);
    }
}

TEST_CASE("uplink payload rounds with a one-byte floor") {
    TrafficPattern t;
    t.symmetry = 0.1;
    CHECK(t.uplink_bytes() == 799);   // 799.1 rounds down
    t.symmetry = 0.9;
    CHECK(t.uplink_bytes() == 7192);  // 7191.9 rounds up
    t.symmetry = 1.0;
    CHECK(t.uplink_bytes() == 7991);
    t.downlink_bytes = 7991;
    t.symmetry = 1e-9;
    CHECK(t.uplink_bytes() == 1);     // floor at one byte
}

TEST_CASE("config file round trip") {
    WlanConfig c;
    c.n_nodes = 12;
    c.cw_min = 32;
    c.cw_max = 256;
    PowerProfile p;
    p.sic_w = 0.1;
    TrafficPattern t;
    t.symmetry = 0.35;
    Model m = validate(c, p, t);

    std::stringstream ss;
    write_model(m, ss);
    Model back = load_model(ss);
    CHECK(back.config.n_nodes == 12);
    CHECK(back.config.cw_min == 32);
    CHECK(back.config.cw_max == 256);
    CHECK(back.profile.sic_w == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(back.traffic.symmetry == doctest::Approx(0.35).epsilon(1e-12));
}

TEST_CASE("config file rejects unknown keys and malformed lines") {
    {
        std::istringstream in("n_nodes = 4\nbogus_key = 1\n");
        CHECK_THROWS_WITH_AS(load_model(in), "line 2: unknown key 'bogus_key'", ModelError);
    }
    {
        std::istringstream in("n_nodes 4\n");
        CHECK_THROWS_AS(load_model(in), ModelError);
    }
    {
        std::istringstream in("n_nodes = four\n");
        CHECK_THROWS_AS(load_model(in), ModelError);
    }
}

TEST_CASE("config file: comments, blanks, and downlink tracking mpdu_max") {
    std::istringstream in(
        "# comment line\n"
        "\n"
        "mpdu_max_bytes = 4000   # trailing comment\n"
        "n_nodes = 3\n");
    Model m = load_model(in);
    CHECK(m.config.mpdu_max_bytes == 4000);
    CHECK(m.traffic.downlink_bytes == 4000);   // follows when not given
}
