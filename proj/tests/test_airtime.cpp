// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "fdwlan/airtime.hpp"

using namespace fdwlan;

namespace {
const WlanConfig kDefaults{};
}

TEST_CASE("data duration at the defaults") {
    // 44 + 8*8031/234 and 44 + 8*839/234, frozen from hand arithmetic
    CHECK(data_duration_us(7991, kDefaults) == doctest::Approx(318.564102564).epsilon(1e-9));
    CHECK(data_duration_us(799, kDefaults) == doctest::Approx(72.6837606838).epsilon(1e-9));

    WlanConfig bare = kDefaults;
    bare.mac_header_bytes = 0;
    bare.fcs_bytes = 0;
    CHECK(data_duration_us(0, bare) == doctest::Approx(44.0).epsilon(1e-12));
}

TEST_CASE("ack duration at the basic rate") {
    CHECK(ack_duration_us(kDefaults) == doctest::Approx(48.6666666667).epsilon(1e-9));

    WlanConfig c = kDefaults;
    c.ack_bytes = 0;
    CHECK(ack_duration_us(c) == doctest::Approx(44.0).epsilon(1e-12));

    c = kDefaults;
    c.basic_rate_bps *= 2;
    CHECK(ack_duration_us(c) == doctest::Approx(46.3333333333).epsilon(1e-9));
}

TEST_CASE("data duration is affine and strictly increasing in the payload") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int a = static_cast<int>(rng() % 8000);
        int b = a + 1 + static_cast<int>(rng() % 1000);
        double da = data_duration_us(a, kDefaults);
        double db = data_duration_us(b, kDefaults);
        CHECK(db > da);
        // affine: the increment is proportional to the byte difference
        double slope = (db - da) / (b - a);
        CHECK(slope == doctest::Approx(8.0 / 234.0).epsilon(1e-9));
    }
}

TEST_CASE("exchange durations") {
    TrafficPattern t;  // rho = 1
    SlotDurations hd = slot_durations(DuplexMode::HalfDuplex, kDefaults, t);
    CHECK(hd.t_success_us == doctest::Approx(417.230769231).epsilon(1e-9));
    CHECK(hd.t_collision_us == hd.t_success_us);
    CHECK(hd.t_success_us >= hd.t_data_dl_us);

    SlotDurations fd = slot_durations(DuplexMode::InBandFullDuplex, kDefaults, t);
    CHECK(fd.t_success_us == doctest::Approx(417.230769231).epsilon(1e-9));

    t.symmetry = 0.1;   // downlink still dominates the overlap
    fd = slot_durations(DuplexMode::InBandFullDuplex, kDefaults, t);
    CHECK(fd.t_success_us == doctest::Approx(417.230769231).epsilon(1e-9));
}

TEST_CASE("full-duplex exchange equals the half-duplex downlink exchange for any rho") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.001, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        TrafficPattern t;
        t.symmetry = u(rng);
        SlotDurations hd = slot_durations(DuplexMode::HalfDuplex, kDefaults, t);
        SlotDurations fd = slot_durations(DuplexMode::InBandFullDuplex, kDefaults, t);
        CHECK(fd.t_success_us == hd.t_success_us);
        CHECK(fd.t_data_ul_us <= fd.t_data_dl_us);
        CHECK(fd.t_data_ul_us > 0);
    }
}
