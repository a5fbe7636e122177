// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sstream>

#include "fdwlan/sweep.hpp"

using namespace fdwlan;

namespace {

Model base_model() { return validate(WlanConfig{}, PowerProfile{}, TrafficPattern{}); }

SweepSpec analytic_spec() {
    SweepSpec s;
    s.n_values = {2};
    s.rho_values = {1.0};
    s.modes = {DuplexMode::InBandFullDuplex};
    s.analytic = true;
    s.sim = false;
    return s;
}

}  // namespace

TEST_CASE("single full-duplex point yields an AP row and a STA row with equal power") {
    auto rows = run_sweep(base_model(), analytic_spec());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].role == "AP");
    CHECK(rows[1].role == "STA");
    CHECK(rows[0].power_w == doctest::Approx(rows[1].power_w).epsilon(1e-12));
    CHECK(rows[0].mode == "ibfd");
    CHECK(rows[0].source == "analytic");
    CHECK(!rows[0].seed.has_value());
}

TEST_CASE("half-duplex points emit a single network-mean node row") {
    SweepSpec s = analytic_spec();
    s.modes = {DuplexMode::HalfDuplex};
    s.n_values = {2, 5};
    auto rows = run_sweep(base_model(), s);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].role == "node");
    CHECK(rows[0].n == 2);
    CHECK(rows[1].n == 5);
}

TEST_CASE("spec validation fails before any computation") {
    SweepSpec s = analytic_spec();
    s.n_values = {};
    CHECK_THROWS_AS(run_sweep(base_model(), s), ModelError);

    s = analytic_spec();
    s.rho_values = {0.0};
    CHECK_THROWS_AS(run_sweep(base_model(), s), ModelError);

    s = analytic_spec();
    s.n_values = {1};
    CHECK_THROWS_AS(run_sweep(base_model(), s), ModelError);

    s = analytic_spec();
    s.sim = true;
    s.seeds = {};
    CHECK_THROWS_AS(run_sweep(base_model(), s), ModelError);
}

TEST_CASE("csv: header, serialization, and fixed-point round trip") {
    SweepSpec s = analytic_spec();
    s.n_values = {2, 10};
    s.rho_values = {0.1, 1.0};
    s.modes = {DuplexMode::HalfDuplex, DuplexMode::InBandFullDuplex};
    auto rows = run_sweep(base_model(), s);

    std::ostringstream out;
    write_csv(rows, out);
    std::string text = out.str();
    CHECK(text.substr(0, text.find('\n')) ==
          "mode,source,n,rho,role,power_w,throughput_mbps,efficiency_mbpj,seed");

    std::istringstream in(text);
    auto parsed = read_csv(in);
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parsed[i].mode == rows[i].mode);
        CHECK(parsed[i].role == rows[i].role);
        CHECK(parsed[i].n == rows[i].n);
        CHECK(parsed[i].rho == rows[i].rho);   // %.6g is exact for the grid values
    }
    // serialize(parse(serialize(x))) is a fixed point
    std::ostringstream out2;
    write_csv(parsed, out2);
    CHECK(out2.str() == text);
}

TEST_CASE("csv: malformed input is rejected") {
    {
        std::istringstream in("wrong,header\n");
        CHECK_THROWS_AS(read_csv(in), ModelError);
    }
    {
        std::istringstream in(
            "mode,source,n,rho,role,power_w,throughput_mbps,efficiency_mbpj,seed\n"
            "hd,analytic,2\n");
        CHECK_THROWS_AS(read_csv(in), ModelError);
    }
}

TEST_CASE("sweep is deterministic across reruns, including simulation rows") {
    SweepSpec s;
    s.n_values = {2, 3};
    s.rho_values = {0.5};
    s.modes = {DuplexMode::HalfDuplex, DuplexMode::InBandFullDuplex};
    s.analytic = true;
    s.sim = true;
    s.seeds = {11, 22};
    s.slots = 20'000;
    s.warmup = 1'000;

    auto rows_a = run_sweep(base_model(), s);
    auto rows_b = run_sweep(base_model(), s);
    std::ostringstream a, b;
    write_csv(rows_a, a);
    write_csv(rows_b, b);
    CHECK(a.str() == b.str());
    // per-seed rows carry their seed; analytic rows do not
    bool saw_seed = false, saw_analytic = false;
    for (const auto& r : rows_a) {
        if (r.source == "sim") {
            CHECK(r.seed.has_value());
            saw_seed = true;
        } else {
            CHECK(!r.seed.has_value());
            saw_analytic = true;
        }
    }
    CHECK(saw_seed);
    CHECK(saw_analytic);
}

TEST_CASE("compare: self-comparison is an exact PASS") {
    SweepSpec s = analytic_spec();
    s.n_values = {2, 5, 10};
    auto rows = run_sweep(base_model(), s);
    CompareReport rep = compare(rows, rows, 0.0);
    CHECK(rep.pass);
    for (const auto& e : rep.entries) {
        CHECK(e.power_err == 0.0);
        CHECK(e.efficiency_err == 0.0);
        CHECK(e.throughput_err == 0.0);
    }
}

TEST_CASE("compare: zero tolerance fails against any stochastic input") {
    SweepSpec analytic = analytic_spec();
    SweepSpec sim;
    sim.n_values = {2};
    sim.rho_values = {1.0};
    sim.modes = {DuplexMode::InBandFullDuplex};
    sim.analytic = false;
    sim.sim = true;
    sim.seeds = {77};
    sim.slots = 20'000;
    sim.warmup = 1'000;
    auto a = run_sweep(base_model(), analytic);
    auto b = run_sweep(base_model(), sim);
    CompareReport strict = compare(a, b, 0.0);
    CHECK(!strict.pass);
    CompareReport loose = compare(a, b, 0.10);
    CHECK(loose.pass);   // one station, no collisions: only Monte Carlo noise
}

TEST_CASE("compare: key mismatch is an error") {
    SweepSpec s = analytic_spec();
    auto a = run_sweep(base_model(), s);
    s.n_values = {5};
    auto b = run_sweep(base_model(), s);
    CHECK_THROWS_AS(compare(a, b, 0.1), ModelError);
}

TEST_CASE("compare: seeds sharing a key are averaged") {
    SweepRow r1{"hd", "sim", 2, 1.0, "node", 1.0, 100.0, 5.0, 1};
    SweepRow r2{"hd", "sim", 2, 1.0, "node", 3.0, 300.0, 15.0, 2};
    SweepRow ref{"hd", "analytic", 2, 1.0, "node", 2.0, 200.0, 10.0, {}};
    CompareReport rep = compare({ref}, {r1, r2}, 1e-12);
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.entries[0].power_b == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.pass);
}

TEST_CASE("svg output is well formed enough to embed") {
    SweepSpec s = analytic_spec();
    s.n_values = {2, 5, 10, 20};
    s.modes = {DuplexMode::HalfDuplex, DuplexMode::InBandFullDuplex};
    auto rows = run_sweep(base_model(), s);
    std::ostringstream out;
    write_svg(rows, out);
    std::string svg = out.str();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("efficiency") != std::string::npos);
}
