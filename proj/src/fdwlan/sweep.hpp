// SPDX-License-Identifier: Apache-2.0
#ifndef FDWLAN_SWEEP_HPP
#define FDWLAN_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fdwlan/model.hpp"
#include "fdwlan/sim.hpp"

namespace fdwlan {

/// Grid description for a sweep over node count and symmetry ratio.
struct SweepSpec {
    std::vector<int> n_values;
    std::vector<double> rho_values;
    std::vector<DuplexMode> modes;
    bool analytic = true;
    bool sim = false;
    std::vector<std::uint64_t> seeds;   // one sim row per seed
    std::uint64_t slots = 1'000'000;
    std::uint64_t warmup = 10'000;
};

/// One CSV row. Half-duplex rows carry the single role "node" (the
/// traffic-weighted network mean); full-duplex rows carry "AP" and "STA".
struct SweepRow {
    std::string mode;     // "hd" | "ibfd"
    std::string source;   // "analytic" | "sim"
    int n = 0;
    double rho = 0.0;
    std::string role;     // "node" | "AP" | "STA"
    double power_w = 0.0;
    double throughput_mbps = 0.0;   // this role's share
    double efficiency_mbpj = 0.0;   // network efficiency
    std::optional<std::uint64_t> seed;
};

/// Evaluates the grid in canonical order (mode, n, rho, role, analytic
/// first, then sim seeds). Deterministic: rerunning an identical spec
/// yields identical rows.
std::vector<SweepRow> run_sweep(const Model& base, const SweepSpec& spec);

extern const char* const kCsvHeader;

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);
std::vector<SweepRow> read_csv(std::istream& in);
std::vector<SweepRow> read_csv_file(const std::string& path);
void write_csv_file(const std::vector<SweepRow>& rows, const std::string& path);

/// Best-effort presentation: two stacked line charts (power vs n and
/// efficiency vs n), one series per (mode, rho, role); sim rows, when
/// present, are drawn as markers at the per-seed mean.
void write_svg(const std::vector<SweepRow>& rows, std::ostream& out);
void write_svg_file(const std::vector<SweepRow>& rows, const std::string& path);

struct CompareEntry {
    std::string mode;
    int n;
    double rho;
    std::string role;
    double power_a, power_b, power_err;
    double throughput_a, throughput_b, throughput_err;
    double efficiency_a, efficiency_b, efficiency_err;
    bool pass;   // power and efficiency within tolerance
};

struct CompareReport {
    double tolerance;
    bool pass;
    std::vector<CompareEntry> entries;
};

/// Pairs rows by (mode, n, rho, role) — rows sharing a key (multiple
/// seeds) enter as their mean — and reports per-key relative errors.
/// PASS gates on power and efficiency; throughput error is informational.
/// Throws ModelError if the key sets differ.
CompareReport compare(const std::vector<SweepRow>& a, const std::vector<SweepRow>& b,
                      double tolerance);

void print_report(const CompareReport& report, std::ostream& out);

}  // namespace fdwlan

#endif
