// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the library exclusively through the
// C API in fdwlan.h.
//
// Exit codes: 0 success/PASS, 1 usage or runtime error, 2 comparison FAIL.
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdwlan.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCompareFail = 2;

struct ModelHandle {
    fdw_model* m = fdw_model_create();
    ~ModelHandle() { fdw_model_destroy(m); }
    ModelHandle(const ModelHandle&) = delete;
    ModelHandle& operator=(const ModelHandle&) = delete;
    ModelHandle() = default;
};

int die(fdw_status status) {
    std::fprintf(stderr, "error: %s (%s)\n", fdw_last_error(), fdw_status_str(status));
    return status == FDW_ECOMPARE ? kExitCompareFail : kExitUsage;
}

bool apply_common(fdw_model* m, const std::string& config_path, int nodes, double symmetry) {
    if (!config_path.empty() && fdw_model_load_file(m, config_path.c_str()) != FDW_OK)
        return false;
    if (nodes > 0 &&
        fdw_model_set(m, "n_nodes", std::to_string(nodes).c_str()) != FDW_OK)
        return false;
    if (symmetry > 0 &&
        fdw_model_set(m, "symmetry", std::to_string(symmetry).c_str()) != FDW_OK)
        return false;
    return true;
}

const char* mode_name(fdw_mode mode) { return mode == FDW_MODE_HD ? "hd" : "ibfd"; }

void print_metrics_block(const fdw_network_metrics& nm, fdw_mode mode, bool empirical) {
    std::printf("  %-28s %10.6f\n", empirical ? "tau_sta (empirical)" : "tau_sta", nm.tau_sta);
    std::printf("  %-28s %10.6f\n", empirical ? "p_sta (empirical)" : "p_sta", nm.p_sta);
    if (mode == FDW_MODE_IBFD) {
        std::printf("  %-28s %10.6f\n", empirical ? "tau_ap (empirical)" : "tau_ap", nm.tau_ap);
        std::printf("  %-28s %10.6f\n", empirical ? "p_ap (empirical)" : "p_ap", nm.p_ap);
    }
    std::printf("  %-28s %10.6f\n", "P_tr", nm.p_tr);
    std::printf("  %-28s %10.6f\n", "P_s", nm.p_s);
    std::printf("  %-28s %10.3f\n", "expected slot (us)", nm.expected_slot_us);
    std::printf("  %-28s %10.4f\n", "AP power (W)", nm.ap.power_w);
    std::printf("  %-28s %10.4f\n", "STA power (W)", nm.sta.power_w);
    std::printf("  %-28s %10.4f\n", "per-node mean power (W)", nm.node_mean_power_w);
    std::printf("  %-28s %10.2f\n", "AP throughput (Mb/s)", nm.ap.throughput_share_mbps);
    std::printf("  %-28s %10.2f\n", "STA throughput (Mb/s)", nm.sta.throughput_share_mbps);
    std::printf("  %-28s %10.2f\n", "network throughput (Mb/s)", nm.network_throughput_mbps);
    std::printf("  %-28s %10.4f\n", "network power (W)", nm.network_power_w);
    std::printf("  %-28s %10.4f\n", "efficiency (Mb/J)", nm.efficiency_mbpj);
    // per-node view: own delivered share over own draw
    std::printf("  %-28s %10.4f\n", "AP efficiency (Mb/J)",
                nm.ap.throughput_share_mbps / nm.ap.power_w);
    std::printf("  %-28s %10.4f\n", "STA efficiency (Mb/J)",
                nm.sta.throughput_share_mbps / nm.sta.power_w);
}

int print_ledger(const fdw_model* m, fdw_mode mode, fdw_role role, const char* title) {
    int size = 0;
    if (auto st = fdw_ledger_size(m, mode, role, &size); st != FDW_OK) return die(st);
    std::printf("  %s states:\n", title);
    for (int i = 0; i < size; ++i) {
        char label[32];
        double energy = 0, prob = 0;
        if (auto st = fdw_ledger_entry(m, mode, role, i, label, sizeof label, &energy, &prob);
            st != FDW_OK)
            return die(st);
        std::printf("    %-14s energy %10.3f uJ   Pr %.6f\n", label, energy, prob);
    }
    return kExitOk;
}

std::vector<fdw_mode> parse_modes(const std::vector<std::string>& names) {
    std::vector<fdw_mode> modes;
    for (const auto& s : names) {
        if (s == "hd")
            modes.push_back(FDW_MODE_HD);
        else if (s == "ibfd")
            modes.push_back(FDW_MODE_IBFD);
        else
            throw CLI::ValidationError("--mode", "expected hd or ibfd, got '" + s + "'");
    }
    return modes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power and energy-efficiency toolkit for saturated 802.11 DCF WLANs "
                 "(half-duplex and in-band full-duplex)"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::string config_path;
    app.add_option("--config", config_path, "key = value configuration file")
        ->check(CLI::ExistingFile);

    // ---- analytic ----
    auto* cmd_an = app.add_subcommand("analytic", "closed-form metrics at one grid point");
    int an_nodes = 0;
    double an_rho = 0;
    std::string an_mode = "hd", an_out;
    cmd_an->add_option("--nodes", an_nodes, "number of nodes (AP + stations)");
    cmd_an->add_option("--symmetry", an_rho, "uplink/downlink ratio in (0,1]");
    cmd_an->add_option("--mode", an_mode, "hd or ibfd")->check(CLI::IsMember({"hd", "ibfd"}));
    cmd_an->add_option("--out", an_out, "also write the point as CSV");

    // ---- simulate ----
    auto* cmd_sim = app.add_subcommand("simulate", "slot-synchronous simulation");
    int sim_nodes = 0;
    double sim_rho = 0;
    std::string sim_mode = "hd", sim_out;
    std::vector<std::uint64_t> sim_seeds{1};
    std::uint64_t sim_slots = 1'000'000, sim_warmup = 10'000;
    cmd_sim->add_option("--nodes", sim_nodes, "number of nodes");
    cmd_sim->add_option("--symmetry", sim_rho, "uplink/downlink ratio");
    cmd_sim->add_option("--mode", sim_mode, "hd or ibfd")->check(CLI::IsMember({"hd", "ibfd"}));
    cmd_sim->add_option("--seed", sim_seeds, "seed(s); several give mean and stddev")
        ->delimiter(',');
    cmd_sim->add_option("--slots", sim_slots, "renewal slots (default 1e6)");
    cmd_sim->add_option("--warmup", sim_warmup, "warmup slots excluded from statistics");
    cmd_sim->add_option("--out", sim_out, "write per-seed rows as CSV");

    // ---- sweep ----
    auto* cmd_sweep = app.add_subcommand("sweep", "grid sweep over n and symmetry");
    std::vector<int> sw_nodes{2, 5, 10, 20};
    std::vector<double> sw_rhos{1.0};
    std::vector<std::string> sw_modes{"hd", "ibfd"};
    std::vector<std::string> sw_sources{"analytic"};
    std::vector<std::uint64_t> sw_seeds{1, 2, 3, 4, 5};
    std::uint64_t sw_slots = 1'000'000, sw_warmup = 10'000;
    std::string sw_out = "sweep.csv", sw_format = "csv";
    double sw_tolerance = 0.03;
    cmd_sweep->add_option("--nodes", sw_nodes, "node counts")->delimiter(',');
    cmd_sweep->add_option("--symmetry", sw_rhos, "symmetry ratios")->delimiter(',');
    cmd_sweep->add_option("--mode", sw_modes, "modes: hd,ibfd")->delimiter(',');
    cmd_sweep->add_option("--source", sw_sources, "sources: analytic,sim")->delimiter(',');
    cmd_sweep->add_option("--seed", sw_seeds, "sim seeds")->delimiter(',');
    cmd_sweep->add_option("--slots", sw_slots, "sim renewal slots per run");
    cmd_sweep->add_option("--warmup", sw_warmup, "sim warmup slots");
    cmd_sweep->add_option("--out", sw_out, "output path");
    cmd_sweep->add_option("--format", sw_format, "csv or svg")
        ->check(CLI::IsMember({"csv", "svg"}));
    cmd_sweep->add_option("--tolerance", sw_tolerance,
                          "relative tolerance for the analytic-vs-sim report");

    // ---- compare ----
    auto* cmd_cmp = app.add_subcommand("compare", "pair two result files by grid key");
    std::string cmp_a, cmp_b;
    double cmp_tolerance = 0.03;
    cmd_cmp->add_option("file_a", cmp_a, "first CSV (reference)")->required();
    cmd_cmp->add_option("file_b", cmp_b, "second CSV")->required();
    cmd_cmp->add_option("--tolerance", cmp_tolerance, "relative tolerance (default 0.03)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);   // prints the message or requested help text
        return rc == 0 ? kExitOk : kExitUsage;
    }

    ModelHandle model;
    if (!model.m) {
        std::fprintf(stderr, "error: out of memory\n");
        return kExitUsage;
    }

    if (cmd_an->parsed()) {
        if (!apply_common(model.m, config_path, an_nodes, an_rho)) return die(FDW_EVALIDATION);
        fdw_mode mode = an_mode == "hd" ? FDW_MODE_HD : FDW_MODE_IBFD;
        fdw_network_metrics nm{};
        if (auto st = fdw_analytic(model.m, mode, &nm); st != FDW_OK) return die(st);
        std::printf("analytic %s\n", mode_name(mode));
        print_metrics_block(nm, mode, false);
        if (mode == FDW_MODE_HD) {
            if (int rc = print_ledger(model.m, mode, FDW_ROLE_AP, "AP (six-state)")) return rc;
            if (int rc = print_ledger(model.m, mode, FDW_ROLE_STA, "STA (six-state)")) return rc;
        } else {
            if (int rc = print_ledger(model.m, mode, FDW_ROLE_AP, "AP")) return rc;
            if (int rc = print_ledger(model.m, mode, FDW_ROLE_STA, "STA")) return rc;
        }
        if (!an_out.empty()) {
            double n = 0, rho = 0;
            fdw_model_get(model.m, "n_nodes", &n);
            fdw_model_get(model.m, "symmetry", &rho);
            int nv = static_cast<int>(n);
            fdw_sweep_spec spec{};
            spec.n_values = &nv;
            spec.n_count = 1;
            spec.rho_values = &rho;
            spec.rho_count = 1;
            spec.include_hd = mode == FDW_MODE_HD;
            spec.include_ibfd = mode == FDW_MODE_IBFD;
            spec.include_analytic = 1;
            spec.format = FDW_FORMAT_CSV;
            if (auto st = fdw_sweep(model.m, &spec, an_out.c_str()); st != FDW_OK)
                return die(st);
            std::printf("wrote %s\n", an_out.c_str());
        }
        return kExitOk;
    }

    if (cmd_sim->parsed()) {
        if (!apply_common(model.m, config_path, sim_nodes, sim_rho))
            return die(FDW_EVALIDATION);
        fdw_mode mode = sim_mode == "hd" ? FDW_MODE_HD : FDW_MODE_IBFD;
        std::vector<fdw_network_metrics> runs;
        for (std::uint64_t seed : sim_seeds) {
            fdw_report* report = nullptr;
            if (auto st = fdw_simulate(model.m, mode, sim_slots, sim_warmup, seed, &report);
                st != FDW_OK)
                return die(st);
            fdw_network_metrics nm{};
            fdw_report_metrics(report, &nm);
            runs.push_back(nm);
            std::printf("simulate %s seed %" PRIu64 " (%" PRIu64 " slots)\n", mode_name(mode),
                        seed, sim_slots);
            print_metrics_block(nm, mode, true);
            if (sim_seeds.size() == 1) {
                int nodes = 0;
                fdw_report_node_count(report, &nodes);
                for (int node = 0; node < std::min(nodes, 2); ++node) {
                    int count = 0;
                    fdw_report_state_count(report, node, &count);
                    std::printf("  node %d state occupancy:\n", node);
                    for (int s = 0; s < count; ++s) {
                        char label[32];
                        std::uint64_t cnt = 0;
                        double us = 0, uj = 0;
                        fdw_report_state(report, node, s, label, sizeof label, &cnt, &us, &uj);
                        std::printf("    %-14s %10" PRIu64 " slots %14.1f us %14.1f uJ\n",
                                    label, cnt, us, uj);
                    }
                }
            }
            fdw_report_destroy(report);
        }
        if (runs.size() > 1) {
            auto stat = [&](auto get) {
                double mean = 0, ss = 0;
                for (const auto& r : runs) mean += get(r);
                mean /= runs.size();
                for (const auto& r : runs) ss += (get(r) - mean) * (get(r) - mean);
                return std::pair{mean, std::sqrt(ss / (runs.size() - 1))};
            };
            auto [pm, ps] = stat([](const fdw_network_metrics& r) { return r.node_mean_power_w; });
            auto [tm, ts] = stat([](const fdw_network_metrics& r) { return r.network_throughput_mbps; });
            auto [em, es] = stat([](const fdw_network_metrics& r) { return r.efficiency_mbpj; });
            std::printf("across %zu seeds (mean +- stddev)\n", runs.size());
            std::printf("  %-28s %10.4f +- %.4f\n", "per-node mean power (W)", pm, ps);
            std::printf("  %-28s %10.2f +- %.2f\n", "network throughput (Mb/s)", tm, ts);
            std::printf("  %-28s %10.4f +- %.4f\n", "efficiency (Mb/J)", em, es);
        }
        if (!sim_out.empty()) {
            double n = 0, rho = 0;
            fdw_model_get(model.m, "n_nodes", &n);
            fdw_model_get(model.m, "symmetry", &rho);
            int nv = static_cast<int>(n);
            fdw_sweep_spec spec{};
            spec.n_values = &nv;
            spec.n_count = 1;
            spec.rho_values = &rho;
            spec.rho_count = 1;
            spec.include_hd = mode == FDW_MODE_HD;
            spec.include_ibfd = mode == FDW_MODE_IBFD;
            spec.include_sim = 1;
            spec.seeds = sim_seeds.data();
            spec.seed_count = static_cast<int>(sim_seeds.size());
            spec.slots = sim_slots;
            spec.warmup = sim_warmup;
            spec.format = FDW_FORMAT_CSV;
            if (auto st = fdw_sweep(model.m, &spec, sim_out.c_str()); st != FDW_OK)
                return die(st);
            std::printf("wrote %s\n", sim_out.c_str());
        }
        return kExitOk;
    }

    if (cmd_sweep->parsed()) {
        if (!apply_common(model.m, config_path, 0, 0)) return die(FDW_EVALIDATION);
        bool want_analytic = false, want_sim = false;
        for (const auto& s : sw_sources) {
            if (s == "analytic")
                want_analytic = true;
            else if (s == "sim")
                want_sim = true;
            else {
                std::fprintf(stderr, "error: unknown source '%s'\n", s.c_str());
                return kExitUsage;
            }
        }
        std::vector<fdw_mode> modes;
        try {
            modes = parse_modes(sw_modes);
        } catch (const CLI::Error& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return kExitUsage;
        }
        fdw_sweep_spec spec{};
        spec.n_values = sw_nodes.data();
        spec.n_count = static_cast<int>(sw_nodes.size());
        spec.rho_values = sw_rhos.data();
        spec.rho_count = static_cast<int>(sw_rhos.size());
        for (fdw_mode m : modes) {
            if (m == FDW_MODE_HD) spec.include_hd = 1;
            if (m == FDW_MODE_IBFD) spec.include_ibfd = 1;
        }
        spec.include_analytic = want_analytic;
        spec.include_sim = want_sim;
        spec.seeds = sw_seeds.data();
        spec.seed_count = static_cast<int>(sw_seeds.size());
        spec.slots = sw_slots;
        spec.warmup = sw_warmup;
        spec.format = sw_format == "svg" ? FDW_FORMAT_SVG : FDW_FORMAT_CSV;
        if (auto st = fdw_sweep(model.m, &spec, sw_out.c_str()); st != FDW_OK) return die(st);
        std::printf("wrote %s\n", sw_out.c_str());
        if (want_analytic && want_sim && spec.format == FDW_FORMAT_CSV) {
            // analytic-vs-sim report over the file just written
            auto st = fdw_compare_sources(sw_out.c_str(), sw_tolerance, "-");
            if (st == FDW_ECOMPARE) return kExitCompareFail;
            if (st != FDW_OK) return die(st);
        }
        return kExitOk;
    }

    if (cmd_cmp->parsed()) {
        auto st = fdw_compare_files(cmp_a.c_str(), cmp_b.c_str(), cmp_tolerance, "-");
        if (st == FDW_OK) return kExitOk;
        if (st == FDW_ECOMPARE) return kExitCompareFail;
        return die(st);
    }

    return kExitUsage;
}
