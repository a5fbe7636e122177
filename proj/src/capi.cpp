// SPDX-License-Identifier: Apache-2.0
//
// extern "C" layer of the shared library: opaque handles around the C++
// core, exceptions translated to status codes, message in thread-local
// storage.
#include "fdwlan.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "fdwlan/analytics.hpp"
#include "fdwlan/model.hpp"
#include "fdwlan/sim.hpp"
#include "fdwlan/sweep.hpp"

struct fdw_model {
    fdwlan::Model m;
};

struct fdw_report {
    fdwlan::SimReport r;
};

namespace {

thread_local std::string g_last_error;

fdw_status fail(fdw_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

template <typename F>
fdw_status guarded(F&& f) {
    try {
        return f();
    } catch (const fdwlan::ModelError& e) {
        return fail(FDW_EVALIDATION, e.what());
    } catch (const std::exception& e) {
        return fail(FDW_EINVAL, e.what());
    }
}

fdwlan::DuplexMode cpp_mode(fdw_mode mode) {
    return mode == FDW_MODE_HD ? fdwlan::DuplexMode::HalfDuplex
                               : fdwlan::DuplexMode::InBandFullDuplex;
}

void copy_label(const std::string& s, char* label, int cap) {
    if (!label || cap <= 0) return;
    std::size_t len = std::min<std::size_t>(s.size(), cap - 1);
    std::memcpy(label, s.data(), len);
    label[len] = '\0';
}

fdwlan::StateLedger make_ledger(const fdwlan::Model& m, fdw_mode mode, fdw_role role) {
    using fdwlan::DuplexMode;
    using fdwlan::NodeRole;
    if (mode == FDW_MODE_HD) {
        auto sol = fdwlan::solve_hd(m.config);
        return fdwlan::hd_state_ledger(role == FDW_ROLE_AP ? NodeRole::HdAp : NodeRole::HdSta,
                                       m, sol);
    }
    auto sol = fdwlan::solve_ibfd(m.config);
    return role == FDW_ROLE_AP ? fdwlan::ibfd_ap_ledger(m, sol)
                               : fdwlan::ibfd_sta_ledger(m, sol);
}

}  // namespace

extern "C" {

const char* fdw_version(void) { return "0.1.0"; }

const char* fdw_status_str(fdw_status status) {
    switch (status) {
        case FDW_OK: return "ok";
        case FDW_EINVAL: return "invalid argument";
        case FDW_EVALIDATION: return "validation error";
        case FDW_EIO: return "i/o error";
        case FDW_ENOCONVERGE: return "solver did not converge";
        case FDW_ECOMPARE: return "comparison exceeded tolerance";
    }
    return "unknown status";
}

const char* fdw_last_error(void) { return g_last_error.c_str(); }

fdw_model* fdw_model_create(void) { return new (std::nothrow) fdw_model{}; }

void fdw_model_destroy(fdw_model* model) { delete model; }

fdw_status fdw_model_load_file(fdw_model* model, const char* path) {
    if (!model || !path) return fail(FDW_EINVAL, "null argument");
    return guarded([&] {
        try {
            model->m = fdwlan::load_model_file(path);
        } catch (const fdwlan::ModelError& e) {
            std::string msg = e.what();
            if (msg.find("cannot open") != std::string::npos) return fail(FDW_EIO, msg);
            throw;
        }
        return FDW_OK;
    });
}

fdw_status fdw_model_set(fdw_model* model, const char* key, const char* value) {
    if (!model || !key || !value) return fail(FDW_EINVAL, "null argument");
    try {
        fdwlan::set_model_field(model->m, key, value);
        return FDW_OK;
    } catch (const std::exception& e) {
        return fail(FDW_EINVAL, e.what());
    }
}

fdw_status fdw_model_get(const fdw_model* model, const char* key, double* out_value) {
    if (!model || !key || !out_value) return fail(FDW_EINVAL, "null argument");
    try {
        *out_value = std::stod(fdwlan::get_model_field(model->m, key));
        return FDW_OK;
    } catch (const std::exception& e) {
        return fail(FDW_EINVAL, e.what());
    }
}

fdw_status fdw_model_validate(const fdw_model* model) {
    if (!model) return fail(FDW_EINVAL, "null argument");
    return guarded([&] {
        fdwlan::validate(model->m.config, model->m.profile, model->m.traffic);
        return FDW_OK;
    });
}

namespace {

void fill_metrics(const fdwlan::NetworkMetrics& nm, fdw_network_metrics* out) {
    out->ap = {nm.ap.power_w, nm.ap.expected_energy_uj, nm.ap.expected_slot_us,
               nm.ap.throughput_share_mbps};
    out->sta = {nm.sta.power_w, nm.sta.expected_energy_uj, nm.sta.expected_slot_us,
                nm.sta.throughput_share_mbps};
    out->node_mean_power_w = nm.node_mean_power_w;
    out->network_throughput_mbps = nm.network_throughput_mbps;
    out->network_power_w = nm.network_power_w;
    out->efficiency_mbpj = nm.efficiency_mbpj;
    out->tau_ap = nm.solution.tau_ap;
    out->tau_sta = nm.solution.tau_sta;
    out->p_ap = nm.solution.p_ap;
    out->p_sta = nm.solution.p_sta;
    out->p_tr = nm.solution.p_tr;
    out->p_s = nm.solution.p_s;
    out->expected_slot_us = nm.expected_slot_us;
}

}  // namespace

fdw_status fdw_analytic(const fdw_model* model, fdw_mode mode, fdw_network_metrics* out) {
    if (!model || !out) return fail(FDW_EINVAL, "null argument");
    return guarded([&] {
        auto m = fdwlan::validate(model->m.config, model->m.profile, model->m.traffic);
        fill_metrics(fdwlan::network_metrics(m, cpp_mode(mode)), out);
        return FDW_OK;
    });
}

fdw_status fdw_ledger_size(const fdw_model* model, fdw_mode mode, fdw_role role,
                           int* out_size) {
    if (!model || !out_size) return fail(FDW_EINVAL, "null argument");
    return guarded([&] {
        auto m = fdwlan::validate(model->m.config, model->m.profile, model->m.traffic);
        *out_size = static_cast<int>(make_ledger(m, mode, role).entries.size());
        return FDW_OK;
    });
}

fdw_status fdw_ledger_entry(const fdw_model* model, fdw_mode mode, fdw_role role, int index,
                            char* label, int label_capacity, double* out_energy_uj,
                            double* out_probability) {
    if (!model) return fail(FDW_EINVAL, "null argument");
    return guarded([&] {
        auto m = fdwlan::validate(model->m.config, model->m.profile, model->m.traffic);
        auto ledger = make_ledger(m, mode, role);
        if (index < 0 || index >= static_cast<int>(ledger.entries.size()))
            return fail(FDW_EINVAL, "ledger index out of range");
        const auto& e = ledger.entries[index];
        copy_label(e.label, label, label_capacity);
        if (out_energy_uj) *out_energy_uj = e.energy_uj;
        if (out_probability) *out_probability = e.probability;
        return FDW_OK;
    });
}

fdw_status fdw_simulate(const fdw_model* model, fdw_mode mode, uint64_t slots,
                        uint64_t warmup, uint64_t seed, fdw_report** out) {
    if (!model || !out) return fail(FDW_EINVAL, "null argument");
    return guarded([&] {
        auto m = fdwlan::validate(model->m.config, model->m.profile, model->m.traffic);
        fdwlan::SimConfig sc{slots, warmup, seed};
        auto report = new fdw_report{fdwlan::simulate(m, cpp_mode(mode), sc)};
        *out = report;
        return FDW_OK;
    });
}

void fdw_report_destroy(fdw_report* report) { delete report; }

fdw_status fdw_report_metrics(const fdw_report* report, fdw_network_metrics* out) {
    if (!report || !out) return fail(FDW_EINVAL, "null argument");
    const auto& r = report->r;
    const auto& ap = r.nodes[0];
    double sta_tau = 0.0, sta_p = 0.0, sta_energy = 0.0, sta_share = 0.0;
    int n_sta = static_cast<int>(r.nodes.size()) - 1;
    for (std::size_t i = 1; i < r.nodes.size(); ++i) {
        sta_tau += r.nodes[i].empirical_tau;
        sta_p += r.nodes[i].empirical_p;
        sta_energy += r.nodes[i].energy_uj;
        sta_share += r.nodes[i].tx_bits;
    }
    out->ap = {ap.power_w, ap.energy_uj / r.slots, r.elapsed_us / r.slots,
               ap.tx_bits / r.elapsed_us};
    out->sta = {r.sta_mean_power_w, sta_energy / n_sta / r.slots, r.elapsed_us / r.slots,
                sta_share / n_sta / r.elapsed_us};
    out->node_mean_power_w = r.node_mean_power_w;
    out->network_throughput_mbps = r.aggregate_throughput_mbps;
    out->network_power_w = r.network_power_w;
    out->efficiency_mbpj = r.efficiency_mbpj;
    out->tau_ap = ap.empirical_tau;
    out->tau_sta = sta_tau / n_sta;
    out->p_ap = ap.empirical_p;
    out->p_sta = sta_p / n_sta;
    out->p_tr = r.empirical_p_tr;
    out->p_s = r.empirical_p_s;
    out->expected_slot_us = r.elapsed_us / r.slots;
    return FDW_OK;
}

fdw_status fdw_report_elapsed_us(const fdw_report* report, double* out) {
    if (!report || !out) return fail(FDW_EINVAL, "null argument");
    *out = report->r.elapsed_us;
    return FDW_OK;
}

fdw_status fdw_report_node_count(const fdw_report* report, int* out) {
    if (!report || !out) return fail(FDW_EINVAL, "null argument");
    *out = static_cast<int>(report->r.nodes.size());
    return FDW_OK;
}

fdw_status fdw_report_state_count(const fdw_report* report, int node, int* out_count) {
    if (!report || !out_count) return fail(FDW_EINVAL, "null argument");
    if (node < 0 || node >= static_cast<int>(report->r.nodes.size()))
        return fail(FDW_EINVAL, "node index out of range");
    *out_count = static_cast<int>(report->r.nodes[node].states.size());
    return FDW_OK;
}

fdw_status fdw_report_state(const fdw_report* report, int node, int state, char* label,
                            int label_capacity, uint64_t* out_count, double* out_slot_us,
                            double* out_energy_uj) {
    if (!report) return fail(FDW_EINVAL, "null argument");
    if (node < 0 || node >= static_cast<int>(report->r.nodes.size()))
        return fail(FDW_EINVAL, "node index out of range");
    const auto& states = report->r.nodes[node].states;
    if (state < 0 || state >= static_cast<int>(states.size()))
        return fail(FDW_EINVAL, "state index out of range");
    const auto& st = states[state];
    copy_label(st.label, label, label_capacity);
    if (out_count) *out_count = st.count;
    if (out_slot_us) *out_slot_us = st.slot_us;
    if (out_energy_uj) *out_energy_uj = st.energy_uj;
    return FDW_OK;
}

fdw_status fdw_sweep(const fdw_model* model, const fdw_sweep_spec* spec,
                     const char* out_path) {
    if (!model || !spec || !out_path) return fail(FDW_EINVAL, "null argument");
    return guarded([&] {
        auto m = fdwlan::validate(model->m.config, model->m.profile, model->m.traffic);
        fdwlan::SweepSpec s;
        s.n_values.assign(spec->n_values, spec->n_values + spec->n_count);
        s.rho_values.assign(spec->rho_values, spec->rho_values + spec->rho_count);
        if (spec->include_hd) s.modes.push_back(fdwlan::DuplexMode::HalfDuplex);
        if (spec->include_ibfd) s.modes.push_back(fdwlan::DuplexMode::InBandFullDuplex);
        s.analytic = spec->include_analytic != 0;
        s.sim = spec->include_sim != 0;
        if (spec->seeds) s.seeds.assign(spec->seeds, spec->seeds + spec->seed_count);
        s.slots = spec->slots;
        s.warmup = spec->warmup;
        auto rows = fdwlan::run_sweep(m, s);
        try {
            if (spec->format == FDW_FORMAT_SVG)
                fdwlan::write_svg_file(rows, out_path);
            else
                fdwlan::write_csv_file(rows, out_path);
        } catch (const fdwlan::ModelError& e) {
            return fail(FDW_EIO, e.what());
        }
        return FDW_OK;
    });
}

namespace {

fdw_status run_compare(const std::vector<fdwlan::SweepRow>& a,
                       const std::vector<fdwlan::SweepRow>& b, double tolerance,
                       const char* report_path) {
    auto report = fdwlan::compare(a, b, tolerance);
    if (report_path) {
        std::string path(report_path);
        if (path == "-") {
            fdwlan::print_report(report, std::cout);
        } else {
            std::ofstream out(path);
            if (!out) return fail(FDW_EIO, "cannot write '" + path + "'");
            fdwlan::print_report(report, out);
        }
    }
    return report.pass ? FDW_OK : fail(FDW_ECOMPARE, "comparison exceeded tolerance");
}

std::vector<fdwlan::SweepRow> read_rows_or_fail(const char* path) {
    return fdwlan::read_csv_file(path);
}

}  // namespace

fdw_status fdw_compare_files(const char* csv_a, const char* csv_b, double tolerance,
                             const char* report_path) {
    if (!csv_a || !csv_b) return fail(FDW_EINVAL, "null argument");
    return guarded([&] {
        std::vector<fdwlan::SweepRow> a, b;
        try {
            a = read_rows_or_fail(csv_a);
            b = read_rows_or_fail(csv_b);
        } catch (const fdwlan::ModelError& e) {
            std::string msg = e.what();
            return fail(msg.find("cannot open") != std::string::npos ? FDW_EIO : FDW_EINVAL,
                        msg);
        }
        return run_compare(a, b, tolerance, report_path);
    });
}

fdw_status fdw_compare_sources(const char* csv_path, double tolerance,
                               const char* report_path) {
    if (!csv_path) return fail(FDW_EINVAL, "null argument");
    return guarded([&] {
        std::vector<fdwlan::SweepRow> rows;
        try {
            rows = read_rows_or_fail(csv_path);
        } catch (const fdwlan::ModelError& e) {
            std::string msg = e.what();
            return fail(msg.find("cannot open") != std::string::npos ? FDW_EIO : FDW_EINVAL,
                        msg);
        }
        std::vector<fdwlan::SweepRow> analytic, sim;
        for (auto& r : rows)
            (r.source == "analytic" ? analytic : sim).push_back(r);
        return run_compare(analytic, sim, tolerance, report_path);
    });
}

}  // extern "C"
