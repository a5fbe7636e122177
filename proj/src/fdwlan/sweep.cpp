// SPDX-License-Identifier: Apache-2.0
#include "fdwlan/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "fdwlan/analytics.hpp"

namespace fdwlan {

const char* const kCsvHeader = "mode,source,n,rho,role,power_w,throughput_mbps,efficiency_mbpj,seed";

namespace {

std::string num6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void validate_spec(const SweepSpec& spec) {
    if (spec.n_values.empty()) throw ModelError("sweep: empty n list");
    if (spec.rho_values.empty()) throw ModelError("sweep: empty rho list");
    if (spec.modes.empty()) throw ModelError("sweep: empty mode list");
    if (!spec.analytic && !spec.sim) throw ModelError("sweep: no sources selected");
    for (int n : spec.n_values)
        if (n < 2) throw ModelError("sweep: n must be at least 2");
    for (double r : spec.rho_values)
        if (!(r > 0.0 && r <= 1.0)) throw ModelError("sweep: rho out of range (0, 1]");
    if (spec.sim && spec.seeds.empty()) throw ModelError("sweep: sim requested without seeds");
}

Model grid_model(const Model& base, int n, double rho) {
    Model m = base;
    m.config.n_nodes = n;
    m.traffic.symmetry = rho;
    return validate(m.config, m.profile, m.traffic);
}

}  // namespace

std::vector<SweepRow> run_sweep(const Model& base, const SweepSpec& spec) {
    validate_spec(spec);

    std::vector<DuplexMode> modes = spec.modes;
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    std::vector<int> ns = spec.n_values;
    std::sort(ns.begin(), ns.end());
    std::vector<double> rhos = spec.rho_values;
    std::sort(rhos.begin(), rhos.end());

    std::vector<SweepRow> rows;
    for (DuplexMode mode : modes) {
        const bool hd = mode == DuplexMode::HalfDuplex;
        for (int n : ns) {
            for (double rho : rhos) {
                Model m = grid_model(base, n, rho);
                auto push = [&](const std::string& source, const std::string& role,
                                double power, double share, double eff,
                                std::optional<std::uint64_t> seed) {
                    rows.push_back(SweepRow{to_string(mode), source, n, rho, role, power,
                                            share, eff, seed});
                };
                if (spec.analytic) {
                    NetworkMetrics nm = network_metrics(m, mode);
                    if (hd) {
                        push("analytic", "node", nm.node_mean_power_w,
                             nm.network_throughput_mbps / n, nm.efficiency_mbpj, {});
                    } else {
                        push("analytic", "AP", nm.ap.power_w, nm.ap.throughput_share_mbps,
                             nm.efficiency_mbpj, {});
                        push("analytic", "STA", nm.sta.power_w, nm.sta.throughput_share_mbps,
                             nm.efficiency_mbpj, {});
                    }
                }
                if (spec.sim) {
                    for (std::uint64_t seed : spec.seeds) {
                        SimConfig sc{spec.slots, spec.warmup, seed};
                        SimReport r = simulate(m, mode, sc);
                        if (hd) {
                            push("sim", "node", r.node_mean_power_w,
                                 r.aggregate_throughput_mbps / n, r.efficiency_mbpj, seed);
                        } else {
                            double ul_share = 0.0;
                            for (std::size_t i = 1; i < r.nodes.size(); ++i)
                                ul_share += r.nodes[i].tx_bits;
                            ul_share /= r.elapsed_us * (n - 1);
                            push("sim", "AP", r.nodes[0].power_w,
                                 r.nodes[0].tx_bits / r.elapsed_us, r.efficiency_mbpj, seed);
                            push("sim", "STA", r.sta_mean_power_w, ul_share,
                                 r.efficiency_mbpj, seed);
                        }
                    }
                }
            }
        }
    }
    // canonical row order: the nested loops above emit AP before STA and
    // analytic before sim; regroup so roles stay together across sources
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.mode, a.n, a.rho, a.role) < std::tie(b.mode, b.n, b.rho, b.role);
    });
    return rows;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << kCsvHeader << "\n";
    for (const auto& r : rows) {
        out << r.mode << ',' << r.source << ',' << r.n << ',' << num6(r.rho) << ',' << r.role
            << ',' << num6(r.power_w) << ',' << num6(r.throughput_mbps) << ','
            << num6(r.efficiency_mbpj) << ',';
        if (r.seed) out << *r.seed;
        out << "\n";
    }
}

void write_csv_file(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelError("cannot write '" + path + "'");
    write_csv(rows, out);
    if (!out.flush()) throw ModelError("write failed for '" + path + "'");
}

std::vector<SweepRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ModelError("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw ModelError("csv: unexpected header '" + line + "'");
    std::vector<SweepRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (line.back() == ',') f.push_back("");
        if (f.size() != 9)
            throw ModelError("csv line " + std::to_string(lineno) + ": expected 9 fields");
        SweepRow r;
        r.mode = f[0];
        r.source = f[1];
        r.n = std::stoi(f[2]);
        r.rho = std::stod(f[3]);
        r.role = f[4];
        r.power_w = std::stod(f[5]);
        r.throughput_mbps = std::stod(f[6]);
        r.efficiency_mbpj = std::stod(f[7]);
        if (!f[8].empty()) r.seed = std::stoull(f[8]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<SweepRow> read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelError("cannot open '" + path + "'");
    return read_csv(in);
}

namespace {

struct Key {
    std::string mode;
    int n;
    double rho;
    std::string role;
    auto operator<=>(const Key&) const = default;
};

struct Acc {
    double power = 0.0, thr = 0.0, eff = 0.0;
    int count = 0;
    void add(const SweepRow& r) {
        power += r.power_w;
        thr += r.throughput_mbps;
        eff += r.efficiency_mbpj;
        ++count;
    }
    double mean_power() const { return power / count; }
    double mean_thr() const { return thr / count; }
    double mean_eff() const { return eff / count; }
};

std::map<Key, Acc> aggregate(const std::vector<SweepRow>& rows) {
    std::map<Key, Acc> m;
    for (const auto& r : rows) m[Key{r.mode, r.n, r.rho, r.role}].add(r);
    return m;
}

double rel_err(double a, double b) {
    if (a == b) return 0.0;
    return std::fabs(a - b) / std::fabs(a);
}

}  // namespace

CompareReport compare(const std::vector<SweepRow>& a, const std::vector<SweepRow>& b,
                      double tolerance) {
    auto ma = aggregate(a);
    auto mb = aggregate(b);
    if (ma.size() != mb.size()) throw ModelError("compare: key sets differ in size");

    CompareReport rep;
    rep.tolerance = tolerance;
    rep.pass = true;
    auto ia = ma.begin();
    auto ib = mb.begin();
    for (; ia != ma.end(); ++ia, ++ib) {
        if (ia->first != ib->first)
            throw ModelError("compare: key mismatch at mode=" + ia->first.mode +
                             " n=" + std::to_string(ia->first.n));
        CompareEntry e;
        e.mode = ia->first.mode;
        e.n = ia->first.n;
        e.rho = ia->first.rho;
        e.role = ia->first.role;
        e.power_a = ia->second.mean_power();
        e.power_b = ib->second.mean_power();
        e.power_err = rel_err(e.power_a, e.power_b);
        e.throughput_a = ia->second.mean_thr();
        e.throughput_b = ib->second.mean_thr();
        e.throughput_err = rel_err(e.throughput_a, e.throughput_b);
        e.efficiency_a = ia->second.mean_eff();
        e.efficiency_b = ib->second.mean_eff();
        e.efficiency_err = rel_err(e.efficiency_a, e.efficiency_b);
        e.pass = e.power_err <= tolerance && e.efficiency_err <= tolerance;
        rep.pass = rep.pass && e.pass;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

void print_report(const CompareReport& report, std::ostream& out) {
    char buf[160];
    out << "comparison at tolerance " << num6(report.tolerance * 100) << "%\n";
    for (const auto& e : report.entries) {
        std::snprintf(buf, sizeof buf,
                      "%-4s n=%-3d rho=%-4s %-5s power %8.4f vs %8.4f (%5.2f%%)  "
                      "thr %8.2f vs %8.2f (%5.2f%%)  eff %7.3f vs %7.3f (%5.2f%%)  %s",
                      e.mode.c_str(), e.n, num6(e.rho).c_str(), e.role.c_str(), e.power_a,
                      e.power_b, e.power_err * 100, e.throughput_a, e.throughput_b,
                      e.throughput_err * 100, e.efficiency_a, e.efficiency_b,
                      e.efficiency_err * 100, e.pass ? "PASS" : "FAIL");
        out << buf << "\n";
    }
    out << (report.pass ? "PASS" : "FAIL") << "\n";
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

namespace {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> line;     // analytic
    std::vector<std::pair<double, double>> points;   // sim means
};

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#17becf", "#e377c2",
                               "#7f7f7f", "#bcbd22"};

struct Panel {
    std::string title;
    std::string y_label;
    std::vector<Series> series;
};

void render_panel(std::ostream& out, const Panel& p, double x0, double y0, double w, double h) {
    double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = -1e300;
    for (const auto& s : p.series) {
        for (auto pts : {&s.line, &s.points})
            for (auto [x, y] : *pts) {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymax = std::max(ymax, y);
            }
    }
    if (xmax <= xmin) xmax = xmin + 1;
    ymax *= 1.08;
    if (ymax <= 0) ymax = 1;

    const double ml = 56, mr = 150, mt = 28, mb = 40;
    double pw = w - ml - mr, ph = h - mt - mb;
    auto X = [&](double x) { return x0 + ml + (x - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double y) { return y0 + mt + ph - (y - ymin) / (ymax - ymin) * ph; };

    out << "<rect x='" << x0 + ml << "' y='" << y0 + mt << "' width='" << pw << "' height='"
        << ph << "' fill='none' stroke='#444'/>\n";
    out << "<text x='" << x0 + ml << "' y='" << y0 + mt - 8 << "' font-size='14'>" << p.title
        << "</text>\n";
    // ticks
    for (int i = 0; i <= 5; ++i) {
        double yv = ymin + (ymax - ymin) * i / 5;
        out << "<line x1='" << x0 + ml - 4 << "' y1='" << Y(yv) << "' x2='" << x0 + ml
            << "' y2='" << Y(yv) << "' stroke='#444'/>"
            << "<text x='" << x0 + ml - 8 << "' y='" << Y(yv) + 4
            << "' font-size='10' text-anchor='end'>" << num6(yv) << "</text>\n";
        double xv = xmin + (xmax - xmin) * i / 5;
        out << "<line x1='" << X(xv) << "' y1='" << y0 + mt + ph << "' x2='" << X(xv)
            << "' y2='" << y0 + mt + ph + 4 << "' stroke='#444'/>"
            << "<text x='" << X(xv) << "' y='" << y0 + mt + ph + 16
            << "' font-size='10' text-anchor='middle'>" << num6(xv) << "</text>\n";
    }
    out << "<text x='" << x0 + ml + pw / 2 << "' y='" << y0 + h - 6
        << "' font-size='11' text-anchor='middle'>nodes (n)</text>\n";
    out << "<text x='" << x0 + 14 << "' y='" << y0 + mt + ph / 2
        << "' font-size='11' text-anchor='middle' transform='rotate(-90 " << x0 + 14 << " "
        << y0 + mt + ph / 2 << ")'>" << p.y_label << "</text>\n";

    int ci = 0;
    for (const auto& s : p.series) {
        const char* color = kColors[ci % (sizeof kColors / sizeof *kColors)];
        if (s.line.size() > 1) {
            out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
            for (auto [x, y] : s.line) out << X(x) << ',' << Y(y) << ' ';
            out << "'/>\n";
        }
        for (auto [x, y] : s.points)
            out << "<circle cx='" << X(x) << "' cy='" << Y(y) << "' r='3' fill='none' stroke='"
                << color << "'/>\n";
        double ly = y0 + mt + 14 * ci;
        out << "<line x1='" << x0 + ml + pw + 8 << "' y1='" << ly + 6 << "' x2='"
            << x0 + ml + pw + 28 << "' y2='" << ly + 6 << "' stroke='" << color
            << "' stroke-width='1.5'/><text x='" << x0 + ml + pw + 32 << "' y='" << ly + 10
            << "' font-size='10'>" << s.label << "</text>\n";
        ++ci;
    }
}

}  // namespace

void write_svg(const std::vector<SweepRow>& rows, std::ostream& out) {
    // one series per (mode, rho, role); analytic rows as lines, sim means as markers
    std::map<std::string, Series> power_series, eff_series;
    std::map<Key, Acc> sim_means;
    for (const auto& r : rows)
        if (r.source == "sim") sim_means[Key{r.mode, r.n, r.rho, r.role}].add(r);

    auto series_key = [](const SweepRow& r) {
        return r.mode + " rho=" + num6(r.rho) + " " + r.role;
    };
    auto eff_key = [](const SweepRow& r) { return r.mode + " rho=" + num6(r.rho); };

    for (const auto& r : rows) {
        if (r.source == "analytic") {
            auto& ps = power_series[series_key(r)];
            ps.label = series_key(r);
            ps.line.emplace_back(r.n, r.power_w);
            auto& es = eff_series[eff_key(r)];
            es.label = eff_key(r);
            if (es.line.empty() || es.line.back().first != r.n)
                es.line.emplace_back(r.n, r.efficiency_mbpj);
        }
    }
    std::map<std::string, bool> eff_points_done;
    for (const auto& [key, acc] : sim_means) {
        SweepRow probe{key.mode, "sim", key.n, key.rho, key.role, 0, 0, 0, {}};
        auto& ps = power_series[series_key(probe)];
        if (ps.label.empty()) ps.label = series_key(probe);
        ps.points.emplace_back(key.n, acc.mean_power());
        auto& es = eff_series[eff_key(probe)];
        if (es.label.empty()) es.label = eff_key(probe);
        std::string ek = eff_key(probe) + "#" + std::to_string(key.n);
        if (!eff_points_done[ek]) {
            es.points.emplace_back(key.n, acc.mean_eff());
            eff_points_done[ek] = true;
        }
    }

    Panel p1{"power per node vs n", "power (W)", {}};
    for (auto& [k, s] : power_series) p1.series.push_back(s);
    Panel p2{"energy efficiency vs n", "efficiency (Mb/J)", {}};
    for (auto& [k, s] : eff_series) p2.series.push_back(s);

    const double W = 760, H = 320;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << 2 * H
        << "' font-family='sans-serif'>\n<rect width='100%' height='100%' fill='white'/>\n";
    render_panel(out, p1, 0, 0, W, H);
    render_panel(out, p2, 0, H, W, H);
    out << "</svg>\n";
}

void write_svg_file(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelError("cannot write '" + path + "'");
    write_svg(rows, out);
    if (!out.flush()) throw ModelError("write failed for '" + path + "'");
}

}  // namespace fdwlan
