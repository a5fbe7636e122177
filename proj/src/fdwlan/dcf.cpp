// SPDX-License-Identifier: Apache-2.0
#include "fdwlan/dcf.hpp"

#include <cmath>

namespace fdwlan {

namespace {

constexpr double kBracketTol = 1e-12;
constexpr int kMaxIterations = 10000;

/// Bisection for a monotone increasing residual on [0, 1].
template <typename F>
double bisect(F&& residual) {
    double lo = 0.0, hi = 1.0;
    if (residual(lo) >= 0.0) return lo;
    if (residual(hi) <= 0.0) return hi;
    int iters = 0;
    while (hi - lo > kBracketTol) {
        if (++iters > kMaxIterations)
            throw ModelError("fixed-point bisection did not converge");
        double mid = 0.5 * (lo + hi);
        if (residual(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double backoff_tau(double p, int cw_min, int stages) {
    double geom = 0.0;
    double term = 1.0;
    for (int k = 0; k < stages; ++k) {
        geom += term;
        term *= 2.0 * p;
    }
    return 2.0 / ((cw_min + 1) + p * cw_min * geom);
}

DcfSolution solve_hd(const WlanConfig& config) {
    const int n = config.n_nodes;
    const int w = config.cw_min;
    const int m = config.backoff_stages();

    DcfSolution s;
    s.mode = DuplexMode::HalfDuplex;
    if (n <= 1) {
        s.p_sta = 0.0;
        s.tau_sta = backoff_tau(0.0, w, m);
    } else {
        auto residual = [&](double p) {
            return p - (1.0 - std::pow(1.0 - backoff_tau(p, w, m), n - 1));
        };
        s.p_sta = bisect(residual);
        s.tau_sta = backoff_tau(s.p_sta, w, m);
        s.residual = std::fabs(residual(s.p_sta));
    }
    s.tau_ap = s.tau_sta;
    s.p_ap = s.p_sta;
    auto cp = channel_probs(s, config);
    s.p_tr = cp.p_tr;
    s.p_s = cp.p_s;
    return s;
}

DcfSolution solve_ibfd(const WlanConfig& config) {
    const int n = config.n_nodes;
    const int w = config.cw_min;
    const int m = config.backoff_stages();

    DcfSolution s;
    s.mode = DuplexMode::InBandFullDuplex;
    if (n == 2) {
        // single station: no contender on either side, exact zeros
        s.p_sta = 0.0;
        s.p_ap = 0.0;
        s.tau_sta = backoff_tau(0.0, w, m);
        s.tau_ap = s.tau_sta;
    } else {
        auto residual = [&](double p) {
            return p - (1.0 - std::pow(1.0 - backoff_tau(p, w, m), n - 2));
        };
        s.p_sta = bisect(residual);
        s.tau_sta = backoff_tau(s.p_sta, w, m);
        // AP side follows directly from the station solution.
        double q = 1.0 - s.tau_sta;
        s.p_ap = 1.0 - std::pow(q, n - 1) - (n - 1) * s.tau_sta * std::pow(q, n - 2);
        s.tau_ap = backoff_tau(s.p_ap, w, m);
        s.residual = std::fabs(residual(s.p_sta));
    }
    auto cp = channel_probs(s, config);
    s.p_tr = cp.p_tr;
    s.p_s = cp.p_s;
    return s;
}

ChannelProbs channel_probs(const DcfSolution& solution, const WlanConfig& config) {
    const int n = config.n_nodes;
    ChannelProbs cp{0.0, 0.0};
    if (solution.mode == DuplexMode::HalfDuplex) {
        double tau = solution.tau_sta;
        cp.p_tr = 1.0 - std::pow(1.0 - tau, n);
        cp.p_s = cp.p_tr > 0.0
                     ? n * tau * std::pow(1.0 - tau, n - 1) / cp.p_tr
                     : 0.0;
    } else {
        double ta = solution.tau_ap;
        double ts = solution.tau_sta;
        double q = 1.0 - ts;
        cp.p_tr = 1.0 - (1.0 - ta) * std::pow(q, n - 1);
        double success = ta * std::pow(q, n - 1) + (n - 1) * ts * std::pow(q, n - 2);
        cp.p_s = cp.p_tr > 0.0 ? success / cp.p_tr : 0.0;
    }
    return cp;
}

}  // namespace fdwlan
