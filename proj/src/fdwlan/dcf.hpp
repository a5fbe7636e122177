// SPDX-License-Identifier: Apache-2.0
#ifndef FDWLAN_DCF_HPP
#define FDWLAN_DCF_HPP

#include "fdwlan/model.hpp"

namespace fdwlan {

/// Converged contention probabilities. In half duplex all nodes are
/// statistically identical, so tau_ap == tau_sta and p_ap == p_sta.
struct DcfSolution {
    DuplexMode mode = DuplexMode::HalfDuplex;
    double tau_sta = 0.0;
    double p_sta = 0.0;
    double tau_ap = 0.0;
    double p_ap = 0.0;
    double p_tr = 0.0;   // probability a renewal slot carries any transmission
    double p_s = 0.0;    // probability a busy slot is a success
    double residual = 0.0;
};

struct ChannelProbs {
    double p_tr;
    double p_s;
};

/// Per-slot transmission probability of a node with binary exponential
/// backoff as a function of its conditional collision probability p.
///
/// The closed form 2(1-2p) / [(1-2p)(W+1) + pW(1-(2p)^m)] has a removable
/// singularity at p = 1/2; cancelling the (1-2p) factor gives the
/// everywhere-finite equivalent used here:
///     tau(p) = 2 / [ (W+1) + p W (1 + 2p + ... + (2p)^(m-1)) ]
double backoff_tau(double p, int cw_min, int stages);

/// Half duplex: the coupled system p = 1 - (1-tau)^(n-1), tau = tau(p),
/// solved by bisection (the residual is monotone in p). n_nodes == 1 is
/// allowed as a solver-internal degenerate case and yields p = 0.
DcfSolution solve_hd(const WlanConfig& config);

/// Full duplex: a station collides only with other stations, so
/// p_sta = 1 - (1-tau_sta)^(n-2) closes on its own; the AP fails only
/// when two or more stations transmit, giving
/// p_ap = 1 - (1-tau_sta)^(n-1) - (n-1) tau_sta (1-tau_sta)^(n-2)
/// by direct evaluation. n = 2 is collision-free with exact zeros.
DcfSolution solve_ibfd(const WlanConfig& config);

/// P_tr and P_s for a converged solution.
ChannelProbs channel_probs(const DcfSolution& solution, const WlanConfig& config);

}  // namespace fdwlan

#endif
