#pragma once

#include <complex>
#include <span>
#include <vector>

#include "risnoma/topology.hpp"

namespace risnoma {

using cplx = std::complex<double>;

// One stochastic realization of every channel in the snapshot.
//
// Large-scale quantities follow the amplitude/power split used throughout:
//   G_ur, H_ra  amplitude gains of the two cascade hops (0 when out of range),
//   Gamma       their product, the cascade's power-like multiplier,
//   G_ua        direct-link power gain (0 when the link is blocked).
struct ChannelSet {
    int U = 0, R = 0, A = 0, K = 0;

    std::vector<cplx> direct;  // U x A small-scale fading
    std::vector<cplx> ue_ris;  // U x R x K
    std::vector<cplx> ris_uav; // R x A x K

    std::vector<double> G_ua;  // U x A
    std::vector<double> G_ur;  // U x R
    std::vector<double> H_ra;  // R x A
    std::vector<double> Gamma; // U x R x A

    cplx h_direct(int u, int a) const { return direct[u * A + a]; }
    cplx g(int u, int r, int k) const { return ue_ris[(u * R + r) * K + k]; }
    cplx h(int r, int a, int k) const { return ris_uav[(r * A + a) * K + k]; }
    double g_ua(int u, int a) const { return G_ua[u * A + a]; }
    double g_ur(int u, int r) const { return G_ur[u * R + r]; }
    double h_ra(int r, int a) const { return H_ra[r * A + a]; }
    double gamma(int u, int r, int a) const { return Gamma[(u * R + r) * A + a]; }

    // Direct-link SNR p*G_ua/sigma^2 (linear); 0 when blocked.
    double gamma_tilde(int u, int a, const SimConfig& cfg) const {
        return cfg.p_lin() * g_ua(u, a) / cfg.sigma2_lin();
    }
    // Cascaded-link SNR p*Gamma/sigma^2 (linear); 0 when out of range.
    double gamma_hat(int u, int r, int a, const SimConfig& cfg) const {
        return cfg.p_lin() * gamma(u, r, a) / cfg.sigma2_lin();
    }
    bool blocked(int u, int a) const { return g_ua(u, a) == 0.0; }
};

// Phase shifts for one RIS cluster: a full-K row per cluster member. The
// member at sorted position i owns a contiguous element range; the other
// rows describe the phases its interference sees.
struct PhasePlan {
    int K = 0;
    int bits = 0; // 0 = continuous
    std::vector<double> theta; // members x K, radians in [0, 2*pi)

    std::span<const double> row(int member) const {
        return {theta.data() + static_cast<std::size_t>(member) * K, static_cast<std::size_t>(K)};
    }
    int members() const { return K > 0 ? static_cast<int>(theta.size()) / K : 0; }
};

// Free-space UAV-UAV path loss, dB: 20*log10(4*pi*f_c*d/c).
double pathloss_uav_uav(double d, double f_c, double c);

// UAV-UAV SNR in dB: 10*log10(P) - PL - N0_dbm.
double snr_uav_uav(double P_watts, double d, double f_c, double c, double N0_dbm);

// Large-scale amplitude gain of one hop: sqrt(beta0)*d^(-tau/2) for the
// reference-gain model (tau = 2 there), d^(-tau/2) for the bare-exponent one.
double largescale_gain(double d, PathlossModel model, double tau, double beta0);

// Direct-link power gain (squared hop amplitude gain).
double largescale_gain_direct(double d, PathlossModel model, double tau, double beta0);

// Draw all fading and large-scale terms for one snapshot. Draw order is
// fixed (direct row-major, then ue_ris, then ris_uav) so a given stream
// always produces the same realization. Direct links whose distance-based
// SNR falls below gamma_th_ue, or that appear in the scenario's blocked
// list, get G_ua = 0.
ChannelSet realize_channels(const Topology& topo, const SimConfig& cfg, Rng& rng);

// Phase plan that cophases each member's cascade with its direct link:
// theta = arg(h_direct) - arg(g) - arg(h). Members without a direct link
// use reference phase 0 (the aligned magnitude is invariant to it). A
// bits > 0 plan is quantized before returning.
PhasePlan optimal_phases(const ChannelSet& ch, std::span<const int> members, int r, int a, int bits);

// Snap every phase to the nearest of the 2^b grid points {2*pi*c/2^b};
// exact ties resolve to the lower grid point.
PhasePlan quantize_phases(const PhasePlan& plan, int bits);

// |sum_k g^(k) h^(k) e^{j theta_k}| for UE u via RIS r toward UAV a.
double aligned_gain(const ChannelSet& ch, std::span<const double> theta, int u, int r, int a);

} // namespace risnoma
