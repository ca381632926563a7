#include "risnoma/channel.hpp"

#include <algorithm>
#include <cmath>

#include "risnoma/errors.hpp"

namespace risnoma {

double pathloss_uav_uav(double d, double f_c, double c) {
    if (d <= 0.0) throw std::domain_error("pathloss_uav_uav: distance must be > 0");
    return 20.0 * std::log10(4.0 * std::numbers::pi * f_c * d / c);
}

double snr_uav_uav(double P_watts, double d, double f_c, double c, double N0_dbm) {
    if (P_watts <= 0.0) throw std::domain_error("snr_uav_uav: power must be > 0");
    return 10.0 * std::log10(P_watts) - pathloss_uav_uav(d, f_c, c) - N0_dbm;
}

double largescale_gain(double d, PathlossModel model, double tau, double beta0) {
    if (d <= 0.0) throw std::domain_error("largescale_gain: distance must be > 0");
    switch (model) {
    case PathlossModel::reference_beta0:
        return std::sqrt(beta0) / d;
    case PathlossModel::exponent_only:
        return std::pow(d, -tau / 2.0);
    }
    return 0.0;
}

double largescale_gain_direct(double d, PathlossModel model, double tau, double beta0) {
    const double amp = largescale_gain(d, model, tau, beta0);
    return amp * amp;
}

ChannelSet realize_channels(const Topology& topo, const SimConfig& cfg, Rng& rng) {
    ChannelSet ch;
    ch.U = topo.U();
    ch.R = topo.R();
    ch.A = topo.A();
    ch.K = cfg.K;

    ch.direct.resize(static_cast<std::size_t>(ch.U) * ch.A);
    ch.ue_ris.resize(static_cast<std::size_t>(ch.U) * ch.R * ch.K);
    ch.ris_uav.resize(static_cast<std::size_t>(ch.R) * ch.A * ch.K);
    ch.G_ua.resize(static_cast<std::size_t>(ch.U) * ch.A);
    ch.G_ur.resize(static_cast<std::size_t>(ch.U) * ch.R);
    ch.H_ra.resize(static_cast<std::size_t>(ch.R) * ch.A);
    ch.Gamma.resize(static_cast<std::size_t>(ch.U) * ch.R * ch.A);

    for (auto& h : ch.direct) h = rng.fading(cfg.f_u, cfg.spread);
    for (auto& g : ch.ue_ris) g = rng.fading(cfg.f1, cfg.spread);
    for (auto& h : ch.ris_uav) h = rng.fading(cfg.f2, cfg.spread);

    const double p = cfg.p_lin();
    const double sigma2 = cfg.sigma2_lin();
    const double th_ue = db_to_lin(cfg.gamma_th_ue_db);

    for (int u = 0; u < ch.U; ++u) {
        for (int a = 0; a < ch.A; ++a) {
            double gain = largescale_gain_direct(distance(topo.ues[u], topo.uavs[a]),
                                                 cfg.pathloss, cfg.tau, cfg.beta0);
            if (p * gain / sigma2 < th_ue) gain = 0.0;
            ch.G_ua[u * ch.A + a] = gain;
        }
    }
    if (cfg.scenario.active) {
        for (const auto& [u, a] : cfg.scenario.blocked) ch.G_ua[u * ch.A + a] = 0.0;
    }

    for (int u = 0; u < ch.U; ++u) {
        for (int r = 0; r < ch.R; ++r) {
            const double d = distance(topo.ues[u], topo.riss[r]);
            ch.G_ur[u * ch.R + r] =
                d <= cfg.R_ur ? largescale_gain(d, cfg.pathloss, cfg.tau, cfg.beta0) : 0.0;
        }
    }
    for (int r = 0; r < ch.R; ++r) {
        for (int a = 0; a < ch.A; ++a) {
            const double d = distance(topo.riss[r], topo.uavs[a]);
            ch.H_ra[r * ch.A + a] =
                d <= cfg.R_ra ? largescale_gain(d, cfg.pathloss, cfg.tau, cfg.beta0) : 0.0;
        }
    }
    for (int u = 0; u < ch.U; ++u)
        for (int r = 0; r < ch.R; ++r)
            for (int a = 0; a < ch.A; ++a)
                ch.Gamma[(u * ch.R + r) * ch.A + a] = ch.G_ur[u * ch.R + r] * ch.H_ra[r * ch.A + a];

    return ch;
}

PhasePlan optimal_phases(const ChannelSet& ch, std::span<const int> members, int r, int a, int bits) {
    PhasePlan plan;
    plan.K = ch.K;
    plan.bits = 0;
    plan.theta.resize(members.size() * static_cast<std::size_t>(ch.K));
    for (std::size_t i = 0; i < members.size(); ++i) {
        const int u = members[i];
        const cplx hd = ch.h_direct(u, a);
        const double ref = ch.blocked(u, a) ? 0.0 : std::arg(hd);
        double* row = plan.theta.data() + i * static_cast<std::size_t>(ch.K);
        for (int k = 0; k < ch.K; ++k) {
            row[k] = wrap_angle(ref - std::arg(ch.g(u, r, k)) - std::arg(ch.h(r, a, k)));
        }
    }
    if (bits > 0) return quantize_phases(plan, bits);
    return plan;
}

PhasePlan quantize_phases(const PhasePlan& plan, int bits) {
    if (bits <= 0) throw std::domain_error("quantize_phases: bits must be >= 1");
    PhasePlan q = plan;
    q.bits = bits;
    const double levels = static_cast<double>(1 << bits);
    const double step = two_pi / levels;
    for (double& t : q.theta) {
        double c = std::floor(t / step + 0.5);
        // Half-way points snap down.
        if (t / step + 0.5 == c) c -= 1.0;
        c = std::fmod(c, levels);
        if (c < 0.0) c += levels;
        t = c * step;
    }
    return q;
}

double aligned_gain(const ChannelSet& ch, std::span<const double> theta, int u, int r, int a) {
    cplx acc{0.0, 0.0};
    for (int k = 0; k < ch.K; ++k) {
        acc += ch.g(u, r, k) * ch.h(r, a, k) * std::polar(1.0, theta[k]);
    }
    return std::abs(acc);
}

} // namespace risnoma
