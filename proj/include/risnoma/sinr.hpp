#pragma once

#include <span>
#include <vector>

#include "risnoma/channel.hpp"

namespace risnoma {

// Expectation constant of the double-Nakagami element product:
// m = (1/(f1*f2)) * (G(f1+1/2)/G(f1))^2 * (G(f2+1/2)/G(f2))^2.
double m_constant(double f1, double f2);

// Closed-form SINR inputs for one cluster, sorted descending by direct-link
// quality (index 0 is the strongest UE; ties break by UE id ascending).
struct ClusterSinrInputs {
    std::vector<int> ue;            // original UE ids in sorted order
    std::vector<double> gamma_tilde; // p*G_ua/sigma^2, 0 when blocked
    std::vector<double> gamma_hat;   // p*Gamma/sigma^2, 0 when out of range
    std::vector<double> alpha;       // allocation factors, same order
    double K = 0.0;
    double m = 0.0;

    int size() const { return static_cast<int>(ue.size()); }
    // Combined (noise-normalized) received power of one member.
    double combined_power(int i) const {
        return gamma_tilde[i] + alpha[i] * alpha[i] * K * K * m * gamma_hat[i];
    }
};

// Approximate per-UE SINR. In `sic` mode interference comes only from
// members decoded later (descending combined power, ties by position);
// `full_cluster` keeps every other member in the denominator.
double approx_sinr(const ClusterSinrInputs& in, int i, InterferenceMode mode);
std::vector<double> approx_sinr_all(const ClusterSinrInputs& in, InterferenceMode mode);

// Approximate SINR with CSI estimation error terms added to the denominator.
double imperfect_csi_sinr(const ClusterSinrInputs& in, int i, double sigma2_e_ua,
                          double sigma2_e_ura, InterferenceMode mode);

// Exact per-member SINRs for one cluster from realized fading. Each member
// owns a contiguous element range (sizes in `elements`, cluster order);
// interference through foreign ranges uses the interferers' phase rows.
// Decode order is descending realized power, ties by position.
std::vector<double> exact_sinr(const ChannelSet& ch, const PhasePlan& plan,
                               std::span<const int> members, std::span<const int> elements,
                               int r, int a, const SimConfig& cfg);

// Exact interference-free SNR of one UE served by the whole RIS (phases
// cophased with its direct link over all K elements).
double exact_snr_full_ris(const ChannelSet& ch, int u, int r, int a, const SimConfig& cfg);

// NOMA sum rate: sum_u B*log2(1+SINR_u).
double noma_sum_rate(std::span<const double> sinrs, double bandwidth);

// OMA sum rate: each UE on bandwidth/U_r, interference-free.
double oma_sum_rate(std::span<const double> snrs, double bandwidth, int U_r);

} // namespace risnoma
