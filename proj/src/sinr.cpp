#include "risnoma/sinr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace risnoma {

double m_constant(double f1, double f2) {
    if (f1 < 0.5 || f2 < 0.5) throw std::domain_error("m_constant: shapes must be >= 0.5");
    const double lg1 = std::lgamma(f1 + 0.5) - std::lgamma(f1);
    const double lg2 = std::lgamma(f2 + 0.5) - std::lgamma(f2);
    return std::exp(2.0 * lg1 + 2.0 * lg2 - std::log(f1) - std::log(f2));
}

namespace {

// Positions decoded after position i under descending-combined-power SIC.
std::vector<int> decode_order(const ClusterSinrInputs& in) {
    std::vector<int> order(in.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return in.combined_power(x) > in.combined_power(y);
    });
    return order;
}

double interference_sum(const ClusterSinrInputs& in, int i, InterferenceMode mode) {
    if (mode == InterferenceMode::full_cluster) {
        double s = 0.0;
        for (int j = 0; j < in.size(); ++j)
            if (j != i) s += in.combined_power(j);
        return s;
    }
    const auto order = decode_order(in);
    const auto pos = std::find(order.begin(), order.end(), i) - order.begin();
    double s = 0.0;
    for (std::size_t j = pos + 1; j < order.size(); ++j) s += in.combined_power(order[j]);
    return s;
}

} // namespace

double approx_sinr(const ClusterSinrInputs& in, int i, InterferenceMode mode) {
    if (in.size() == 0) throw std::domain_error("approx_sinr: empty cluster");
    return in.combined_power(i) / (interference_sum(in, i, mode) + 1.0);
}

std::vector<double> approx_sinr_all(const ClusterSinrInputs& in, InterferenceMode mode) {
    std::vector<double> out(in.size());
    for (int i = 0; i < in.size(); ++i) out[i] = approx_sinr(in, i, mode);
    return out;
}

double imperfect_csi_sinr(const ClusterSinrInputs& in, int i, double sigma2_e_ua,
                          double sigma2_e_ura, InterferenceMode mode) {
    if (sigma2_e_ua < 0.0 || sigma2_e_ura < 0.0)
        throw std::domain_error("imperfect_csi_sinr: error variances must be >= 0");
    const double den = interference_sum(in, i, mode) + 1.0 +
                       sigma2_e_ua * in.gamma_tilde[i] + sigma2_e_ura * in.gamma_hat[i];
    return in.combined_power(i) / den;
}

std::vector<double> exact_sinr(const ChannelSet& ch, const PhasePlan& plan,
                               std::span<const int> members, std::span<const int> elements,
                               int r, int a, const SimConfig& cfg) {
    const int n = static_cast<int>(members.size());
    if (n == 0) throw std::domain_error("exact_sinr: empty cluster");

    std::vector<int> offset(n + 1, 0);
    for (int i = 0; i < n; ++i) offset[i + 1] = offset[i] + elements[i];

    const double p = cfg.p_lin();
    const double sigma2 = cfg.sigma2_lin();

    // Noise-normalized realized power per member: own aligned range plus the
    // non-aligned contributions leaking through every other member's range.
    std::vector<double> power(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const int u = members[i];
        cplx acc = ch.blocked(u, a) ? cplx{0.0, 0.0}
                                    : std::sqrt(ch.g_ua(u, a)) * ch.h_direct(u, a);
        const double amp = std::sqrt(ch.gamma(u, r, a));
        for (int j = 0; j < n; ++j) {
            const auto row = plan.row(j);
            cplx part{0.0, 0.0};
            for (int k = offset[j]; k < offset[j + 1]; ++k) {
                part += ch.g(u, r, k) * ch.h(r, a, k) * std::polar(1.0, row[k]);
            }
            acc += amp * part;
        }
        power[i] = p * std::norm(acc) / sigma2;
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return power[x] > power[y]; });

    std::vector<double> sinr(n, 0.0);
    double remaining = std::accumulate(power.begin(), power.end(), 0.0);
    for (int idx : order) {
        remaining -= power[idx];
        sinr[idx] = power[idx] / (remaining + 1.0);
    }
    return sinr;
}

double exact_snr_full_ris(const ChannelSet& ch, int u, int r, int a, const SimConfig& cfg) {
    // Singleton cluster owning every element; shares the exact accumulation
    // path so that one-member NOMA and OMA agree bit for bit.
    const int members[1] = {u};
    const int elements[1] = {ch.K};
    const PhasePlan plan = optimal_phases(ch, members, r, a, 0);
    return exact_sinr(ch, plan, members, elements, r, a, cfg)[0];
}

double noma_sum_rate(std::span<const double> sinrs, double bandwidth) {
    double rate = 0.0;
    for (double s : sinrs) rate += bandwidth * std::log2(1.0 + s);
    return rate;
}

double oma_sum_rate(std::span<const double> snrs, double bandwidth, int U_r) {
    if (U_r <= 0) throw std::domain_error("oma_sum_rate: U_r must be >= 1");
    double rate = 0.0;
    for (double s : snrs) rate += bandwidth / U_r * std::log2(1.0 + s);
    return rate;
}

} // namespace risnoma
