#include "risnoma/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace risnoma {

PartitionResult optimal_partition(const ClusterSinrInputs& in, double threshold,
                                  double sigma2_e_ua, double sigma2_e_ura) {
    const int n = in.size();
    if (n == 0) throw std::domain_error("optimal_partition: empty cluster");
    const double boost = in.K * in.K * in.m; // K^2 m

    PartitionResult out;
    out.alpha.assign(n, 0.0);

    std::vector<int> active(n);
    std::iota(active.begin(), active.end(), 0);

    while (!active.empty()) {
        std::fill(out.alpha.begin(), out.alpha.end(), 0.0);
        bool restart = false;
        double weaker_sum = 0.0; // sum of gamma_tilde + alpha^2 K^2 m gamma_hat below
        for (int idx = static_cast<int>(active.size()) - 1; idx >= 1 && !restart; --idx) {
            const int i = active[idx];
            double a = 0.0;
            if (in.gamma_tilde[i] < threshold) {
                if (in.gamma_hat[i] <= 0.0) {
                    // No usable cascade and the direct link misses the target.
                    out.dropped.push_back(in.ue[i]);
                    active.erase(active.begin() + idx);
                    restart = true;
                    break;
                }
                const double den = weaker_sum + 1.0 + sigma2_e_ua * in.gamma_tilde[i] +
                                   sigma2_e_ura * in.gamma_hat[i];
                const double need = threshold * den - in.gamma_tilde[i];
                a = std::sqrt(std::max(need, 0.0) / (boost * in.gamma_hat[i]));
            }
            out.alpha[i] = a;
            weaker_sum += in.gamma_tilde[i] + a * a * boost * in.gamma_hat[i];
        }
        if (restart) continue;

        double others = 0.0;
        for (std::size_t idx = 1; idx < active.size(); ++idx) others += out.alpha[active[idx]];
        if (others > 1.0) {
            const int weakest = active.back();
            out.dropped.push_back(in.ue[weakest]);
            active.pop_back();
            continue;
        }
        out.alpha[active.front()] = 1.0 - others;
        out.feasible = true;
        break;
    }

    out.elements = elements_from_alpha(out.alpha, static_cast<int>(in.K));
    return out;
}

std::vector<int> elements_from_alpha(std::span<const double> alpha, int K) {
    const int n = static_cast<int>(alpha.size());
    std::vector<int> counts(n, 0);
    double total = 0.0;
    for (double a : alpha) total += a;
    if (total <= 0.0) return counts;

    std::vector<double> rem(n, 0.0);
    int assigned = 0;
    for (int i = 0; i < n; ++i) {
        const double quota = static_cast<double>(K) * alpha[i] / total;
        counts[i] = static_cast<int>(std::floor(quota));
        rem[i] = quota - counts[i];
        assigned += counts[i];
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return rem[x] > rem[y]; });
    for (int i = 0; assigned < K; ++i) {
        counts[order[i % n]] += 1;
        ++assigned;
    }
    // A positive share always earns at least one element.
    for (int i = 0; i < n; ++i) {
        if (alpha[i] > 0.0 && counts[i] == 0) {
            const int donor =
                static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
            counts[donor] -= 1;
            counts[i] += 1;
        }
    }
    return counts;
}

namespace {

// Allocation-free SIC evaluation of one grid point; the acceptance oracle
// walks hundreds of millions of these.
bool grid_point_sum(const ClusterSinrInputs& in, const double* alpha, double threshold,
                    double& sum_out) {
    const int n = in.size();
    const double boost = in.K * in.K * in.m;
    double power[8];
    int order[8];
    for (int i = 0; i < n; ++i) {
        power[i] = in.gamma_tilde[i] + alpha[i] * alpha[i] * boost * in.gamma_hat[i];
        order[i] = i;
    }
    for (int i = 1; i < n; ++i) { // stable insertion sort, descending power
        const int oi = order[i];
        int j = i - 1;
        while (j >= 0 && power[order[j]] < power[oi]) {
            order[j + 1] = order[j];
            --j;
        }
        order[j + 1] = oi;
    }
    double remaining = 0.0;
    for (int i = 0; i < n; ++i) remaining += power[i];
    double sum = 0.0;
    const double floor = threshold * (1.0 - 1e-12);
    for (int i = 0; i < n; ++i) {
        const int idx = order[i];
        remaining -= power[idx];
        const double sinr = power[idx] / (remaining + 1.0);
        if (sinr < floor) return false;
        sum += sinr;
    }
    sum_out = sum;
    return true;
}

void oracle_scan(const ClusterSinrInputs& in, double* alpha, int pos, int left, int N,
                 double threshold, double& best, std::vector<double>& best_alpha,
                 bool& found) {
    const int n = in.size();
    if (pos == n - 1) {
        alpha[pos] = static_cast<double>(left) / N;
        double sum = 0.0;
        if (!grid_point_sum(in, alpha, threshold, sum)) return;
        found = true;
        if (sum > best) {
            best = sum;
            best_alpha.assign(alpha, alpha + n);
        }
        return;
    }
    for (int c = 0; c <= left; ++c) {
        alpha[pos] = static_cast<double>(c) / N;
        oracle_scan(in, alpha, pos + 1, left - c, N, threshold, best, best_alpha, found);
    }
}

} // namespace

PartitionResult partition_oracle(const ClusterSinrInputs& in, double threshold,
                                 double resolution) {
    if (in.size() == 0) throw std::domain_error("partition_oracle: empty cluster");
    if (in.size() > 8) throw std::domain_error("partition_oracle: cluster too large");
    if (resolution <= 0.0 || resolution > 1.0)
        throw std::domain_error("partition_oracle: bad resolution");

    const int N = static_cast<int>(std::lround(1.0 / resolution));
    double alpha[8] = {0};
    double best = -1.0;
    std::vector<double> best_alpha(in.size(), 0.0);
    bool found = false;
    oracle_scan(in, alpha, 0, N, N, threshold, best, best_alpha, found);

    PartitionResult out;
    out.alpha = best_alpha;
    out.feasible = found;
    out.elements = elements_from_alpha(out.alpha, static_cast<int>(in.K));
    return out;
}

} // namespace risnoma
