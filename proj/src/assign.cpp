#include "risnoma/assign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace risnoma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Kuhn-Munkres with potentials on a square min-cost matrix (1-based
// internals). Returns column -> row.
std::vector<int> km_assign(const std::vector<double>& cost, int n) {
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    return p;
}

// Optimal value and row->col matching without canonicalization. Rows/cols
// beyond the real extent are zero-utility dummies.
LsaResult lsa_raw(const UtilityMatrix& O) {
    const int n = std::max(O.rows, O.cols);
    LsaResult res;
    res.row_to_col.assign(O.rows, -1);
    if (n == 0) return res;
    std::vector<double> cost(static_cast<std::size_t>(n) * n, 0.0);
    for (int r = 0; r < O.rows; ++r)
        for (int c = 0; c < O.cols; ++c) cost[r * n + c] = -O.at(r, c);
    const auto p = km_assign(cost, n);
    for (int j = 1; j <= n; ++j) {
        const int r = p[j] - 1;
        const int c = j - 1;
        if (r < O.rows && c < O.cols) {
            res.row_to_col[r] = c;
            res.value += O.at(r, c);
        }
    }
    return res;
}

double lsa_value_excluding(const UtilityMatrix& O, int first_row,
                           const std::vector<char>& col_used) {
    UtilityMatrix sub;
    sub.rows = O.rows - first_row;
    std::vector<int> cols;
    for (int c = 0; c < O.cols; ++c)
        if (!col_used[c]) cols.push_back(c);
    sub.cols = static_cast<int>(cols.size());
    sub.v.resize(static_cast<std::size_t>(sub.rows) * sub.cols);
    for (int r = 0; r < sub.rows; ++r)
        for (int c = 0; c < sub.cols; ++c) sub.at(r, c) = O.at(first_row + r, cols[c]);
    return lsa_raw(sub).value;
}

} // namespace

LsaResult lsa_solve(const UtilityMatrix& O) {
    LsaResult best = lsa_raw(O);
    const int n = std::max(O.rows, O.cols);
    if (n == 0 || n > 24) return best; // keep the solver cubic for big inputs

    // Lexicographic canonicalization: walk rows in order and commit the
    // smallest column (dummy last) that still reaches the optimal value.
    const double eps = 1e-9 * (1.0 + std::abs(best.value));
    std::vector<char> col_used(O.cols, 0);
    double fixed = 0.0;
    LsaResult canon;
    canon.row_to_col.assign(O.rows, -1);
    for (int r = 0; r < O.rows; ++r) {
        int pick = -1;
        for (int c = 0; c < O.cols; ++c) {
            if (col_used[c]) continue;
            col_used[c] = 1;
            const double rest = lsa_value_excluding(O, r + 1, col_used);
            col_used[c] = 0;
            if (fixed + O.at(r, c) + rest >= best.value - eps) {
                pick = c;
                break;
            }
        }
        if (pick < 0) {
            // Row stays on a dummy; remaining rows must carry the value.
            const double rest = lsa_value_excluding(O, r + 1, col_used);
            if (fixed + rest < best.value - eps) return best;
        } else {
            col_used[pick] = 1;
            fixed += O.at(r, pick);
        }
        canon.row_to_col[r] = pick;
    }
    canon.value = fixed;
    return canon;
}

std::vector<std::pair<int, int>> cluster_uav_ris(const Topology& topo,
                                                 const std::vector<double>& reliability_scores,
                                                 const SimConfig& cfg) {
    struct Cand {
        int a;
        double score;
    };
    std::vector<Cand> eligible;
    for (int a = 0; a < topo.A(); ++a) {
        double dmin = kInf;
        for (int r = 0; r < topo.R(); ++r)
            dmin = std::min(dmin, distance(topo.riss[r], topo.uavs[a]));
        if (dmin <= cfg.R_ra) eligible.push_back({a, reliability_scores[a]});
    }
    std::stable_sort(eligible.begin(), eligible.end(),
                     [](const Cand& x, const Cand& y) { return x.score < y.score; });

    std::vector<char> ris_taken(topo.R(), 0);
    std::vector<std::pair<int, int>> pairs; // (ris, uav)
    for (const Cand& cand : eligible) {
        if (static_cast<int>(pairs.size()) == topo.R()) break;
        int best_r = -1;
        double best_d = kInf;
        for (int r = 0; r < topo.R(); ++r) {
            if (ris_taken[r]) continue;
            const double d = distance(topo.riss[r], topo.uavs[cand.a]);
            if (d <= cfg.R_ra && d < best_d) {
                best_d = d;
                best_r = r;
            }
        }
        if (best_r < 0) continue; // no reachable RIS left for this UAV
        ris_taken[best_r] = 1;
        pairs.emplace_back(best_r, cand.a);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

std::vector<int> sort_ues_by_rss(const ChannelSet& ch, const SimConfig& cfg) {
    std::vector<int> ues;
    std::vector<double> rss;
    for (int u = 0; u < ch.U; ++u) {
        bool in_range = false;
        for (int r = 0; r < ch.R; ++r) in_range = in_range || ch.g_ur(u, r) > 0.0;
        if (!in_range) continue;
        double best = -kInf;
        for (int a = 0; a < ch.A; ++a) {
            if (!ch.blocked(u, a)) best = std::max(best, ch.gamma_tilde(u, a, cfg));
        }
        ues.push_back(u);
        rss.push_back(best); // -inf for fully blocked UEs
    }
    std::vector<int> order(ues.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return rss[x] < rss[y]; });
    std::vector<int> out(ues.size());
    for (std::size_t i = 0; i < order.size(); ++i) out[i] = ues[order[i]];
    return out;
}

std::vector<std::vector<int>> partition_waves(const std::vector<int>& sorted_ues, int R, int U_r) {
    std::vector<std::vector<int>> waves(U_r);
    const int n = static_cast<int>(sorted_ues.size());
    for (int i = 0; i < U_r; ++i) {
        const int lo = i * R;
        const int hi = std::min((i + 1) * R, n);
        for (int j = lo; j < hi; ++j) waves[i].push_back(sorted_ues[j]);
    }
    return waves;
}

ClusterSinrInputs cluster_inputs(const ChannelSet& ch, const std::vector<int>& members,
                                 int r, int a, const SimConfig& cfg, double m) {
    ClusterSinrInputs in;
    in.K = static_cast<double>(ch.K);
    in.m = m;
    std::vector<int> order = members;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        const double gx = ch.gamma_tilde(x, a, cfg);
        const double gy = ch.gamma_tilde(y, a, cfg);
        if (gx != gy) return gx > gy;
        return x < y;
    });
    for (int u : order) {
        in.ue.push_back(u);
        in.gamma_tilde.push_back(ch.gamma_tilde(u, a, cfg));
        in.gamma_hat.push_back(ch.gamma_hat(u, r, a, cfg));
        in.alpha.push_back(0.0);
    }
    return in;
}

UtilityMatrix utility_matrix(const std::vector<std::vector<int>>& clusters,
                             const std::vector<std::pair<int, int>>& ris_uav,
                             const std::vector<int>& wave, const ChannelSet& ch,
                             const SimConfig& cfg, double m) {
    UtilityMatrix O;
    O.rows = static_cast<int>(clusters.size());
    O.cols = static_cast<int>(wave.size());
    O.v.assign(static_cast<std::size_t>(O.rows) * O.cols, 0.0);
    for (int i = 0; i < O.rows; ++i) {
        const auto [r, a] = ris_uav[i];
        for (int c = 0; c < O.cols; ++c) {
            std::vector<int> temp = clusters[i];
            temp.push_back(wave[c]);
            ClusterSinrInputs in = cluster_inputs(ch, temp, r, a, cfg, m);
            std::fill(in.alpha.begin(), in.alpha.end(), 1.0 / static_cast<double>(in.size()));
            const auto sinrs = approx_sinr_all(in, cfg.sinr_mode);
            O.at(i, c) = std::accumulate(sinrs.begin(), sinrs.end(), 0.0);
        }
    }
    return O;
}

Assignment cluster_ues(const Topology& topo, const ChannelSet& ch,
                       const std::vector<double>& reliability_scores, const SimConfig& cfg,
                       double m) {
    Assignment out;
    out.U = topo.U();
    out.A = topo.A();
    out.R = topo.R();
    out.Z.assign(static_cast<std::size_t>(out.U) * out.R, 0);
    out.X.assign(static_cast<std::size_t>(out.A) * out.R, 0);

    const auto pairs = cluster_uav_ris(topo, reliability_scores, cfg);
    const int R_eff = static_cast<int>(pairs.size());
    if (R_eff == 0) return out;

    const auto sorted_ues = sort_ues_by_rss(ch, cfg);
    const auto waves = partition_waves(sorted_ues, R_eff, cfg.U_r);

    std::vector<std::vector<int>> clusters(R_eff);
    for (int i = 0; i < R_eff && i < static_cast<int>(waves[0].size()); ++i) {
        clusters[i].push_back(waves[0][i]);
    }
    for (int w = 1; w < cfg.U_r; ++w) {
        if (waves[w].empty()) break;
        const UtilityMatrix O = utility_matrix(clusters, pairs, waves[w], ch, cfg, m);
        const LsaResult lsa = lsa_solve(O);
        for (int i = 0; i < R_eff; ++i) {
            if (lsa.row_to_col[i] >= 0) clusters[i].push_back(waves[w][lsa.row_to_col[i]]);
        }
    }

    for (int i = 0; i < R_eff; ++i) {
        const auto [r, a] = pairs[i];
        out.ris.push_back(r);
        out.uav.push_back(a);
        out.members.push_back(clusters[i]);
        out.X[a * out.R + r] = 1;
        for (int u : clusters[i]) out.Z[u * out.R + r] = 1;
    }
    return out;
}

std::string Assignment::export_text() const {
    std::ostringstream os;
    os << "Z (" << U << "x" << R << ")\n";
    for (int u = 0; u < U; ++u) {
        for (int r = 0; r < R; ++r) os << int(Z[u * R + r]) << (r + 1 == R ? '\n' : ' ');
    }
    os << "X (" << A << "x" << R << ")\n";
    for (int a = 0; a < A; ++a) {
        for (int r = 0; r < R; ++r) os << int(X[a * R + r]) << (r + 1 == R ? '\n' : ' ');
    }
    for (int i = 0; i < clusters(); ++i) {
        os << "cluster ris=" << ris[i] << " uav=" << uav[i] << " ues=";
        for (std::size_t j = 0; j < members[i].size(); ++j) {
            os << members[i][j] << (j + 1 == members[i].size() ? '\n' : ',');
        }
        if (members[i].empty()) os << '\n';
    }
    return os.str();
}

} // namespace risnoma
