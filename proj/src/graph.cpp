#include "risnoma/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace risnoma {

WeightedGraph::WeightedGraph(int num_ues, int num_uavs)
    : U_(num_ues), A_(num_uavs), V_(num_ues + num_uavs),
      lap_(static_cast<std::size_t>(V_) * V_, 0.0) {}

void WeightedGraph::apply_rank_one(int v1, int v2, double delta) {
    lap_[v1 * V_ + v1] += delta;
    lap_[v2 * V_ + v2] += delta;
    lap_[v1 * V_ + v2] -= delta;
    lap_[v2 * V_ + v1] -= delta;
}

double WeightedGraph::edge_weight(int v1, int v2) const {
    for (const Edge& e : edges_) {
        if ((e.v1 == v1 && e.v2 == v2) || (e.v1 == v2 && e.v2 == v1)) return e.weight;
    }
    return 0.0;
}

void WeightedGraph::add_edge(int v1, int v2, double weight, EdgeKind kind) {
    if (weight <= 0.0) throw std::domain_error("add_edge: weight must be > 0");
    if (v1 == v2 || v1 < 0 || v2 < 0 || v1 >= V_ || v2 >= V_)
        throw std::domain_error("add_edge: bad vertex pair");
    for (Edge& e : edges_) {
        if ((e.v1 == v1 && e.v2 == v2) || (e.v1 == v2 && e.v2 == v1)) {
            apply_rank_one(v1, v2, weight - e.weight);
            e.weight = weight;
            e.kind = kind;
            return;
        }
    }
    edges_.push_back({v1, v2, weight, kind});
    apply_rank_one(v1, v2, weight);
}

std::string WeightedGraph::edge_list_text() const {
    static const char* names[] = {"uav-uav", "ue-uav", "ue-ris-uav"};
    std::ostringstream os;
    for (const Edge& e : edges_) {
        os << e.v1 << ' ' << e.v2 << ' ' << e.weight << ' '
           << names[static_cast<int>(e.kind)] << '\n';
    }
    return os.str();
}

std::vector<double> jacobi_eigenvalues(const std::vector<double>& sym, int n) {
    std::vector<double> a = sym;
    double fro = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(a[i * n + j] - a[j * n + i]) >
                1e-9 * (1.0 + std::abs(a[i * n + j])))
                throw std::domain_error("jacobi_eigenvalues: matrix is not symmetric");
        }
        for (int j = 0; j < n; ++j) fro += a[i * n + j] * a[i * n + j];
    }
    fro = std::sqrt(fro);
    // Absolute target per the artifact's scales; the relative floor keeps
    // the sweep finite when weights are configured in linear units.
    const double tol = std::max(1e-10, 1e-14 * fro);

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
        return std::sqrt(2.0 * s);
    };

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a[i * n + i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

double fiedler(const std::vector<double>& laplacian, int n) {
    if (n < 2) return 0.0;
    const auto eig = jacobi_eigenvalues(laplacian, n);
    return std::max(eig[1], 0.0);
}

double fiedler(const WeightedGraph& g) { return fiedler(g.laplacian(), g.V()); }

WeightedGraph build_original_graph(const Topology& topo, const ChannelSet& ch,
                                   const SimConfig& cfg) {
    WeightedGraph g(topo.U(), topo.A());
    auto edge_weight = [&](double snr_db) {
        return cfg.weight_unit == WeightUnit::db ? snr_db : db_to_lin(snr_db);
    };

    for (int a = 0; a < topo.A(); ++a) {
        for (int a2 = a + 1; a2 < topo.A(); ++a2) {
            const double d = distance(topo.uavs[a], topo.uavs[a2]);
            if (d <= 0.0) continue;
            const double snr = snr_uav_uav(cfg.P_watts, d, cfg.f_c, cfg.c, cfg.N0_dbm);
            if (snr >= cfg.gamma_th_uav_db) {
                g.add_edge(g.uav_vertex(a), g.uav_vertex(a2), edge_weight(snr), EdgeKind::uav_uav);
            }
        }
    }
    for (int u = 0; u < topo.U(); ++u) {
        for (int a = 0; a < topo.A(); ++a) {
            if (ch.blocked(u, a)) continue;
            const double snr_db = lin_to_db(ch.gamma_tilde(u, a, cfg));
            if (snr_db >= cfg.gamma_th_ue_db) {
                g.add_edge(u, g.uav_vertex(a), edge_weight(snr_db), EdgeKind::ue_uav_direct);
            }
        }
    }
    return g;
}

WeightedGraph add_ris_link(const WeightedGraph& g, int ue, int uav, double weight) {
    if (weight <= 0.0) throw std::domain_error("add_ris_link: weight must be > 0");
    WeightedGraph out = g;
    out.add_edge(ue, uav, weight, EdgeKind::ue_ris_uav);
    return out;
}

WeightedGraph remove_vertices(const WeightedGraph& g, const std::vector<int>& victims) {
    std::vector<char> gone(g.V(), 0);
    for (int v : victims) gone[v] = 1;
    std::vector<int> remap(g.V(), -1);
    int next = 0;
    int ues = 0, uavs = 0;
    for (int v = 0; v < g.V(); ++v) {
        if (gone[v]) continue;
        remap[v] = next++;
        (v < g.num_ues() ? ues : uavs) += 1;
    }
    // Survivors keep their relative order, so UEs still precede UAVs.
    WeightedGraph out(ues, uavs);
    for (const Edge& e : g.edges()) {
        if (gone[e.v1] || gone[e.v2]) continue;
        out.add_edge(remap[e.v1], remap[e.v2], e.weight, e.kind);
    }
    return out;
}

ReliabilityScores reliability(const WeightedGraph& g) {
    ReliabilityScores scores;
    scores.raw.resize(g.num_uavs(), 0.0);
    for (int a = 0; a < g.num_uavs(); ++a) {
        const WeightedGraph rest = remove_vertices(g, {g.uav_vertex(a)});
        double l2 = fiedler(rest);
        if (l2 < 1e-9) l2 = 0.0; // disconnected graphs leave eigensolver noise
        scores.raw[a] = l2;
    }
    const double mx = *std::max_element(scores.raw.begin(), scores.raw.end());
    scores.normalized = scores.raw;
    if (mx > 0.0) {
        for (double& c : scores.normalized) c /= mx;
    } else {
        // Disconnected network: every removal scores 0 and the QoS scaling
        // C_a * gamma_th would vanish, disabling the very links that could
        // reconnect it. With no connectivity signal, treat all UAVs alike.
        std::fill(scores.normalized.begin(), scores.normalized.end(), 1.0);
    }
    return scores;
}

} // namespace risnoma
