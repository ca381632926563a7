#include "risnoma/validate_suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include "risnoma/csvout.hpp"
#include "risnoma/partition.hpp"
#include "risnoma/presets.hpp"

namespace risnoma {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool check(bool ok, const char* name) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", name);
    return ok;
}

bool eigensolver_checks() {
    bool ok = true;
    {
        WeightedGraph p3(3, 0);
        p3.add_edge(0, 1, 1.0, EdgeKind::ue_uav_direct);
        p3.add_edge(1, 2, 1.0, EdgeKind::ue_uav_direct);
        ok = ok && std::abs(fiedler(p3) - 1.0) < 1e-8;
    }
    {
        WeightedGraph k4(4, 0);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j, 1.0, EdgeKind::ue_uav_direct);
        ok = ok && std::abs(fiedler(k4) - 4.0) < 1e-8;
    }
    Rng rng(2024);
    for (int it = 0; it < 200 && ok; ++it) {
        const int n = 3 + static_cast<int>(rng.uniform_index(8));
        WeightedGraph g(n, 0);
        UnionFind uf(n);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (rng.uniform() < 0.3) {
                    g.add_edge(i, j, rng.uniform(0.5, 2.0), EdgeKind::ue_uav_direct);
                    uf.unite(i, j);
                }
            }
        }
        bool connected = true;
        for (int i = 1; i < n; ++i) connected = connected && uf.find(i) == uf.find(0);
        ok = ok && ((fiedler(g) > 1e-9) == connected);
    }
    return check(ok, "eigensolver: analytic spectra and connectivity");
}

bool lsa_checks() {
    Rng rng(77);
    bool ok = true;
    for (int it = 0; it < 200 && ok; ++it) {
        const int n = 2 + static_cast<int>(rng.uniform_index(4));
        UtilityMatrix O;
        O.rows = O.cols = n;
        O.v.resize(static_cast<std::size_t>(n) * n);
        for (auto& x : O.v) x = rng.uniform(0.0, 10.0);

        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        double best = -1.0;
        do {
            double v = 0.0;
            for (int r = 0; r < n; ++r) v += O.at(r, perm[r]);
            best = std::max(best, v);
        } while (std::next_permutation(perm.begin(), perm.end()));

        ok = ok && std::abs(lsa_solve(O).value - best) < 1e-9;
    }
    return check(ok, "assignment: optimal value matches brute force");
}

bool partition_checks() {
    Rng rng(51);
    bool ok = true;
    for (int it = 0; it < 100 && ok; ++it) {
        const int n = 2 + static_cast<int>(rng.uniform_index(2));
        ClusterSinrInputs in;
        in.K = 200.0;
        in.m = m_constant(5.0, 5.0);
        std::vector<double> gt(n);
        for (auto& g : gt) g = rng.uniform(0.0, 200.0);
        std::sort(gt.rbegin(), gt.rend());
        double hi = 1e9;
        for (int i = 0; i < n; ++i) {
            in.ue.push_back(i);
            in.gamma_tilde.push_back(gt[i]);
            in.gamma_hat.push_back(rng.uniform(hi / 10.0, hi));
            in.alpha.push_back(0.0);
            hi /= 30.0;
        }
        const double threshold = rng.uniform(300.0, 800.0);

        ClusterSinrInputs closed = in;
        const PartitionResult part = optimal_partition(in, threshold);
        closed.alpha = part.alpha;
        const auto closed_sinrs = approx_sinr_all(closed, InterferenceMode::sic);
        const double closed_sum = std::accumulate(closed_sinrs.begin(), closed_sinrs.end(), 0.0);

        const PartitionResult grid = partition_oracle(in, threshold, 1e-2);
        if (grid.feasible && !part.feasible) {
            ok = false;
            continue;
        }
        if (!part.feasible || !grid.feasible) continue;
        ClusterSinrInputs g = in;
        g.alpha = grid.alpha;
        const auto grid_sinrs = approx_sinr_all(g, InterferenceMode::sic);
        const double grid_sum = std::accumulate(grid_sinrs.begin(), grid_sinrs.end(), 0.0);
        ok = ok && closed_sum >= grid_sum * (1.0 - 1e-9);
        // Pinned members sit exactly on the scaled target.
        for (int i = 1; i < n; ++i) {
            if (part.alpha[i] > 0.0)
                ok = ok && std::abs(closed_sinrs[i] - threshold) <= 1e-9 * threshold;
        }
    }
    return check(ok, "partitioning: closed form matches the grid oracle");
}

bool determinism_checks(int threads) {
    RunSpec spec = make_preset("fig5");
    spec.sim.trials = 8;
    spec.sweep.values = {2};
    std::vector<SchemeRun> runs;
    for (const auto& s : spec.schemes) runs.push_back({*scheme_from_name(s), s});
    const auto a = monte_carlo(spec.sim, spec.sweep, runs, threads, false);
    const auto b = monte_carlo_serial(spec.sim, spec.sweep, runs, false);
    const bool ok = csv_text(a) == csv_text(b);
    return check(ok, "harness: parallel and serial runs agree byte for byte");
}

} // namespace

bool run_validate_suite(int threads) {
    bool ok = true;
    ok = eigensolver_checks() && ok;
    ok = lsa_checks() && ok;
    ok = partition_checks() && ok;
    ok = determinism_checks(threads) && ok;
    ok = check(std::abs(m_constant(1.0, 1.0) - 0.61685027506808491) < 1e-9,
               "fading: expectation constant analytic value") && ok;
    std::printf("%s\n", ok ? "validate: all checks passed" : "validate: FAILURES");
    return ok;
}

} // namespace risnoma
