#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <vector>

#include "risnoma/assign.hpp"

using namespace risnoma;

namespace {

UtilityMatrix make_matrix(int rows, int cols, std::initializer_list<double> vals) {
    UtilityMatrix O;
    O.rows = rows;
    O.cols = cols;
    O.v = vals;
    return O;
}

// Brute force over injective row->column maps (dummy allowed when rows
// exceed columns); returns best value and the lexicographically-smallest
// argmax.
struct BruteResult {
    double value = 0.0;
    std::vector<int> match;
};

void brute_scan(const UtilityMatrix& O, int row, std::vector<char>& used, std::vector<int>& cur,
                double acc, BruteResult& best) {
    if (row == O.rows) {
        if (acc > best.value + 1e-12) {
            best.value = acc;
            best.match = cur;
        } else if (std::abs(acc - best.value) <= 1e-12 && !best.match.empty()) {
            auto key = [&](const std::vector<int>& m) {
                std::vector<int> k;
                for (int c : m) k.push_back(c < 0 ? O.cols : c);
                return k;
            };
            if (key(cur) < key(best.match)) best.match = cur;
        } else if (best.match.empty()) {
            best.value = acc;
            best.match = cur;
        }
        return;
    }
    for (int c = 0; c < O.cols; ++c) {
        if (used[c]) continue;
        used[c] = 1;
        cur.push_back(c);
        brute_scan(O, row + 1, used, cur, acc + O.at(row, c), best);
        cur.pop_back();
        used[c] = 0;
    }
    if (O.rows > O.cols) { // a row may idle only when columns run out
        cur.push_back(-1);
        brute_scan(O, row + 1, used, cur, acc, best);
        cur.pop_back();
    }
}

BruteResult brute_force(const UtilityMatrix& O) {
    BruteResult best;
    std::vector<char> used(O.cols, 0);
    std::vector<int> cur;
    brute_scan(O, 0, used, cur, 0.0, best);
    return best;
}

} // namespace

TEST_CASE("assignment on small matrices") {
    const UtilityMatrix O = make_matrix(2, 2, {1, 2, 3, 1});
    const LsaResult r = lsa_solve(O);
    CHECK(r.value == doctest::Approx(5.0));
    CHECK(r.row_to_col == std::vector<int>{1, 0});

    const UtilityMatrix diag = make_matrix(3, 3, {9, 1, 1, 1, 9, 1, 1, 1, 9});
    CHECK(lsa_solve(diag).row_to_col == std::vector<int>{0, 1, 2});
}

TEST_CASE("duplicated optima resolve to the lexicographically-smallest matching") {
    // Integer utilities force exact ties.
    const UtilityMatrix O = make_matrix(3, 3, {1, 1, 0, 1, 1, 0, 0, 0, 1});
    const LsaResult r = lsa_solve(O);
    const BruteResult b = brute_force(O);
    CHECK(r.value == doctest::Approx(b.value));
    CHECK(r.row_to_col == b.match);
    CHECK(r.row_to_col == std::vector<int>{0, 1, 2});

    Rng rng(17);
    for (int it = 0; it < 300; ++it) {
        UtilityMatrix T;
        T.rows = T.cols = 3 + static_cast<int>(rng.uniform_index(2));
        T.v.resize(static_cast<std::size_t>(T.rows) * T.cols);
        for (auto& x : T.v) x = static_cast<double>(rng.uniform_index(3));
        const LsaResult lr = lsa_solve(T);
        const BruteResult br = brute_force(T);
        CHECK(lr.value == doctest::Approx(br.value));
        CHECK(lr.row_to_col == br.match);
    }
}

TEST_CASE("assignment equals brute force on random instances") {
    Rng rng(23);
    for (int it = 0; it < 300; ++it) {
        UtilityMatrix O;
        O.rows = O.cols = 2 + static_cast<int>(rng.uniform_index(5));
        O.v.resize(static_cast<std::size_t>(O.rows) * O.cols);
        for (auto& x : O.v) x = rng.uniform(0.0, 100.0);
        CHECK(lsa_solve(O).value == doctest::Approx(brute_force(O).value).epsilon(1e-12));
    }
}

TEST_CASE("assignment stays cubic at larger sizes") {
    Rng rng(99);
    auto timed = [&](int n) {
        UtilityMatrix O;
        O.rows = O.cols = n;
        O.v.resize(static_cast<std::size_t>(n) * n);
        for (auto& x : O.v) x = rng.uniform(0.0, 1.0);
        double best = 1e18;
        for (int rep = 0; rep < 3; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            volatile double v = lsa_solve(O).value;
            (void)v;
            best = std::min(best,
                            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                                .count());
        }
        return best;
    };
    timed(50); // warm up
    const double t100 = timed(100);
    const double t200 = timed(200);
    // Doubling n must cost at most ~8x (cubic); allow 10x for noise.
    CHECK(t200 / t100 <= 10.0);
}

TEST_CASE("rectangular matrices are padded with dummies") {
    // More columns than rows: the two best columns win.
    const UtilityMatrix wide = make_matrix(2, 4, {5, 1, 2, 0, 1, 6, 2, 0});
    const LsaResult rw = lsa_solve(wide);
    CHECK(rw.value == doctest::Approx(11.0));
    CHECK(rw.row_to_col == std::vector<int>{0, 1});

    // More rows than columns: someone idles on a dummy.
    const UtilityMatrix tall = make_matrix(3, 1, {3, 9, 4});
    const LsaResult rt = lsa_solve(tall);
    CHECK(rt.value == doctest::Approx(9.0));
    CHECK(rt.row_to_col == std::vector<int>{-1, 0, -1});
}

TEST_CASE("UAV-RIS clustering") {
    SimConfig cfg;
    cfg.U = 1;
    cfg.A = 3;
    cfg.R = 2;
    cfg.R_ra = 150.0;
    cfg.scenario.active = true;
    cfg.scenario.ues = {{0, 0, 0}};
    // UAV2 sits out of range of both panels.
    cfg.scenario.uavs = {{100, 0, 200}, {140, 0, 200}, {1000, 1000, 200}};
    cfg.scenario.riss = {{100, 40, 120}, {240, 0, 120}};
    Rng rng(1);
    const Topology topo = generate_topology(cfg, rng);

    const std::vector<double> rel = {0.2, 0.9, 0.5};
    const auto pairs = cluster_uav_ris(topo, rel, cfg);
    REQUIRE(pairs.size() == 2);
    // Most critical first: UAV0 (0.2) grabs its nearest panel RIS0; UAV1
    // (0.9) is left with RIS1 even though RIS0 is closer to it too.
    CHECK(pairs[0] == std::pair<int, int>{0, 0});
    CHECK(pairs[1] == std::pair<int, int>{1, 1});

    // With reliabilities {0.2, 0.9, 0.5} and an eligible third UAV, the two
    // selected ones are 0.2 and 0.5.
    SimConfig cfg2 = cfg;
    cfg2.scenario.uavs[2] = {180, 0, 200};
    const Topology topo2 = generate_topology(cfg2, rng);
    const auto pairs2 = cluster_uav_ris(topo2, rel, cfg2);
    REQUIRE(pairs2.size() == 2);
    std::vector<int> chosen = {pairs2[0].second, pairs2[1].second};
    std::sort(chosen.begin(), chosen.end());
    CHECK(chosen == std::vector<int>{0, 2});

    // Output is stable under permuting the UAV order (distinct scores).
    SimConfig cfg3 = cfg2;
    std::swap(cfg3.scenario.uavs[0], cfg3.scenario.uavs[2]);
    const std::vector<double> rel3 = {0.5, 0.9, 0.2};
    const Topology topo3 = generate_topology(cfg3, rng);
    const auto pairs3 = cluster_uav_ris(topo3, rel3, cfg3);
    REQUIRE(pairs3.size() == 2);
    for (const auto& [r, a] : pairs3) {
        const auto& p = topo3.uavs[a];
        bool found = false;
        for (const auto& [r2, a2] : pairs2) {
            const auto& q = topo2.uavs[a2];
            found = found || (p.x == q.x && p.y == q.y && r == r2);
        }
        CHECK(found);
    }
}

TEST_CASE("RSS sorting is ascending with blocked UEs first") {
    ChannelSet ch;
    ch.U = 3;
    ch.R = 1;
    ch.A = 1;
    ch.K = 1;
    ch.direct.assign(3, {1.0, 0.0});
    ch.ue_ris.assign(3, {1.0, 0.0});
    ch.ris_uav.assign(1, {1.0, 0.0});
    ch.G_ur.assign(3, 1.0);
    ch.H_ra.assign(1, 1.0);
    ch.Gamma.assign(3, 1.0);
    SimConfig cfg;
    cfg.p_dbm = 0.0;
    cfg.sigma2_zeta_dbm = 0.0;

    ch.G_ua = {db_to_lin(80.0), 0.0, db_to_lin(85.0)};
    CHECK(sort_ues_by_rss(ch, cfg) == std::vector<int>{1, 0, 2});

    // All blocked: stable index order.
    ch.G_ua = {0.0, 0.0, 0.0};
    CHECK(sort_ues_by_rss(ch, cfg) == std::vector<int>{0, 1, 2});

    // A UE out of panel range is excluded.
    ch.G_ua = {db_to_lin(80.0), 0.0, db_to_lin(85.0)};
    ch.G_ur = {1.0, 1.0, 0.0};
    CHECK(sort_ues_by_rss(ch, cfg) == std::vector<int>{1, 0});
}

TEST_CASE("admission waves") {
    const std::vector<int> sorted = {5, 2, 7, 1, 9, 4};
    const auto waves = partition_waves(sorted, 3, 2);
    REQUIRE(waves.size() == 2);
    CHECK(waves[0] == std::vector<int>{5, 2, 7});
    CHECK(waves[1] == std::vector<int>{1, 9, 4});

    const auto truncated = partition_waves({5, 2, 7, 1}, 3, 2);
    CHECK(truncated[0] == std::vector<int>{5, 2, 7});
    CHECK(truncated[1] == std::vector<int>{1});

    const auto single = partition_waves(sorted, 3, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == std::vector<int>{5, 2, 7});
}

namespace {

// Shared fixture: two panels, two UAVs, six UEs in a line.
SimConfig clustering_fixture() {
    SimConfig cfg;
    cfg.U = 6;
    cfg.A = 2;
    cfg.R = 2;
    cfg.K = 64;
    cfg.U_r = 2;
    cfg.R_ur = 500.0;
    cfg.R_ra = 200.0;
    cfg.gamma_th_ue_db = 80.0;
    cfg.gamma_th_ris_db = 20.0;
    cfg.scenario.active = true;
    cfg.scenario.ues = {{60, 0, 0},  {140, 0, 0}, {220, 0, 0},
                        {300, 0, 0}, {380, 0, 0}, {460, 0, 0}};
    cfg.scenario.uavs = {{100, 40, 200}, {400, 40, 200}};
    cfg.scenario.riss = {{120, 0, 120}, {390, 0, 120}};
    return cfg;
}

} // namespace

TEST_CASE("utility matrix matches a direct recomputation") {
    SimConfig cfg = clustering_fixture();
    Rng rng(9);
    const Topology topo = generate_topology(cfg, rng);
    const ChannelSet ch = realize_channels(topo, cfg, rng);
    const double m = m_constant(cfg.f1, cfg.f2);

    const std::vector<std::vector<int>> clusters = {{0}, {3}};
    const std::vector<std::pair<int, int>> pairs = {{0, 0}, {1, 1}};
    const std::vector<int> wave = {1, 4};
    const UtilityMatrix O = utility_matrix(clusters, pairs, wave, ch, cfg, m);

    for (int i = 0; i < 2; ++i) {
        for (int c = 0; c < 2; ++c) {
            std::vector<int> temp = clusters[i];
            temp.push_back(wave[c]);
            ClusterSinrInputs in = cluster_inputs(ch, temp, pairs[i].first, pairs[i].second, cfg, m);
            std::fill(in.alpha.begin(), in.alpha.end(), 0.5);
            const auto sinrs = approx_sinr_all(in, cfg.sinr_mode);
            CHECK(O.at(i, c) ==
                  doctest::Approx(std::accumulate(sinrs.begin(), sinrs.end(), 0.0)));
        }
    }
}

TEST_CASE("full clustering satisfies the structural constraints") {
    SimConfig cfg = clustering_fixture();
    Rng rng(9);
    const Topology topo = generate_topology(cfg, rng);
    const ChannelSet ch = realize_channels(topo, cfg, rng);
    const double m = m_constant(cfg.f1, cfg.f2);
    const std::vector<double> rel = {0.7, 1.0};

    const Assignment asg = cluster_ues(topo, ch, rel, cfg, m);
    REQUIRE(asg.clusters() == 2);

    // C1: each UE joins at most one cluster.
    for (int u = 0; u < cfg.U; ++u) {
        int row = 0;
        for (int r = 0; r < cfg.R; ++r) row += asg.Z[u * cfg.R + r];
        CHECK(row <= 1);
    }
    // C2/C3: at most U_r members per panel.
    int total = 0;
    for (int r = 0; r < cfg.R; ++r) {
        int col = 0;
        for (int u = 0; u < cfg.U; ++u) col += asg.Z[u * cfg.R + r];
        CHECK(col <= cfg.U_r);
        total += col;
    }
    CHECK(total <= cfg.U_r * cfg.R);
    CHECK(total == 4); // R*U_r slots filled from six candidates
    // C4/C5: injective UAV matching.
    for (int a = 0; a < cfg.A; ++a) {
        int row = 0;
        for (int r = 0; r < cfg.R; ++r) row += asg.X[a * cfg.R + r];
        CHECK(row <= 1);
    }
    // C6: one target UAV per cluster.
    for (int i = 0; i < asg.clusters(); ++i) {
        CHECK(asg.uav[i] >= 0);
        CHECK(asg.uav[i] < cfg.A);
    }

    // U_r = 1 leaves the initial singletons.
    SimConfig cfg1 = cfg;
    cfg1.U_r = 1;
    const Assignment asg1 = cluster_ues(topo, ch, rel, cfg1, m);
    int ones = 0;
    for (auto z : asg1.Z) ones += z;
    CHECK(ones == cfg.R);
    for (int i = 0; i < asg1.clusters(); ++i) CHECK(asg1.members[i].size() == 1);

    CHECK(!asg.export_text().empty());
}

TEST_CASE("per-wave admissions maximize the wave's utility matrix") {
    SimConfig cfg = clustering_fixture();
    cfg.U_r = 3;
    Rng rng(13);
    const Topology topo = generate_topology(cfg, rng);
    const ChannelSet ch = realize_channels(topo, cfg, rng);
    const double m = m_constant(cfg.f1, cfg.f2);
    const std::vector<double> rel = {0.7, 1.0};

    // Replay the wave mechanics and compare each LSA pick to brute force.
    const auto pairs = cluster_uav_ris(topo, rel, cfg);
    const auto sorted = sort_ues_by_rss(ch, cfg);
    const auto waves = partition_waves(sorted, static_cast<int>(pairs.size()), cfg.U_r);
    std::vector<std::vector<int>> clusters(pairs.size());
    for (std::size_t i = 0; i < pairs.size() && i < waves[0].size(); ++i)
        clusters[i] = {waves[0][i]};
    for (int w = 1; w < cfg.U_r; ++w) {
        if (waves[w].empty()) break;
        const UtilityMatrix O = utility_matrix(clusters, pairs, waves[w], ch, cfg, m);
        const LsaResult lsa = lsa_solve(O);
        CHECK(lsa.value == doctest::Approx(brute_force(O).value).epsilon(1e-9));
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (lsa.row_to_col[i] >= 0) clusters[i].push_back(waves[w][lsa.row_to_col[i]]);
    }

    const Assignment asg = cluster_ues(topo, ch, rel, cfg, m);
    for (std::size_t i = 0; i < pairs.size(); ++i) CHECK(asg.members[i] == clusters[i]);
}
