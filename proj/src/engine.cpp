#include "risnoma/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "risnoma/errors.hpp"

namespace risnoma {

namespace {

constexpr double kDeadLambda = 1e-9; // below this the graph counts as disconnected

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct PassOutcome {
    WeightedGraph graph;
    double lambda2 = 0.0;
    double rate = 0.0;
    std::vector<double> link_sinrs_db;
    int dropped = 0;
};

// One clustering + partitioning pass: build the modified graph from the
// original one and collect the per-link SINRs.
PassOutcome clustering_pass(const Topology& topo, const ChannelSet& ch, const SimConfig& cfg,
                            const WeightedGraph& org, const std::vector<double>& scores,
                            double m) {
    PassOutcome out{org, 0.0, 0.0, {}, 0};
    const double th_ris = db_to_lin(cfg.gamma_th_ris_db);
    const bool csi_error = cfg.sigma2_e_ua > 0.0 || cfg.sigma2_e_ura > 0.0;

    const Assignment asg = cluster_ues(topo, ch, scores, cfg, m);
    for (int i = 0; i < asg.clusters(); ++i) {
        const int r = asg.ris[i];
        const int a = asg.uav[i];
        if (asg.members[i].empty()) continue;

        ClusterSinrInputs in = cluster_inputs(ch, asg.members[i], r, a, cfg, m);
        const double threshold = scores[a] * th_ris;
        const PartitionResult part =
            optimal_partition(in, threshold, cfg.sigma2_e_ua, cfg.sigma2_e_ura);
        out.dropped += static_cast<int>(part.dropped.size());
        if (!part.feasible) continue;
        in.alpha = part.alpha;

        // The shares were designed against the error-aware SINR, so QoS
        // admission and link weights both use it (it reduces to the plain
        // approximation under perfect CSI).
        std::vector<double> sinrs(in.size());
        for (int pos = 0; pos < in.size(); ++pos) {
            sinrs[pos] = csi_error ? imperfect_csi_sinr(in, pos, cfg.sigma2_e_ua,
                                                        cfg.sigma2_e_ura, cfg.sinr_mode)
                                   : approx_sinr(in, pos, cfg.sinr_mode);
        }
        out.rate += noma_sum_rate(sinrs, cfg.bandwidth);

        for (int pos = 0; pos < in.size(); ++pos) {
            if (in.alpha[pos] <= 0.0) continue; // no elements allocated, no new link
            const double applied = sinrs[pos];
            if (applied < threshold * (1.0 - 1e-9)) continue; // QoS admission
            double w;
            if (cfg.weight_unit == WeightUnit::db) {
                if (applied <= 1.0) continue; // non-positive dB weight is worthless
                w = lin_to_db(applied);
            } else {
                w = applied;
            }
            const int uv = out.graph.uav_vertex(a);
            const double existing = out.graph.edge_weight(in.ue[pos], uv);
            if (existing > 0.0 && w <= existing) continue; // never weaken a tuned link
            out.graph.add_edge(in.ue[pos], uv, w, EdgeKind::ue_ris_uav);
            out.link_sinrs_db.push_back(lin_to_db(applied));
        }
    }
    out.lambda2 = fiedler(out.graph);
    return out;
}

std::vector<double> reliability_scores(const WeightedGraph& org, const SimConfig& cfg) {
    const ReliabilityScores rel = reliability(org);
    return cfg.reliability_mode == ReliabilityMode::normalized ? rel.normalized : rel.raw;
}

} // namespace

const char* scheme_name(SchemeId id) {
    switch (id) {
    case SchemeId::proposed: return "proposed";
    case SchemeId::traditional: return "traditional";
    case SchemeId::single_ris: return "single_ris";
    case SchemeId::exhaustive: return "exhaustive";
    case SchemeId::rate_noma: return "noma";
    case SchemeId::rate_oma: return "oma";
    case SchemeId::rate_exact: return "exact";
    case SchemeId::rate_exact_q: return "exact_q";
    case SchemeId::rate_approx: return "approx";
    }
    return "?";
}

std::optional<SchemeId> scheme_from_name(const std::string& name) {
    for (SchemeId id : {SchemeId::proposed, SchemeId::traditional, SchemeId::single_ris,
                        SchemeId::exhaustive, SchemeId::rate_noma, SchemeId::rate_oma,
                        SchemeId::rate_exact, SchemeId::rate_exact_q, SchemeId::rate_approx}) {
        if (name == scheme_name(id)) return id;
    }
    return std::nullopt;
}

TrialResult run_proposed(const Topology& topo, const ChannelSet& ch, const SimConfig& cfg,
                         WeightedGraph* out_graph) {
    TrialResult res;
    res.scheme = SchemeId::proposed;

    const WeightedGraph org = build_original_graph(topo, ch, cfg);
    res.lambda2_org = fiedler(org);
    const auto scores = reliability_scores(org, cfg);
    const double m = m_constant(cfg.f1, cfg.f2);

    // Alternate clustering and partitioning until lambda2 settles. Both
    // stages are deterministic for a fixed snapshot, so the loop converges
    // as soon as two consecutive passes agree.
    PassOutcome pass = clustering_pass(topo, ch, cfg, org, scores, m);
    int iters = 1;
    double prev = pass.lambda2;
    while (iters < cfg.max_iters) {
        pass = clustering_pass(topo, ch, cfg, org, scores, m);
        ++iters;
        if (std::abs(pass.lambda2 - prev) < cfg.delta) break;
        prev = pass.lambda2;
    }

    res.lambda2_mod = pass.lambda2;
    res.sum_rate = pass.rate;
    res.iterations = iters;
    res.link_sinrs_db = std::move(pass.link_sinrs_db);
    res.dropped_ues = pass.dropped;
    if (out_graph) *out_graph = std::move(pass.graph);
    return res;
}

TrialResult run_proposed(const Topology& topo, const ChannelSet& ch, const SimConfig& cfg) {
    return run_proposed(topo, ch, cfg, nullptr);
}

TrialResult run_traditional(const Topology& topo, const ChannelSet& ch, const SimConfig& cfg) {
    TrialResult res;
    res.scheme = SchemeId::traditional;
    const WeightedGraph org = build_original_graph(topo, ch, cfg);
    res.lambda2_org = fiedler(org);
    res.lambda2_mod = res.lambda2_org;
    res.iterations = 1;
    return res;
}

TrialResult run_exhaustive(const Topology& topo, const ChannelSet& ch, const SimConfig& cfg) {
    if (topo.U() > 8 || topo.R() > 3 || cfg.U_r > 2)
        throw SizeError("run_exhaustive: instance exceeds the U<=8, R<=3, U_r<=2 guard");

    TrialResult res;
    res.scheme = SchemeId::exhaustive;
    const WeightedGraph org = build_original_graph(topo, ch, cfg);
    res.lambda2_org = fiedler(org);
    const auto scores = reliability_scores(org, cfg);
    const double m = m_constant(cfg.f1, cfg.f2);
    const double th_ris = db_to_lin(cfg.gamma_th_ris_db);

    // Candidate UAVs per RIS (in range), and UEs in range of any RIS.
    std::vector<std::vector<int>> uav_cands(topo.R());
    for (int r = 0; r < topo.R(); ++r)
        for (int a = 0; a < topo.A(); ++a)
            if (ch.h_ra(r, a) > 0.0) uav_cands[r].push_back(a);
    std::vector<int> ues;
    for (int u = 0; u < topo.U(); ++u) {
        bool in_range = false;
        for (int r = 0; r < topo.R(); ++r) in_range = in_range || ch.g_ur(u, r) > 0.0;
        if (in_range) ues.push_back(u);
    }

    double matchings = 1.0;
    for (int r = 0; r < topo.R(); ++r) matchings *= uav_cands[r].size() + 1.0;
    const double est = matchings * std::pow(topo.R() + 1.0, static_cast<double>(ues.size()));
    if (est > 2e6)
        throw SizeError("run_exhaustive: search space too large (" + std::to_string(est) + ")");

    double best = res.lambda2_org;

    std::vector<int> target(topo.R(), -1);   // UAV per RIS, -1 = unused
    std::vector<int> member_of(topo.U(), -1); // RIS per UE, -1 = unclustered

    auto evaluate = [&]() {
        WeightedGraph mod = org;
        for (int r = 0; r < topo.R(); ++r) {
            if (target[r] < 0) continue;
            std::vector<int> members;
            for (int u : ues)
                if (member_of[u] == r) members.push_back(u);
            if (members.empty()) continue;
            const int a = target[r];
            ClusterSinrInputs in = cluster_inputs(ch, members, r, a, cfg, m);
            const double threshold = scores[a] * th_ris;
            const PartitionResult part = optimal_partition(in, threshold);
            if (!part.feasible) continue;
            in.alpha = part.alpha;
            const auto sinrs = approx_sinr_all(in, cfg.sinr_mode);
            for (int pos = 0; pos < in.size(); ++pos) {
                if (in.alpha[pos] <= 0.0 || sinrs[pos] < threshold * (1.0 - 1e-9)) continue;
                double w = sinrs[pos];
                if (cfg.weight_unit == WeightUnit::db) {
                    if (w <= 1.0) continue;
                    w = lin_to_db(w);
                }
                const int uv = mod.uav_vertex(a);
                const double existing = mod.edge_weight(in.ue[pos], uv);
                if (existing > 0.0 && w <= existing) continue;
                mod.add_edge(in.ue[pos], uv, w, EdgeKind::ue_ris_uav);
            }
        }
        best = std::max(best, fiedler(mod));
    };

    auto scan_ues = [&](auto&& self, std::size_t idx, const std::vector<int>& counts) -> void {
        if (idx == ues.size()) {
            evaluate();
            return;
        }
        const int u = ues[idx];
        member_of[u] = -1;
        self(self, idx + 1, counts);
        for (int r = 0; r < topo.R(); ++r) {
            if (target[r] < 0 || counts[r] >= cfg.U_r || ch.g_ur(u, r) <= 0.0) continue;
            std::vector<int> next = counts;
            next[r] += 1;
            member_of[u] = r;
            self(self, idx + 1, next);
            member_of[u] = -1;
        }
    };

    auto scan_ris = [&](auto&& self, int r, std::vector<char>& uav_used) -> void {
        if (r == topo.R()) {
            std::vector<int> counts(topo.R(), 0);
            scan_ues(scan_ues, 0, counts);
            return;
        }
        target[r] = -1;
        self(self, r + 1, uav_used);
        for (int a : uav_cands[r]) {
            if (uav_used[a]) continue;
            uav_used[a] = 1;
            target[r] = a;
            self(self, r + 1, uav_used);
            target[r] = -1;
            uav_used[a] = 0;
        }
    };

    std::vector<char> uav_used(topo.A(), 0);
    scan_ris(scan_ris, 0, uav_used);

    res.lambda2_mod = best;
    res.iterations = 1;
    return res;
}

WeightedGraph fail_uavs_ordered(const WeightedGraph& g, std::span<const int> order, int count) {
    if (count < 0 || count > g.num_uavs())
        throw std::domain_error("fail_uavs: count exceeds UAV population");
    std::vector<int> victims;
    for (int i = 0; i < count; ++i) victims.push_back(g.uav_vertex(order[i]));
    return remove_vertices(g, victims);
}

WeightedGraph fail_uavs(const WeightedGraph& g, int count, Rng& rng) {
    if (count < 0 || count > g.num_uavs())
        throw std::domain_error("fail_uavs: count exceeds UAV population");
    std::vector<int> order(g.num_uavs());
    std::iota(order.begin(), order.end(), 0);
    for (int i = g.num_uavs() - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(i) + 1));
        std::swap(order[i], order[j]);
    }
    return fail_uavs_ordered(g, order, count);
}

RateBreakdown rate_breakdown(const Topology& topo, const ChannelSet& ch, const SimConfig& cfg) {
    RateBreakdown out;
    const WeightedGraph org = build_original_graph(topo, ch, cfg);
    const auto scores = reliability_scores(org, cfg);
    const double m = m_constant(cfg.f1, cfg.f2);
    const double th_ris = db_to_lin(cfg.gamma_th_ris_db);

    const Assignment asg = cluster_ues(topo, ch, scores, cfg, m);
    for (int i = 0; i < asg.clusters(); ++i) {
        const int r = asg.ris[i];
        const int a = asg.uav[i];
        if (asg.members[i].empty()) continue;

        ClusterSinrInputs in = cluster_inputs(ch, asg.members[i], r, a, cfg, m);
        const PartitionResult part = optimal_partition(in, scores[a] * th_ris);
        in.alpha = part.alpha;

        out.noma_approx += noma_sum_rate(approx_sinr_all(in, cfg.sinr_mode), cfg.bandwidth);

        const PhasePlan plan = optimal_phases(ch, in.ue, r, a, 0);
        const auto exact = exact_sinr(ch, plan, in.ue, part.elements, r, a, cfg);
        out.noma_exact += noma_sum_rate(exact, cfg.bandwidth);

        if (cfg.phase_bits > 0) {
            const PhasePlan q = quantize_phases(plan, cfg.phase_bits);
            const auto exact_q = exact_sinr(ch, q, in.ue, part.elements, r, a, cfg);
            out.noma_exact_q += noma_sum_rate(exact_q, cfg.bandwidth);
        } else {
            out.noma_exact_q += noma_sum_rate(exact, cfg.bandwidth);
        }

        std::vector<double> snrs;
        for (int u : in.ue) snrs.push_back(exact_snr_full_ris(ch, u, r, a, cfg));
        out.oma_exact += oma_sum_rate(snrs, cfg.bandwidth, static_cast<int>(in.ue.size()));
    }
    return out;
}

TrialResult run_trial(const SimConfig& cfg, SchemeId scheme, std::uint64_t trial) {
    Rng rng = Rng::for_trial(cfg.seed, trial);
    const Topology topo = generate_topology(cfg, rng);
    const auto t0 = clock_type::now();

    TrialResult res;
    switch (scheme) {
    case SchemeId::proposed: {
        const ChannelSet ch = realize_channels(topo, cfg, rng);
        res = run_proposed(topo, ch, cfg);
        break;
    }
    case SchemeId::traditional: {
        const ChannelSet ch = realize_channels(topo, cfg, rng);
        res = run_traditional(topo, ch, cfg);
        break;
    }
    case SchemeId::exhaustive: {
        const ChannelSet ch = realize_channels(topo, cfg, rng);
        res = run_exhaustive(topo, ch, cfg);
        break;
    }
    case SchemeId::single_ris: {
        Topology single = topo;
        single.riss.assign(1, topo.riss[0]);
        SimConfig scfg = cfg;
        scfg.R = 1;
        scfg.K = cfg.R * cfg.K;
        const ChannelSet ch = realize_channels(single, scfg, rng);
        res = run_proposed(single, ch, scfg);
        res.scheme = SchemeId::single_ris;
        break;
    }
    default: { // rate schemes
        const ChannelSet ch = realize_channels(topo, cfg, rng);
        const RateBreakdown rb = rate_breakdown(topo, ch, cfg);
        res.scheme = scheme;
        switch (scheme) {
        case SchemeId::rate_noma:
        case SchemeId::rate_exact: res.sum_rate = rb.noma_exact; break;
        case SchemeId::rate_exact_q: res.sum_rate = rb.noma_exact_q; break;
        case SchemeId::rate_approx: res.sum_rate = rb.noma_approx; break;
        case SchemeId::rate_oma: res.sum_rate = rb.oma_exact; break;
        default: break;
        }
        break;
    }
    }
    res.wall_s = seconds_since(t0);
    return res;
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

namespace {

struct Stats {
    double mean = 0.0;
    double se = 0.0;
};

Stats aggregate(std::span<const double> v) {
    Stats s;
    if (v.empty()) return s;
    const auto n = static_cast<double>(v.size());
    s.mean = pairwise_sum(v) / n;
    if (v.size() > 1) {
        std::vector<double> sq(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - s.mean) * (v[i] - s.mean);
        s.se = std::sqrt(pairwise_sum(sq) / (n - 1.0)) / std::sqrt(n);
    }
    return s;
}

std::vector<PointRow> monte_carlo_impl(const SimConfig& cfg, const SweepSpec& sweep,
                                       const std::vector<SchemeRun>& schemes, int threads,
                                       bool timing, bool parallel) {
    validate(cfg);
    std::vector<PointRow> rows;
    const bool single_point = sweep.param.empty() || sweep.param == "none";
    const std::vector<double> values = single_point ? std::vector<double>{0.0} : sweep.values;

    for (double value : values) {
        const SimConfig point_cfg =
            single_point ? cfg : apply_sweep_value(cfg, sweep.param, value);
        validate(point_cfg);

        const int n = point_cfg.trials;
        const int S = static_cast<int>(schemes.size());
        std::vector<TrialResult> buf(static_cast<std::size_t>(n) * S);

        if (parallel) {
#ifdef _OPENMP
            const int want = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(want)
            for (int t = 0; t < n; ++t) {
                for (int s = 0; s < S; ++s)
                    buf[static_cast<std::size_t>(t) * S + s] =
                        run_trial(point_cfg, schemes[s].id, static_cast<std::uint64_t>(t));
            }
#else
            parallel = false;
#endif
        }
        if (!parallel) {
            for (int t = 0; t < n; ++t) {
                for (int s = 0; s < S; ++s)
                    buf[static_cast<std::size_t>(t) * S + s] =
                        run_trial(point_cfg, schemes[s].id, static_cast<std::uint64_t>(t));
            }
        }

        for (int s = 0; s < S; ++s) {
            std::vector<double> l2(n), rate(n), wall(n), l2org(n);
            for (int t = 0; t < n; ++t) {
                const TrialResult& tr = buf[static_cast<std::size_t>(t) * S + s];
                l2[t] = tr.lambda2_mod;
                rate[t] = tr.sum_rate;
                wall[t] = tr.wall_s;
                l2org[t] = tr.lambda2_org;
            }
            PointRow row;
            row.param = single_point ? "none" : sweep.param;
            row.value = value;
            row.scheme = schemes[s].label.empty() ? scheme_name(schemes[s].id) : schemes[s].label;
            const Stats sl = aggregate(l2);
            const Stats sr = aggregate(rate);
            row.mean_lambda2 = sl.mean;
            row.se_lambda2 = sl.se;
            row.mean_rate = sr.mean;
            row.se_rate = sr.se;
            row.trials = n;
            row.mean_wall_s = timing ? aggregate(wall).mean : 0.0;
            row.mean_lambda2_org = aggregate(l2org).mean;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace

std::vector<PointRow> monte_carlo(const SimConfig& cfg, const SweepSpec& sweep,
                                  const std::vector<SchemeRun>& schemes, int threads,
                                  bool timing) {
    const bool parallel = threads != 1;
    return monte_carlo_impl(cfg, sweep, schemes, threads, timing, parallel);
}

std::vector<PointRow> monte_carlo_serial(const SimConfig& cfg, const SweepSpec& sweep,
                                         const std::vector<SchemeRun>& schemes, bool timing) {
    return monte_carlo_impl(cfg, sweep, schemes, 1, timing, false);
}

SimConfig apply_sweep_value(const SimConfig& cfg, const std::string& param, double value) {
    SimConfig out = cfg;
    auto as_int = [&](const char* key) {
        if (value < 1.0 || value != std::floor(value))
            throw ConfigError(key, "sweep value must be a positive integer");
        return static_cast<int>(value);
    };
    if (param == "K") out.K = as_int("K");
    else if (param == "U_r") out.U_r = as_int("U_r");
    else if (param == "A") out.A = as_int("A");
    else if (param == "U") out.U = as_int("U");
    else if (param == "R") out.R = as_int("R");
    else if (param == "trials") out.trials = as_int("trials");
    else if (param == "phase_bits") out.phase_bits = static_cast<int>(value);
    else if (param == "sigma2_e") { out.sigma2_e_ua = value; out.sigma2_e_ura = value; }
    else if (param == "nodes") {
        const int n = as_int("nodes");
        out.U = std::max(1, (n * 4) / 5); // 4:1 UE-to-UAV split
        out.A = std::max(1, n - out.U);
    }
    else if (param == "gamma_th_ue_db") out.gamma_th_ue_db = value;
    else if (param == "gamma_th_uav_db") out.gamma_th_uav_db = value;
    else if (param == "gamma_th_ris_db") out.gamma_th_ris_db = value;
    else if (param == "area_side") out.area_side = value;
    else throw ConfigError(param, "unknown sweep parameter");
    return out;
}

ResilienceResult resilience_experiment(const SimConfig& cfg, int threads) {
    validate(cfg);
    const int n = cfg.trials;
    const int A = cfg.A;
    // lambda2 per (trial, count) for both schemes plus per-trial kill counts.
    std::vector<double> prop(static_cast<std::size_t>(n) * (A + 1), 0.0);
    std::vector<double> trad(static_cast<std::size_t>(n) * (A + 1), 0.0);
    std::vector<double> kill_prop(n, 0.0), kill_trad(n, 0.0);

    auto run_one = [&](int t) {
        Rng rng = Rng::for_trial(cfg.seed, static_cast<std::uint64_t>(t));
        const Topology topo = generate_topology(cfg, rng);
        const ChannelSet ch = realize_channels(topo, cfg, rng);
        WeightedGraph mod(1, 1);
        run_proposed(topo, ch, cfg, &mod);
        const WeightedGraph org = build_original_graph(topo, ch, cfg);

        std::vector<int> order(A);
        std::iota(order.begin(), order.end(), 0);
        for (int i = A - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(i) + 1));
            std::swap(order[i], order[j]);
        }
        int kp = A, kt = A;
        for (int c = 0; c <= A; ++c) {
            const double lp = fiedler(fail_uavs_ordered(mod, order, c));
            const double lt = fiedler(fail_uavs_ordered(org, order, c));
            prop[static_cast<std::size_t>(t) * (A + 1) + c] = lp;
            trad[static_cast<std::size_t>(t) * (A + 1) + c] = lt;
            if (lp <= kDeadLambda && c < kp) kp = c;
            if (lt <= kDeadLambda && c < kt) kt = c;
        }
        kill_prop[t] = kp;
        kill_trad[t] = kt;
    };

#ifdef _OPENMP
    if (threads != 1) {
        const int want = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(want)
        for (int t = 0; t < n; ++t) run_one(t);
    } else
#endif
    {
        for (int t = 0; t < n; ++t) run_one(t);
    }

    ResilienceResult out;
    for (int c = 0; c <= A; ++c) {
        for (int s = 0; s < 2; ++s) {
            const auto& src = s == 0 ? prop : trad;
            std::vector<double> v(n);
            for (int t = 0; t < n; ++t) v[t] = src[static_cast<std::size_t>(t) * (A + 1) + c];
            PointRow row;
            row.param = "failed_uavs";
            row.value = c;
            row.scheme = s == 0 ? "proposed" : "traditional";
            const Stats st = aggregate(v);
            row.mean_lambda2 = st.mean;
            row.se_lambda2 = st.se;
            row.trials = n;
            out.rows.push_back(std::move(row));
        }
    }
    out.mean_kill_proposed = pairwise_sum(kill_prop) / n;
    out.mean_kill_traditional = pairwise_sum(kill_trad) / n;
    return out;
}

} // namespace risnoma
