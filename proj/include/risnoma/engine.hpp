#pragma once

#include <optional>
#include <string>
#include <vector>

#include "risnoma/assign.hpp"
#include "risnoma/partition.hpp"

namespace risnoma {

enum class SchemeId {
    proposed,    // clustering + closed-form RIS partitioning
    traditional, // original graph only, no RIS
    single_ris,  // one panel with R*K elements at the first RIS site
    exhaustive,  // enumeration over all feasible clusterings (small instances)
    rate_noma,   // exact NOMA sum rate with optimized partitions
    rate_oma,    // exact OMA sum rate, full panel per UE slot
    rate_exact,  // exact NOMA rate, perfect phases
    rate_exact_q,// exact NOMA rate, quantized phases (config phase_bits)
    rate_approx, // closed-form approximate NOMA rate
};

const char* scheme_name(SchemeId id);
std::optional<SchemeId> scheme_from_name(const std::string& name);

struct TrialResult {
    SchemeId scheme = SchemeId::traditional;
    double lambda2_mod = 0.0;
    double lambda2_org = 0.0;
    double sum_rate = 0.0; // bits/s
    int iterations = 0;
    std::vector<double> link_sinrs_db;
    int dropped_ues = 0;
    double wall_s = 0.0;
};

// One pass of the iterative scheme on a fixed snapshot. Also exposed with
// the modified graph for the resilience study.
TrialResult run_proposed(const Topology& topo, const ChannelSet& ch, const SimConfig& cfg);
TrialResult run_proposed(const Topology& topo, const ChannelSet& ch, const SimConfig& cfg,
                         WeightedGraph* out_graph);

TrialResult run_traditional(const Topology& topo, const ChannelSet& ch, const SimConfig& cfg);

// Upper-bound comparator: every feasible clustering, closed-form partitions.
// Throws SizeError beyond U <= 8, R <= 3, U_r <= 2.
TrialResult run_exhaustive(const Topology& topo, const ChannelSet& ch, const SimConfig& cfg);

// Survivor graph after removing `count` uniformly-chosen UAVs.
WeightedGraph fail_uavs(const WeightedGraph& g, int count, Rng& rng);
// Deterministic variant: remove the first `count` UAVs of `order`.
WeightedGraph fail_uavs_ordered(const WeightedGraph& g, std::span<const int> order, int count);

// Exact/approximate rate decomposition of one snapshot.
struct RateBreakdown {
    double noma_exact = 0.0;    // perfect phases
    double noma_exact_q = 0.0;  // phases quantized to config phase_bits
    double noma_approx = 0.0;
    double oma_exact = 0.0;     // full panel per UE, per-cluster bandwidth split
};
RateBreakdown rate_breakdown(const Topology& topo, const ChannelSet& ch, const SimConfig& cfg);

// Runs one scheme on trial `t` of `cfg` (fresh stream per trial, so every
// scheme sees identical topologies and channels).
TrialResult run_trial(const SimConfig& cfg, SchemeId scheme, std::uint64_t trial);

struct SchemeRun {
    SchemeId id;
    std::string label; // CSV scheme column
};

struct SweepSpec {
    std::string param; // config key, or "none" for a single point
    std::vector<double> values;
};

struct PointRow {
    std::string param;
    double value = 0.0;
    std::string scheme;
    double mean_lambda2 = 0.0;
    double se_lambda2 = 0.0;
    double mean_rate = 0.0;
    double se_rate = 0.0;
    int trials = 0;
    double mean_wall_s = 0.0;
    double mean_lambda2_org = 0.0;
};

// Returns a copy of cfg with one swept key applied; throws ConfigError for
// unknown keys.
SimConfig apply_sweep_value(const SimConfig& cfg, const std::string& param, double value);

// Monte Carlo sweep. Trials are independent; the parallel kernel runs them
// under OpenMP while the serial variant is the reference implementation the
// tests compare against. Results are aggregated in trial order either way,
// so both paths produce identical rows.
std::vector<PointRow> monte_carlo(const SimConfig& cfg, const SweepSpec& sweep,
                                  const std::vector<SchemeRun>& schemes, int threads,
                                  bool timing = false);
std::vector<PointRow> monte_carlo_serial(const SimConfig& cfg, const SweepSpec& sweep,
                                         const std::vector<SchemeRun>& schemes,
                                         bool timing = false);

// Resilience study: remove UAVs in a per-trial random order shared by both
// schemes; reports mean lambda2 per removal count plus the mean smallest
// count that kills connectivity.
struct ResilienceResult {
    std::vector<PointRow> rows; // param = "failed_uavs"
    double mean_kill_proposed = 0.0;
    double mean_kill_traditional = 0.0;
};
ResilienceResult resilience_experiment(const SimConfig& cfg, int threads);

// Deterministic pairwise summation (order-independent of thread schedule).
double pairwise_sum(std::span<const double> v);

} // namespace risnoma
