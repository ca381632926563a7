#pragma once

#include <string>
#include <vector>

#include "risnoma/graph.hpp"
#include "risnoma/sinr.hpp"

namespace risnoma {

// Dense row-major matrix of candidate utilities.
struct UtilityMatrix {
    int rows = 0, cols = 0;
    std::vector<double> v;
    double& at(int r, int c) { return v[r * cols + c]; }
    double at(int r, int c) const { return v[r * cols + c]; }
};

struct LsaResult {
    std::vector<int> row_to_col; // -1 when a row got only a dummy column
    double value = 0.0;
};

// Maximum-weight assignment (Kuhn-Munkres with potentials, O(n^3) on the
// zero-padded square). Among equal-value optima small instances are
// canonicalized to the lexicographically-smallest row->column matching,
// dummies sorting last.
LsaResult lsa_solve(const UtilityMatrix& O);

// Result of the two-step clustering.
struct Assignment {
    // Per matched cluster: RIS id, target UAV id and ordered member UEs.
    std::vector<int> ris;
    std::vector<int> uav;
    std::vector<std::vector<int>> members;

    int U = 0, A = 0, R = 0;
    std::vector<std::uint8_t> Z; // U x R, z[u*R + r]
    std::vector<std::uint8_t> X; // A x R, x[a*R + r]

    int clusters() const { return static_cast<int>(ris.size()); }
    std::string export_text() const;
};

// Step 1: UAVs inside R_ra of some RIS, sorted ascending by reliability;
// the first R each take the nearest unassigned RIS. Returns (ris id ->
// uav id) pairs; fewer than R pairs when eligible UAVs run short.
std::vector<std::pair<int, int>> cluster_uav_ris(const Topology& topo,
                                                 const std::vector<double>& reliability_scores,
                                                 const SimConfig& cfg);

// UEs inside R_ur of some RIS, ascending by best direct-link SNR; UEs with
// no direct link sort first. Stable in UE id.
std::vector<int> sort_ues_by_rss(const ChannelSet& ch, const SimConfig& cfg);

// Contiguous admission waves of R UEs each (the last may run short).
std::vector<std::vector<int>> partition_waves(const std::vector<int>& sorted_ues, int R, int U_r);

// Sum of approximate SINRs of each cluster after temporarily admitting each
// candidate, with an equal allocation split across the temporary cluster.
UtilityMatrix utility_matrix(const std::vector<std::vector<int>>& clusters,
                             const std::vector<std::pair<int, int>>& ris_uav,
                             const std::vector<int>& wave, const ChannelSet& ch,
                             const SimConfig& cfg, double m);

// Full clustering pass: step 1, RSS-sorted waves, per-wave utility matrices
// and LSA admissions.
Assignment cluster_ues(const Topology& topo, const ChannelSet& ch,
                       const std::vector<double>& reliability_scores, const SimConfig& cfg,
                       double m);

// Inputs for the partition stage of one cluster: members sorted descending
// by direct-link quality toward the target UAV.
ClusterSinrInputs cluster_inputs(const ChannelSet& ch, const std::vector<int>& members,
                                 int r, int a, const SimConfig& cfg, double m);

} // namespace risnoma
