#pragma once

#include <string>
#include <vector>

#include "risnoma/channel.hpp"

namespace risnoma {

enum class EdgeKind { uav_uav, ue_uav_direct, ue_ris_uav };

struct Edge {
    int v1 = 0;
    int v2 = 0;
    double weight = 0.0;
    EdgeKind kind = EdgeKind::ue_uav_direct;
};

// Undirected weighted graph over U UEs (vertices 0..U-1) and A UAVs
// (vertices U..U+A-1). RIS panels are not vertices; they only contribute
// UE-UAV edges. The Laplacian is kept dense and updated rank-one per edge.
class WeightedGraph {
public:
    WeightedGraph(int num_ues, int num_uavs);

    int V() const { return V_; }
    int num_ues() const { return U_; }
    int num_uavs() const { return A_; }
    int uav_vertex(int a) const { return U_ + a; }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<double>& laplacian() const { return lap_; }

    // Weight of edge (v1, v2), 0 if absent.
    double edge_weight(int v1, int v2) const;

    void add_edge(int v1, int v2, double weight, EdgeKind kind);

    // vertex, vertex, weight, kind per line.
    std::string edge_list_text() const;

private:
    int U_, A_, V_;
    std::vector<Edge> edges_;
    std::vector<double> lap_;

    void apply_rank_one(int v1, int v2, double delta);
};

// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
// ascending. Throws std::domain_error on asymmetric input.
std::vector<double> jacobi_eigenvalues(const std::vector<double>& sym, int n);

// Second-smallest Laplacian eigenvalue; 0 for disconnected graphs and for
// graphs with fewer than two vertices.
double fiedler(const std::vector<double>& laplacian, int n);
double fiedler(const WeightedGraph& g);

// Direct and UAV-UAV edges of one snapshot. Edges exist above the configured
// SNR thresholds; weights are the corresponding SNRs in the configured unit.
WeightedGraph build_original_graph(const Topology& topo, const ChannelSet& ch,
                                   const SimConfig& cfg);

// Copy of `g` with a RIS-aided (ue, uav) link: new edge when absent,
// weight replaced otherwise. `weight` must be positive.
WeightedGraph add_ris_link(const WeightedGraph& g, int ue, int uav, double weight);

// Graph with the listed vertices (and incident edges) removed; remaining
// vertices are compacted in order.
WeightedGraph remove_vertices(const WeightedGraph& g, const std::vector<int>& victims);

struct ReliabilityScores {
    std::vector<double> raw;        // per UAV: lambda2 with that UAV removed
    std::vector<double> normalized; // raw / max(raw), zeros when all raw are 0
};

// Node criticality of every UAV: the connectivity left after removing it.
ReliabilityScores reliability(const WeightedGraph& g);

} // namespace risnoma
