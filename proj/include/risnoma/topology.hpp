#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "risnoma/rng.hpp"

namespace risnoma {

struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Euclidean 3-D distance.
double distance(const Position& a, const Position& b);

// Node deployment for one network snapshot. UEs are on the ground (z = 0),
// UAVs and RISs hover at their configured altitudes.
struct Topology {
    std::vector<Position> ues;
    std::vector<Position> uavs;
    std::vector<Position> riss;

    int U() const { return static_cast<int>(ues.size()); }
    int A() const { return static_cast<int>(uavs.size()); }
    int R() const { return static_cast<int>(riss.size()); }
};

enum class WeightUnit { db, linear };
enum class PathlossModel { reference_beta0, exponent_only };
enum class ReliabilityMode { normalized, raw };
enum class InterferenceMode { sic, full_cluster };

// Fixed deployment loaded from a scenario file or preset. When `active`,
// Monte Carlo trials reuse these positions and only redraw fading.
struct Scenario {
    bool active = false;
    std::vector<Position> ues;
    std::vector<Position> uavs;
    std::vector<Position> riss;
    // Explicitly blocked direct (ue, uav) pairs, 0-based.
    std::vector<std::pair<int, int>> blocked;
};

struct SimConfig {
    // Node counts.
    int U = 15;
    int A = 8;
    int R = 3;

    // Radio parameters.
    double p_dbm = 23.0;           // UE transmit power
    double P_watts = 1.0;          // UAV transmit power
    double beta0 = 1e-2;           // reference path gain at 1 m
    double f_c = 3e9;              // carrier frequency, Hz
    double c = 3e8;                // speed of light, m/s
    double bandwidth = 250e3;      // Hz
    double sigma2_zeta_dbm = -130; // receiver noise (SINR normalization)
    double N0_dbm = -130;          // AWGN for graph-edge SNRs
    double gamma_th_ue_db = 84.0;  // UE-UAV edge threshold
    double gamma_th_uav_db = 40.0; // UAV-UAV edge threshold
    double gamma_th_ris_db = 30.0; // RIS-aided link QoS threshold
    double R_ur = 150.0;           // max UE-RIS distance, m
    double R_ra = 100.0;           // max RIS-UAV distance, m
    double tau = 2.0;              // path-loss exponent (exponent_only model)

    // Fading shapes (Nakagami), spread is common to all links.
    double f1 = 5.0;
    double f2 = 5.0;
    double f_u = 1.0;
    double spread = 1.0;

    // RIS and clustering.
    int K = 200;       // elements per RIS
    int U_r = 2;       // NOMA cluster size
    int phase_bits = 0; // 0 = continuous phases

    // Iterative loop.
    double delta = 1e-3;
    int max_iters = 20;

    // Imperfect CSI error variances (0 = perfect).
    double sigma2_e_ua = 0.0;
    double sigma2_e_ura = 0.0;

    // Deployment.
    double area_side = 500.0;
    double uav_altitude = 200.0;
    double ris_altitude = 120.0;

    // Experiment control.
    std::uint64_t seed = 1;
    int trials = 100;

    // Modeling switches.
    WeightUnit weight_unit = WeightUnit::db;
    PathlossModel pathloss = PathlossModel::reference_beta0;
    ReliabilityMode reliability_mode = ReliabilityMode::normalized;
    InterferenceMode sinr_mode = InterferenceMode::sic;

    Scenario scenario;

    double p_lin() const { return db_to_lin(p_dbm); }
    double sigma2_lin() const { return db_to_lin(sigma2_zeta_dbm); }
    double N0_lin() const { return db_to_lin(N0_dbm); }
};

// Throws ConfigError naming the offending key.
void validate(const SimConfig& cfg);

// Uniform deployment over the configured square; deterministic per seed.
// When a fixed scenario is active its positions are returned unchanged.
Topology generate_topology(const SimConfig& cfg, std::uint64_t seed);
Topology generate_topology(const SimConfig& cfg, Rng& rng);

} // namespace risnoma
