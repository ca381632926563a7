#include "risnoma/topology.hpp"

#include <cmath>

#include "risnoma/errors.hpp"

namespace risnoma {

double distance(const Position& a, const Position& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void validate(const SimConfig& cfg) {
    auto require = [](bool ok, const char* key, const char* what) {
        if (!ok) throw ConfigError(key, what);
    };
    require(cfg.U > 0, "U", "must be positive");
    require(cfg.A > 0, "A", "must be positive");
    require(cfg.R > 0, "R", "must be positive");
    require(cfg.P_watts > 0, "P_watts", "must be positive");
    require(cfg.beta0 > 0, "beta0", "must be positive");
    require(cfg.f_c > 0, "f_c", "must be positive");
    require(cfg.c > 0, "c", "must be positive");
    require(cfg.bandwidth > 0, "bandwidth", "must be positive");
    require(cfg.R_ur > 0, "R_ur", "must be positive");
    require(cfg.R_ra > 0, "R_ra", "must be positive");
    require(cfg.tau > 0, "tau", "must be positive");
    require(cfg.f1 >= 0.5, "f1", "Nakagami shape must be >= 0.5");
    require(cfg.f2 >= 0.5, "f2", "Nakagami shape must be >= 0.5");
    require(cfg.f_u >= 0.5, "f_u", "Nakagami shape must be >= 0.5");
    require(cfg.spread > 0, "spread", "must be positive");
    require(cfg.K > 0, "K", "must be positive");
    require(cfg.U_r >= 1 && cfg.U_r <= cfg.K, "U_r", "must satisfy 1 <= U_r <= K");
    require(cfg.phase_bits >= 0 && cfg.phase_bits <= 8, "phase_bits", "must be in [0, 8]");
    require(cfg.delta > 0, "delta", "must be positive");
    require(cfg.max_iters > 0, "max_iters", "must be positive");
    require(cfg.sigma2_e_ua >= 0, "sigma2_e_ua", "must be non-negative");
    require(cfg.sigma2_e_ura >= 0, "sigma2_e_ura", "must be non-negative");
    require(cfg.area_side > 0, "area_side", "must be positive");
    require(cfg.uav_altitude > 0, "uav_altitude", "must be positive");
    require(cfg.ris_altitude > 0, "ris_altitude", "must be positive");
    require(cfg.trials >= 1, "trials", "must be >= 1");

    if (cfg.scenario.active) {
        require(!cfg.scenario.ues.empty(), "scenario.ue", "needs at least one UE");
        require(!cfg.scenario.uavs.empty(), "scenario.uav", "needs at least one UAV");
        require(!cfg.scenario.riss.empty(), "scenario.ris", "needs at least one RIS");
        for (const auto& [u, a] : cfg.scenario.blocked) {
            require(u >= 0 && u < static_cast<int>(cfg.scenario.ues.size()), "scenario.blocked",
                    "UE index out of range");
            require(a >= 0 && a < static_cast<int>(cfg.scenario.uavs.size()), "scenario.blocked",
                    "UAV index out of range");
        }
    }
}

Topology generate_topology(const SimConfig& cfg, Rng& rng) {
    validate(cfg);
    Topology topo;
    if (cfg.scenario.active) {
        topo.ues = cfg.scenario.ues;
        topo.uavs = cfg.scenario.uavs;
        topo.riss = cfg.scenario.riss;
        return topo;
    }
    topo.ues.resize(cfg.U);
    topo.uavs.resize(cfg.A);
    topo.riss.resize(cfg.R);
    for (auto& p : topo.ues) {
        p.x = rng.uniform(0.0, cfg.area_side);
        p.y = rng.uniform(0.0, cfg.area_side);
        p.z = 0.0;
    }
    for (auto& p : topo.uavs) {
        p.x = rng.uniform(0.0, cfg.area_side);
        p.y = rng.uniform(0.0, cfg.area_side);
        p.z = cfg.uav_altitude;
    }
    for (auto& p : topo.riss) {
        p.x = rng.uniform(0.0, cfg.area_side);
        p.y = rng.uniform(0.0, cfg.area_side);
        p.z = cfg.ris_altitude;
    }
    return topo;
}

Topology generate_topology(const SimConfig& cfg, std::uint64_t seed) {
    Rng rng(derive_stream_seed(seed, 0));
    return generate_topology(cfg, rng);
}

} // namespace risnoma
