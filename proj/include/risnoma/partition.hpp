#pragma once

#include <span>
#include <vector>

#include "risnoma/sinr.hpp"

namespace risnoma {

struct PartitionResult {
    std::vector<double> alpha;    // per cluster position (sorted order)
    std::vector<int> elements;    // element counts, same order
    bool feasible = false;
    std::vector<int> dropped;     // UE ids removed from RIS service
};

// Closed-form allocation for one cluster. `in` must be sorted descending by
// direct-link quality; `threshold` is the reliability-scaled QoS target
// C_a * gamma_th (linear). Walks members weakest-first: anyone whose direct
// link already meets the target gets no elements, everyone else gets exactly
// the share that pins its SINR to the target, and the strongest member
// collects the remainder. When the shares cannot fit the weakest member is
// dropped and the recursion restarts. Non-zero CSI error variances design
// the shares against the error-aware SINR denominator.
PartitionResult optimal_partition(const ClusterSinrInputs& in, double threshold,
                                  double sigma2_e_ua = 0.0, double sigma2_e_ura = 0.0);

// Largest-remainder apportionment of K elements proportional to alpha;
// counts sum to exactly K and any positive share gets at least one element.
std::vector<int> elements_from_alpha(std::span<const double> alpha, int K);

// Independent check: exhaustive grid search over the simplex sum(alpha) = 1
// at the given resolution, maximizing the sum of approximate SINRs subject
// to the per-member QoS target. Intended for clusters of up to 4 members.
PartitionResult partition_oracle(const ClusterSinrInputs& in, double threshold,
                                 double resolution);

} // namespace risnoma
