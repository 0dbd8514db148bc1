#ifndef RISEE_ORACLE_HPP
#define RISEE_ORACLE_HPP

#include <vector>

#include "risee/link.hpp"

namespace risee {

struct GridSearchResult {
    std::vector<double> p;
    double ee = 0.0;
    long evaluations = 0;
};

// Brute-force EE maximization over the simplex sum(p) <= p_t_max with
// points_per_axis grid nodes per user. The EE of each candidate is computed
// by straight-line arithmetic, independent of the iterative allocator it is
// used to check.
GridSearchResult grid_search_allocation(const GainMatrix& zeta, double noise_power,
                                        double p_fixed, double xi, double bandwidth,
                                        double p_t_max, int points_per_axis);

// Straight-line EE of a fixed allocation (plain loops, no library calls).
double straight_line_ee(const GainMatrix& zeta, const std::vector<double>& p,
                        double noise_power, double p_fixed, double xi, double bandwidth);

} // namespace risee

#endif
