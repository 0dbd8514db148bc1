#include "risee/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace risee {

double straight_line_ee(const GainMatrix& zeta, const std::vector<double>& p,
                        double noise_power, double p_fixed, double xi, double bandwidth) {
    const Eigen::Index k_users = zeta.users();
    double se = 0.0;
    double sum_p = 0.0;
    for (Eigen::Index k = 0; k < k_users; ++k) {
        double interference = noise_power;
        for (Eigen::Index j = 0; j < k_users; ++j)
            if (j != k) interference += p[static_cast<std::size_t>(j)] * zeta.zeta(k, j);
        const double gamma = p[static_cast<std::size_t>(k)] * zeta.zeta(k, k) / interference;
        se += std::log2(1.0 + gamma);
        sum_p += p[static_cast<std::size_t>(k)];
    }
    return bandwidth * se / (p_fixed + xi * sum_p);
}

namespace {

void search_axis(const GainMatrix& zeta, double noise_power, double p_fixed, double xi,
                 double bandwidth, double step, int points_per_axis, int remaining_budget,
                 std::size_t axis, std::vector<double>& p, GridSearchResult& best) {
    const auto k_users = static_cast<std::size_t>(zeta.users());
    if (axis == k_users) {
        const double ee = straight_line_ee(zeta, p, noise_power, p_fixed, xi, bandwidth);
        ++best.evaluations;
        if (ee > best.ee) {
            best.ee = ee;
            best.p = p;
        }
        return;
    }
    for (int i = 0; i <= remaining_budget; ++i) {
        p[axis] = step * i;
        search_axis(zeta, noise_power, p_fixed, xi, bandwidth, step, points_per_axis,
                    remaining_budget - i, axis + 1, p, best);
    }
    p[axis] = 0.0;
}

} // namespace

GridSearchResult grid_search_allocation(const GainMatrix& zeta, double noise_power,
                                        double p_fixed, double xi, double bandwidth,
                                        double p_t_max, int points_per_axis) {
    if (points_per_axis < 1)
        throw std::invalid_argument("grid_search_allocation: need >= 1 point per axis");
    if (!(p_t_max > 0.0))
        throw std::invalid_argument("grid_search_allocation: p_t_max must be > 0");

    GridSearchResult best;
    best.p.assign(static_cast<std::size_t>(zeta.users()), 0.0);
    best.ee = -1.0;

    std::vector<double> p(static_cast<std::size_t>(zeta.users()), 0.0);
    const double step = p_t_max / points_per_axis;
    search_axis(zeta, noise_power, p_fixed, xi, bandwidth, step, points_per_axis,
                points_per_axis, 0, p, best);
    return best;
}

} // namespace risee
