#ifndef RISEE_PALLOC_HPP
#define RISEE_PALLOC_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "risee/link.hpp"

namespace risee {

struct Tolerances {
    double eps_outer = 1e-6;  // absolute on J, bits/s
    double eps_inner = 1e-8;
    int max_outer = 100;
    // the quadratic-transform contraction slows down as 1 - O(1/SINR), so
    // the inner cap leaves room for strong links; typical counts stay small
    int max_inner = 5000;
    int max_bisect = 200;

    // Scale-aware defaults: J carries a bandwidth factor, so the stopping
    // thresholds do too.
    static Tolerances scaled(double bandwidth) {
        Tolerances t;
        t.eps_outer = 1e-6 * bandwidth;
        t.eps_inner = 1e-8 * bandwidth;
        return t;
    }
};

// One consistent iterate of the Dinkelbach-IQT state machine. The stored
// (gamma, y, rho, eta) are exactly the values that produced p, so the
// Lagrangian stationarity of the final power vector can be verified
// externally.
struct AllocState {
    std::vector<double> p;
    Eigen::VectorXd gamma;
    Eigen::VectorXd y;
    double eta = 0.0;    // Dinkelbach parameter eta^[n], bits/joule
    double rho = 0.0;    // multiplier of the bandwidth-normalized Lagrangian
    int outer_iter = 0;
    int inner_iter = 0;  // inner iterations across all outer rounds
    double j_value = 0.0;
};

struct AllocTraceRow {
    int outer = 0;
    int inner = 0;
    double eta = 0.0;
    double j_value = 0.0;
    double sum_p = 0.0;
    double rho = 0.0;
};

struct InnerResult {
    std::vector<double> p;
    double j_value = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct AllocResult {
    std::vector<double> p;
    double eta_ee = 0.0;  // achieved EE of the returned allocation, bits/joule
    AllocState state;
    bool converged = false;
    int outer_iters = 0;
    int inner_iters = 0;
};

inline constexpr double kLog2Scale = 1.4426950408889634;  // vartheta = 1/ln 2

// J(p) = BW * sum log2(1 + gamma_k(p)) - eta * (P_fixed + xi * sum p_k)
double objective_j(std::span<const double> p, double eta, const GainMatrix& zeta,
                   double noise_power, double p_fixed, double xi, double bandwidth);

// eta^[n] = BW * sum log2(1 + gamma_k(p)) / (P_fixed + xi * sum p_k)
double dinkelbach_eta(std::span<const double> p, const GainMatrix& zeta, double noise_power,
                      double p_fixed, double xi, double bandwidth);

// Identical formula to the SINR.
Eigen::VectorXd gamma_update(std::span<const double> p, const GainMatrix& zeta,
                             double noise_power);

// y_k = sqrt(vartheta (1 + Gamma_k) p_k zeta_kk) / (sum_j p_j zeta_kj + sigma^2),
// denominator over all j including k.
Eigen::VectorXd y_update(std::span<const double> p, const Eigen::VectorXd& gamma,
                         const GainMatrix& zeta, double noise_power);

// p_k = y_k^2 vartheta (1 + Gamma_k) zeta_kk / (rho + eta xi + sum_j y_j^2 zeta_jk)^2.
// eta here is the Dinkelbach weight in the bandwidth-normalized units of the
// inner objective (eta_bits_per_joule / BW).
std::vector<double> p_update(const Eigen::VectorXd& gamma, const Eigen::VectorXd& y,
                             double eta, double rho, const GainMatrix& zeta, double xi);

// rho = 0 when the unconstrained allocation already fits the power budget,
// otherwise the bisection root of sum_k p_k(rho) = P_t^max.
struct RhoResult {
    double rho = 0.0;
    bool converged = true;
};
RhoResult solve_rho(const Eigen::VectorXd& gamma, const Eigen::VectorXd& y, double eta,
                    const GainMatrix& zeta, double xi, double p_t_max,
                    double tol = 1e-12, int max_bisect = 200);

// Inner IQT loop: iterate Gamma -> y -> (rho, p) until the J difference test
// passes. eta is the outer Dinkelbach parameter in bits/joule.
InnerResult iqt_solve(std::span<const double> p_init, double eta, const GainMatrix& zeta,
                      double noise_power, double p_fixed, double xi, double bandwidth,
                      double p_t_max, const Tolerances& tol,
                      AllocState* state_out = nullptr, int outer_index = 0,
                      std::vector<AllocTraceRow>* trace = nullptr);

// Outer Dinkelbach loop wrapping iqt_solve. Empty p0 means uniform
// P_t^max / K.
AllocResult allocate_power(const GainMatrix& zeta, double noise_power, double p_fixed,
                           double xi, double bandwidth, double p_t_max,
                           const Tolerances& tol, std::span<const double> p0 = {},
                           std::vector<AllocTraceRow>* trace = nullptr);

} // namespace risee

#endif
