#ifndef RISEE_LINK_HPP
#define RISEE_LINK_HPP

#include <Eigen/Dense>
#include <span>

#include "risee/channel.hpp"

namespace risee {

struct Precoder {
    MatrixC matrix;              // M x K, unit Frobenius norm
    double regularization = 0.0; // kappa = K * sigma^2
};

// zeta(k, j) = |h_{ris,k} . omega_j|^2
struct GainMatrix {
    Eigen::MatrixXd zeta;

    Eigen::Index users() const { return zeta.rows(); }
};

struct LinkReport {
    Eigen::VectorXd sinr;
    double se = 0.0;         // bps/Hz
    double ee = 0.0;         // bits/joule
    double bandwidth = 0.0;  // Hz
};

// Regularized zero forcing per the K<=M / K>M branches, normalized to unit
// Frobenius norm; power control is handled exclusively by p.
Precoder rzf_precoder(const MatrixC& h_ris, double noise_power, int k_users);

GainMatrix effective_gains(const MatrixC& h_ris, const Precoder& precoder);

// gamma_k = p_k zeta_kk / (sum_{j != k} p_j zeta_kj + sigma^2)
Eigen::VectorXd sinr(const GainMatrix& zeta, std::span<const double> p, double noise_power);

// sum_k log2(1 + gamma_k)
double spectral_efficiency(const Eigen::VectorXd& sinr_values);

// BW * se / total_power
double energy_efficiency(double se, double bandwidth, double total_power);

} // namespace risee

#endif
