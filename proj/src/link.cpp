#include "risee/link.hpp"

#include <cmath>
#include <stdexcept>

namespace risee {

Precoder rzf_precoder(const MatrixC& h_ris, double noise_power, int k_users) {
    const Eigen::Index k = h_ris.rows();
    const Eigen::Index m = h_ris.cols();
    if (k < 1 || m < 1) throw std::invalid_argument("rzf_precoder: empty channel");
    if (k != k_users) throw std::invalid_argument("rzf_precoder: user count mismatch");
    if (!h_ris.allFinite()) throw std::invalid_argument("rzf_precoder: non-finite channel");
    if (noise_power < 0.0) throw std::invalid_argument("rzf_precoder: negative noise power");

    const double kappa = static_cast<double>(k_users) * noise_power;
    MatrixC unnormalized;
    if (k <= m) {
        MatrixC gram = h_ris * h_ris.adjoint();
        gram.diagonal().array() += kappa;
        unnormalized = h_ris.adjoint() * gram.inverse();
    } else {
        MatrixC gram = h_ris.adjoint() * h_ris;
        gram.diagonal().array() += kappa;
        unnormalized = gram.inverse() * h_ris.adjoint();
    }

    const double norm = unnormalized.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw std::domain_error("rzf_precoder: singular normalization (zero channel)");

    return {unnormalized / norm, kappa};
}

GainMatrix effective_gains(const MatrixC& h_ris, const Precoder& precoder) {
    if (h_ris.cols() != precoder.matrix.rows())
        throw std::invalid_argument("effective_gains: dimension mismatch");

    const MatrixC product = h_ris * precoder.matrix;  // K x K
    GainMatrix out;
    out.zeta = product.cwiseAbs2();
    return out;
}

Eigen::VectorXd sinr(const GainMatrix& zeta, std::span<const double> p, double noise_power) {
    const Eigen::Index k = zeta.users();
    if (static_cast<Eigen::Index>(p.size()) != k)
        throw std::invalid_argument("sinr: power vector size mismatch");
    if (!(noise_power > 0.0)) throw std::invalid_argument("sinr: noise power must be > 0");

    Eigen::VectorXd out(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        double interference = 0.0;
        for (Eigen::Index j = 0; j < k; ++j)
            if (j != i) interference += p[static_cast<std::size_t>(j)] * zeta.zeta(i, j);
        out(i) = p[static_cast<std::size_t>(i)] * zeta.zeta(i, i) / (interference + noise_power);
    }
    return out;
}

double spectral_efficiency(const Eigen::VectorXd& sinr_values) {
    double se = 0.0;
    for (Eigen::Index i = 0; i < sinr_values.size(); ++i) {
        if (sinr_values(i) < 0.0)
            throw std::invalid_argument("spectral_efficiency: negative SINR");
        se += std::log2(1.0 + sinr_values(i));
    }
    return se;
}

double energy_efficiency(double se, double bandwidth, double total_power) {
    if (!(total_power > 0.0))
        throw std::invalid_argument("energy_efficiency: total power must be > 0");
    return bandwidth * se / total_power;
}

} // namespace risee
