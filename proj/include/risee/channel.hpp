#ifndef RISEE_CHANNEL_HPP
#define RISEE_CHANNEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "risee/rng.hpp"
#include "risee/scene.hpp"

namespace risee {

using Complex = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;

struct RicianParams {
    double epsilon_h = 5.0;  // RIS-UE Rician factor, infinity = pure LoS
    double epsilon_g = 5.0;  // FBS-RIS Rician factor
};

// One channel realization: incident FBS->RIS matrix G (N x M) and per-user
// reflected RIS->UE vectors h_{r,k} (length N each).
struct ChannelSet {
    MatrixC incident;               // N x M
    std::vector<VectorC> reflected; // K vectors, length N
    double noise_power = 0.0;       // watts, common to all users
    std::uint64_t realization_seed = 0;

    Eigen::Index n() const { return incident.rows(); }
    Eigen::Index m() const { return incident.cols(); }
    std::size_t k() const { return reflected.size(); }
};

double pairwise_distance(const Coordinate& a, const Coordinate& b);

// 2*pi*d/lambda, not wrapped
double phase_response(double distance, double wavelength);

// Linear power attenuation alpha = (4*pi*d/lambda)^exponent; amplitude
// factor applied in channels is 1/sqrt(alpha). Free space is exponent 2.
double path_loss(double distance, double wavelength, double exponent = 2.0);

// Entry (n,m) = e^{-j phi_nm} / sqrt(alpha_nm) over pairwise distances.
MatrixC los_incident_matrix(const ElementGrid& fbs, const ElementGrid& ris, double wavelength,
                            double pathloss_exponent = 2.0);

VectorC los_reflected_vector(const ElementGrid& ris, const Coordinate& ue, double wavelength,
                             double pathloss_exponent = 2.0);

// sqrt(eps/(eps+1)) * los + sqrt(1/(eps+1)) * nlos, where nlos entries are
// i.i.d. CN(0,1) scaled element-wise by the same amplitudes as the LoS term.
MatrixC rician_combine(const MatrixC& los, double rician_factor,
                       const Eigen::MatrixXd& pathloss_amplitudes, Rng& rng);

ChannelSet synthesize_channels(const Scenario& scenario, const RicianParams& params,
                               double noise_power, Rng& rng, double pathloss_exponent = 2.0);

// Text serialization. Header "N M K seed noise_power", then the entries of G
// row by row and the reflected vectors one user per line, as re/im pairs.
void save_channel_set(const ChannelSet& channels, const std::string& path);
ChannelSet load_channel_set(const std::string& path);

} // namespace risee

#endif
