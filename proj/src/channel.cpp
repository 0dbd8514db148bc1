#include "risee/channel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace risee {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// LoS weights sqrt(eps/(eps+1)) and sqrt(1/(eps+1)); infinity means pure LoS
std::pair<double, double> rician_weights(double epsilon) {
    if (epsilon < 0.0) throw std::invalid_argument("rician factor must be >= 0");
    if (std::isinf(epsilon)) return {1.0, 0.0};
    return {std::sqrt(epsilon / (epsilon + 1.0)), std::sqrt(1.0 / (epsilon + 1.0))};
}

} // namespace

double pairwise_distance(const Coordinate& a, const Coordinate& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double phase_response(double distance, double wavelength) {
    if (!(wavelength > 0.0))
        throw std::invalid_argument("phase_response: wavelength must be > 0");
    return 2.0 * std::numbers::pi * distance / wavelength;
}

double path_loss(double distance, double wavelength, double exponent) {
    if (!(wavelength > 0.0)) throw std::invalid_argument("path_loss: wavelength must be > 0");
    if (!(distance > 0.0)) throw std::invalid_argument("path_loss: zero distance");
    return std::pow(kFourPi * distance / wavelength, exponent);
}

MatrixC los_incident_matrix(const ElementGrid& fbs, const ElementGrid& ris, double wavelength,
                            double pathloss_exponent) {
    if (fbs.coordinates.empty() || ris.coordinates.empty())
        throw std::invalid_argument("los_incident_matrix: empty grid");

    const Eigen::Index n = static_cast<Eigen::Index>(ris.size());
    const Eigen::Index m = static_cast<Eigen::Index>(fbs.size());
    MatrixC out(n, m);
    for (Eigen::Index col = 0; col < m; ++col) {
        for (Eigen::Index row = 0; row < n; ++row) {
            const double d = pairwise_distance(ris.coordinates[static_cast<std::size_t>(row)],
                                               fbs.coordinates[static_cast<std::size_t>(col)]);
            if (d == 0.0)
                throw std::invalid_argument("los_incident_matrix: coincident elements");
            const double amp = 1.0 / std::sqrt(path_loss(d, wavelength, pathloss_exponent));
            const double phi = phase_response(d, wavelength);
            out(row, col) = std::polar(amp, -phi);
        }
    }
    return out;
}

VectorC los_reflected_vector(const ElementGrid& ris, const Coordinate& ue, double wavelength,
                             double pathloss_exponent) {
    if (ris.coordinates.empty())
        throw std::invalid_argument("los_reflected_vector: empty grid");

    const Eigen::Index n = static_cast<Eigen::Index>(ris.size());
    VectorC out(n);
    for (Eigen::Index row = 0; row < n; ++row) {
        const double d = pairwise_distance(ris.coordinates[static_cast<std::size_t>(row)], ue);
        if (d == 0.0)
            throw std::invalid_argument("los_reflected_vector: UE coincides with an element");
        const double amp = 1.0 / std::sqrt(path_loss(d, wavelength, pathloss_exponent));
        const double phi = phase_response(d, wavelength);
        out(row) = std::polar(amp, -phi);
    }
    return out;
}

MatrixC rician_combine(const MatrixC& los, double rician_factor,
                       const Eigen::MatrixXd& pathloss_amplitudes, Rng& rng) {
    if (los.rows() != pathloss_amplitudes.rows() || los.cols() != pathloss_amplitudes.cols())
        throw std::invalid_argument("rician_combine: amplitude shape mismatch");

    const auto [w_los, w_nlos] = rician_weights(rician_factor);
    MatrixC out(los.rows(), los.cols());
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    // column-major traversal fixes the draw order per realization
    for (Eigen::Index col = 0; col < los.cols(); ++col) {
        for (Eigen::Index row = 0; row < los.rows(); ++row) {
            Complex nlos{0.0, 0.0};
            if (w_nlos > 0.0) {
                nlos = Complex(rng.gaussian(), rng.gaussian()) * inv_sqrt2 *
                       pathloss_amplitudes(row, col);
            }
            out(row, col) = w_los * los(row, col) + w_nlos * nlos;
        }
    }
    return out;
}

namespace {

Eigen::MatrixXd amplitudes_between(const ElementGrid& rx, const ElementGrid& tx,
                                   double wavelength, double exponent) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rx.size()),
                        static_cast<Eigen::Index>(tx.size()));
    for (Eigen::Index col = 0; col < out.cols(); ++col)
        for (Eigen::Index row = 0; row < out.rows(); ++row) {
            const double d = pairwise_distance(rx.coordinates[static_cast<std::size_t>(row)],
                                               tx.coordinates[static_cast<std::size_t>(col)]);
            out(row, col) = 1.0 / std::sqrt(path_loss(d, wavelength, exponent));
        }
    return out;
}

} // namespace

ChannelSet synthesize_channels(const Scenario& scenario, const RicianParams& params,
                               double noise_power, Rng& rng, double pathloss_exponent) {
    if (!(noise_power > 0.0))
        throw std::invalid_argument("synthesize_channels: noise power must be > 0");
    if (scenario.ues.empty())
        throw std::invalid_argument("synthesize_channels: scenario has no UEs");

    ChannelSet set;
    set.noise_power = noise_power;
    set.realization_seed = rng.seed();

    const MatrixC g_los =
        los_incident_matrix(scenario.fbs, scenario.ris, scenario.wavelength, pathloss_exponent);
    const Eigen::MatrixXd g_amp =
        amplitudes_between(scenario.ris, scenario.fbs, scenario.wavelength, pathloss_exponent);
    set.incident = rician_combine(g_los, params.epsilon_g, g_amp, rng);

    set.reflected.reserve(scenario.ues.size());
    for (const auto& ue : scenario.ues) {
        const VectorC h_los =
            los_reflected_vector(scenario.ris, ue, scenario.wavelength, pathloss_exponent);
        Eigen::MatrixXd h_amp(h_los.size(), 1);
        for (Eigen::Index i = 0; i < h_los.size(); ++i) h_amp(i, 0) = std::abs(h_los(i));
        const MatrixC combined = rician_combine(h_los, params.epsilon_h, h_amp, rng);
        set.reflected.push_back(combined.col(0));
    }
    return set;
}

void save_channel_set(const ChannelSet& channels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_channel_set: cannot open " + path);

    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };

    out << channels.n() << ' ' << channels.m() << ' ' << channels.k() << ' '
        << channels.realization_seed << ' ';
    put(channels.noise_power);
    out << '\n';
    for (Eigen::Index row = 0; row < channels.n(); ++row) {
        for (Eigen::Index col = 0; col < channels.m(); ++col) {
            if (col) out << ' ';
            put(channels.incident(row, col).real());
            out << ' ';
            put(channels.incident(row, col).imag());
        }
        out << '\n';
    }
    for (const auto& h : channels.reflected) {
        for (Eigen::Index i = 0; i < h.size(); ++i) {
            if (i) out << ' ';
            put(h(i).real());
            out << ' ';
            put(h(i).imag());
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("save_channel_set: write failed for " + path);
}

ChannelSet load_channel_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_channel_set: cannot open " + path);

    Eigen::Index n = 0, m = 0;
    std::size_t k = 0;
    ChannelSet set;
    if (!(in >> n >> m >> k >> set.realization_seed >> set.noise_power))
        throw std::runtime_error("load_channel_set: bad header in " + path);
    if (n <= 0 || m <= 0 || k == 0)
        throw std::runtime_error("load_channel_set: bad dimensions in " + path);

    set.incident.resize(n, m);
    for (Eigen::Index row = 0; row < n; ++row)
        for (Eigen::Index col = 0; col < m; ++col) {
            double re = 0.0, im = 0.0;
            if (!(in >> re >> im))
                throw std::runtime_error("load_channel_set: truncated incident block");
            set.incident(row, col) = Complex(re, im);
        }
    set.reflected.assign(k, VectorC(n));
    for (auto& h : set.reflected)
        for (Eigen::Index i = 0; i < n; ++i) {
            double re = 0.0, im = 0.0;
            if (!(in >> re >> im))
                throw std::runtime_error("load_channel_set: truncated reflected block");
            h(i) = Complex(re, im);
        }
    return set;
}

} // namespace risee
