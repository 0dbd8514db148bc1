#include "risee/ris.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace risee {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double circular_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

} // namespace

PhaseCodebook phase_codebook(int resolution_bits) {
    if (resolution_bits < 1 || resolution_bits > 16)
        throw std::invalid_argument("phase_codebook: resolution must be in [1, 16]");

    PhaseCodebook book;
    book.resolution_bits = resolution_bits;
    const int count = 1 << resolution_bits;
    const double step = kTwoPi / count;
    book.phases.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) book.phases.push_back(step * (i + 0.5));
    return book;
}

int quantize_phase(double theta, const PhaseCodebook& codebook) {
    if (!std::isfinite(theta)) throw std::invalid_argument("quantize_phase: non-finite phase");

    const int count = static_cast<int>(codebook.size());
    const double step = kTwoPi / count;
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;

    // codewords sit at (i + 1/2) * step, so the two candidates bracket t
    const double pos = t / step;
    long lo = static_cast<long>(std::floor(pos - 0.5));
    long hi = lo + 1;
    const int lo_idx = static_cast<int>(((lo % count) + count) % count);
    const int hi_idx = static_cast<int>(((hi % count) + count) % count);

    const double d_lo = circular_distance(t, codebook.phases[static_cast<std::size_t>(lo_idx)]);
    const double d_hi = circular_distance(t, codebook.phases[static_cast<std::size_t>(hi_idx)]);
    if (d_lo < d_hi) return lo_idx;
    if (d_hi < d_lo) return hi_idx;
    return std::min(lo_idx, hi_idx);
}

RisConfig make_config(std::size_t side, int resolution_bits, double amplitude) {
    if (side < 1) throw std::invalid_argument("make_config: side must be >= 1");
    if (resolution_bits < 1 || resolution_bits > 16)
        throw std::invalid_argument("make_config: resolution must be in [1, 16]");
    if (!(amplitude > 0.0) || amplitude > 1.0)
        throw std::invalid_argument("make_config: amplitude must be in (0, 1]");

    RisConfig config;
    config.side = side;
    config.resolution_bits = resolution_bits;
    config.amplitude = amplitude;
    config.states.assign(side * side, 0);
    return config;
}

VectorC beamform_vector(const RisConfig& config) {
    const PhaseCodebook book = phase_codebook(config.resolution_bits);
    VectorC phi(static_cast<Eigen::Index>(config.size()));
    for (std::size_t i = 0; i < config.size(); ++i) {
        const int s = config.states[i];
        if (s < 0 || s >= config.n_states())
            throw std::invalid_argument("beamform_vector: state out of range");
        phi(static_cast<Eigen::Index>(i)) =
            std::polar(config.amplitude, book.phases[static_cast<std::size_t>(s)]);
    }
    return phi;
}

MatrixC cascaded_channel(const RisConfig& config, const ChannelSet& channels) {
    const Eigen::Index n = channels.n();
    if (static_cast<Eigen::Index>(config.size()) != n)
        throw std::invalid_argument("cascaded_channel: config/channel size mismatch");

    const VectorC phi = beamform_vector(config);
    MatrixC h_ris(static_cast<Eigen::Index>(channels.k()), channels.m());
    for (std::size_t k = 0; k < channels.k(); ++k) {
        if (channels.reflected[k].size() != n)
            throw std::invalid_argument("cascaded_channel: reflected vector size mismatch");
        // phi^T diag(h_{r,k}) G  ==  (phi .* h_{r,k})^T G
        const VectorC weighted = phi.cwiseProduct(channels.reflected[k]);
        h_ris.row(static_cast<Eigen::Index>(k)) = weighted.transpose() * channels.incident;
    }
    return h_ris;
}

std::vector<double> initial_phases(const Scenario& scenario, Rng& weights_rng, bool uniform,
                                   double weight_std) {
    const std::size_t n = scenario.n_ris();
    const std::size_t m = scenario.n_fbs();
    const std::size_t k = scenario.n_ues();
    if (n == 0 || m == 0 || k == 0)
        throw std::invalid_argument("initial_phases: incomplete scenario");

    std::vector<double> in_weights(m, 1.0);
    std::vector<double> re_weights(k, 1.0);
    if (!uniform) {
        for (auto& w : in_weights) w = 1.0 + weight_std * weights_rng.gaussian();
        for (auto& w : re_weights) w = 1.0 + weight_std * weights_rng.gaussian();
    }

    std::vector<double> theta(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        const Coordinate& elem = scenario.ris.coordinates[p];
        double acc_in = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double d = pairwise_distance(elem, scenario.fbs.coordinates[j]);
            acc_in += in_weights[j] * phase_response(d, scenario.wavelength);
        }
        double acc_re = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double d = pairwise_distance(elem, scenario.ues[j]);
            acc_re += re_weights[j] * phase_response(d, scenario.wavelength);
        }
        theta[p] = acc_in / static_cast<double>(m) + acc_re / static_cast<double>(k);
    }
    return theta;
}

RisConfig initial_config(const Scenario& scenario, Rng& weights_rng, bool uniform,
                         int resolution_bits, double weight_std, double amplitude) {
    const std::size_t side = scenario.ris.rows;
    if (side * side != scenario.n_ris())
        throw std::invalid_argument("initial_config: RIS grid is not square");

    const std::vector<double> theta = initial_phases(scenario, weights_rng, uniform, weight_std);
    const PhaseCodebook book = phase_codebook(resolution_bits);
    RisConfig config = make_config(side, resolution_bits, amplitude);
    for (std::size_t i = 0; i < theta.size(); ++i)
        config.states[i] = quantize_phase(theta[i], book);
    return config;
}

void save_config(const RisConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_config: cannot open " + path);
    out << config.size() << ' ' << config.resolution_bits << '\n';
    for (std::size_t r = 0; r < config.side; ++r) {
        for (std::size_t c = 0; c < config.side; ++c) {
            if (c) out << ' ';
            out << config.states[r * config.side + c];
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("save_config: write failed for " + path);
}

RisConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open " + path);

    std::size_t n = 0;
    int rb = 0;
    if (!(in >> n >> rb)) throw std::runtime_error("load_config: bad header in " + path);
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (side * side != n) throw std::runtime_error("load_config: element count not square");

    RisConfig config = make_config(side, rb);
    for (auto& s : config.states) {
        if (!(in >> s)) throw std::runtime_error("load_config: truncated state grid");
        if (s < 0 || s >= config.n_states())
            throw std::runtime_error("load_config: state out of range");
    }
    return config;
}

} // namespace risee
