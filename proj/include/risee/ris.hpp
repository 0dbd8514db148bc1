#ifndef RISEE_RIS_HPP
#define RISEE_RIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "risee/channel.hpp"
#include "risee/rng.hpp"
#include "risee/scene.hpp"

namespace risee {

// 2^Rb equally spaced phases (2*pi/2^Rb)*(i + 1/2), offset half a step so
// no codeword sits at 0.
struct PhaseCodebook {
    int resolution_bits = 1;
    std::vector<double> phases;

    std::size_t size() const { return phases.size(); }
};

// Discrete phase-state grid, the decision variable of the optimizer.
// States are stored row-major over the sqrt(N) x sqrt(N) grid; this order
// matches the RIS ElementGrid and therefore the channel rows.
struct RisConfig {
    std::vector<int> states;
    std::size_t side = 0;  // sqrt(N)
    int resolution_bits = 1;
    double amplitude = 1.0;  // beta

    std::size_t size() const { return states.size(); }
    int n_states() const { return 1 << resolution_bits; }
};

PhaseCodebook phase_codebook(int resolution_bits);

// Index of the codebook phase nearest to theta mod 2*pi under circular
// distance; ties break toward the lower index.
int quantize_phase(double theta, const PhaseCodebook& codebook);

RisConfig make_config(std::size_t side, int resolution_bits, double amplitude = 1.0);

// phi_n = beta * e^{j phase(state_n)}
VectorC beamform_vector(const RisConfig& config);

// Row k = phi^T diag(h_{r,k}) G, the K x M matrix H_ris.
MatrixC cascaded_channel(const RisConfig& config, const ChannelSet& channels);

// Knowledge-based configuration: the continuous phase of element n is a
// weighted average of the incident and reflected phase responses, weights
// Gaussian with mean 1 (or exactly 1 with uniform=true), then quantized.
RisConfig initial_config(const Scenario& scenario, Rng& weights_rng, bool uniform,
                         int resolution_bits, double weight_std = 0.25,
                         double amplitude = 1.0);

// Continuous counterpart used by the CPSO baseline and by initial_config.
std::vector<double> initial_phases(const Scenario& scenario, Rng& weights_rng, bool uniform,
                                   double weight_std = 0.25);

// Text form: "N Rb" header then sqrt(N) rows of space-separated states.
void save_config(const RisConfig& config, const std::string& path);
RisConfig load_config(const std::string& path);

} // namespace risee

#endif
