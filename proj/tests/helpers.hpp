#ifndef RISEE_TESTS_HELPERS_HPP
#define RISEE_TESTS_HELPERS_HPP

#include <cmath>
#include <vector>

#include "risee/harness.hpp"
#include "risee/link.hpp"
#include "risee/rng.hpp"

namespace risee::test {

// Random effective-gain matrix with channel-realistic magnitudes: strong
// diagonal, heavily suppressed cross gains (the RZF precoder leaves
// interference two to four orders below the direct gains), scaled so full
// power spans roughly -17 dB to +43 dB of SNR.
inline GainMatrix random_gains(int k_users, Rng& rng, double scale = 1e-11) {
    GainMatrix zeta;
    zeta.zeta.resize(k_users, k_users);
    for (int r = 0; r < k_users; ++r)
        for (int c = 0; c < k_users; ++c) {
            if (r == c)
                zeta.zeta(r, c) = scale * (0.5 + 1.5 * rng.uniform());
            else
                zeta.zeta(r, c) = scale * 0.05 * rng.uniform();
        }
    return zeta;
}

inline double random_gain_scale(Rng& rng) {
    return 1e-13 * std::pow(10.0, 3.0 * rng.uniform());
}

// Straight-line EE recomputation with plain loops; kept separate from the
// library path on purpose.
inline double hand_ee(const GainMatrix& zeta, const std::vector<double>& p, double noise,
                      double p_fixed, double xi, double bandwidth) {
    const int k = static_cast<int>(zeta.users());
    double se = 0.0, sum_p = 0.0;
    for (int i = 0; i < k; ++i) {
        double denom = noise;
        for (int j = 0; j < k; ++j)
            if (j != i) denom += p[static_cast<std::size_t>(j)] * zeta.zeta(i, j);
        se += std::log2(1.0 + p[static_cast<std::size_t>(i)] * zeta.zeta(i, i) / denom);
        sum_p += p[static_cast<std::size_t>(i)];
    }
    return bandwidth * se / (p_fixed + xi * sum_p);
}

// Small random drop shared by the optimizer tests.
struct TestDrop {
    Scenario scenario;
    ChannelSet channels;
};

inline TestDrop make_drop(int n, int m, int k, std::uint64_t seed,
                          const ExperimentConfig& config = {}) {
    TestDrop drop;
    ExperimentConfig cfg = config;
    cfg.m = m;
    cfg.k = k;
    const Rng root(seed);
    Rng scene_rng = root.child(1);
    Rng chan_rng = root.child(2);
    drop.scenario = build_scenario(cfg, n, scene_rng);
    drop.channels = synthesize_channels(drop.scenario, {cfg.rician_h, cfg.rician_g},
                                        cfg.noise_power(), chan_rng, cfg.pathloss_exponent);
    return drop;
}

} // namespace risee::test

#endif
