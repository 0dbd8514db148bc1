#ifndef RISEE_BASELINES_HPP
#define RISEE_BASELINES_HPP

#include "risee/harness.hpp"

namespace risee {

// Shared inputs of one optimizer run on one drop.
struct DropContext {
    const Scenario* scenario = nullptr;
    const ChannelSet* channels = nullptr;
    PowerModel model;
    ReconfigMethod method = ReconfigMethod::PIN;
    int resolution_bits = 1;
    Tolerances tol;
    double bandwidth = 10e6;
};

ResultRow result_from_fitness(const DropContext& ctx, const std::string& optimizer,
                              const FitnessResult& fit);

// All elements in state 0; power allocation still runs.
ResultRow baseline_flat(const DropContext& ctx);

// One uniformly random configuration.
ResultRow baseline_random(const DropContext& ctx, Rng& rng);

// Coordinate-descent sweep from the flat configuration: each element set to
// the state maximizing fitness given the others, repeated until a full pass
// yields no improvement (at most max_passes).
ResultRow baseline_greedy(const DropContext& ctx, int max_passes = 10);

struct ExhaustiveResult {
    ResultRow row;
    RisConfig best_config;
    long evaluations = 0;
};

// Enumerates all 2^(Rb*N) configurations; rejected when that exceeds 2^cap_log2.
ExhaustiveResult baseline_exhaustive(const DropContext& ctx, int cap_log2 = 20);

// Continuous-phase PSO with quantization before every fitness evaluation.
struct CpsoResult {
    ResultRow row;
    RisConfig best_config;
    double best_ee = 0.0;
};
CpsoResult baseline_cpso(const DropContext& ctx, const SwarmParams& params);

struct IpsoRun {
    ResultRow row;
    SwarmResult swarm;
};
IpsoRun run_ipso(const DropContext& ctx, const SwarmParams& params);

} // namespace risee

#endif
