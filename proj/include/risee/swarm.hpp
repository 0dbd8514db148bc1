#ifndef RISEE_SWARM_HPP
#define RISEE_SWARM_HPP

#include <cstdint>
#include <vector>

#include "risee/palloc.hpp"
#include "risee/power.hpp"
#include "risee/ris.hpp"

namespace risee {

struct StepParams {
    double w = 0.0;   // inertia
    double c1 = 0.0;  // cognitive acceleration
    double c2 = 0.0;  // social acceleration
    double d1 = 0.0;  // cognitive discard rate
    double d2 = 0.0;  // social discard rate
};

struct ScheduleRow {
    int first_step = 1;
    int last_step = 1;
    StepParams params;
};

struct SwarmParams {
    int n_particles = 100;
    int n_steps = 100;
    std::vector<ScheduleRow> schedule;
    double init_weight_std = 0.25;
    std::uint64_t seed = 1;

    // Three-phase schedule with the phase boundaries at 65% and 85% of
    // n_steps, which reproduces the reference parameter table at 100 steps.
    static SwarmParams defaults(int n_particles = 100, int n_steps = 100,
                                std::uint64_t seed = 1);
};

// [-1, 1] at 1-bit resolution, [-2^Rb/4, 2^Rb/4] above.
double velocity_bound(int resolution_bits);

StepParams step_params(int step, const SwarmParams& params);

struct Particle {
    std::vector<int> position;
    std::vector<double> velocity;
    std::vector<int> best_position;
    double best_ee = 0.0;
    std::vector<double> best_alloc;
};

struct FitnessResult {
    double ee = 0.0;  // bits/joule
    std::vector<double> p;
    double se = 0.0;
    double total_power = 0.0;
    double p_elem = 0.0;
    int outer_iters = 0;
    bool converged = true;
};

// Full per-configuration pipeline: cascaded channel, RZF, effective gains,
// nested power allocation, EE with the configuration-dependent element
// power folded into P_fixed.
FitnessResult evaluate_fitness(const RisConfig& config, const ChannelSet& channels,
                               const PowerModel& model, ReconfigMethod method,
                               const Tolerances& tol, double bandwidth);

struct SwarmResult {
    RisConfig best_config;
    double best_ee = 0.0;
    std::vector<double> best_alloc;
    FitnessResult best_fitness;
    std::vector<double> trace;       // running best EE; trace[0] is the
                                     // post-initialization best
    std::vector<double> mean_trace;  // swarm mean EE per trace entry
    double step0_ee = 0.0;           // EE of the uniform-weight config
    int steps_run = 0;
    long fitness_evaluations = 0;    // unique configurations evaluated
};

// v <- w v + c1 r1 D1 (Pm - x) + c2 r2 D2 (Gm - x), clamped element-wise.
// r1, r2 are per-particle scalars; D1, D2 zero an element with probability
// d1 (resp. d2).
void velocity_update(Particle& particle, const std::vector<int>& gm, const StepParams& sp,
                     double bound, Rng& rng);

// round half away from zero, then wrap modulo 2^Rb
std::vector<int> position_update(const std::vector<int>& position,
                                 const std::vector<double>& velocity, int resolution_bits);

SwarmResult optimize(const Scenario& scenario, const ChannelSet& channels,
                     const SwarmParams& params, const PowerModel& model,
                     ReconfigMethod method, const Tolerances& tol, double bandwidth,
                     int resolution_bits);

} // namespace risee

#endif
