#include "risee/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "risee/link.hpp"

namespace risee {

SwarmParams SwarmParams::defaults(int n_particles, int n_steps, std::uint64_t seed) {
    if (n_particles < 1) throw std::invalid_argument("SwarmParams: n_particles must be >= 1");
    if (n_steps < 0) throw std::invalid_argument("SwarmParams: n_steps must be >= 0");

    SwarmParams params;
    params.n_particles = n_particles;
    params.n_steps = n_steps;
    params.seed = seed;
    if (n_steps == 0) return params;

    const int b1 = std::max(1, static_cast<int>(std::lround(0.65 * n_steps)));
    const int b2 = std::max(b1, static_cast<int>(std::lround(0.85 * n_steps)));
    params.schedule = {
        {1, b1, {0.6, 1.0, 1.0, 0.6, 0.6}},
        {b1 + 1, b2, {0.4, 0.9, 1.1, 0.4, 0.4}},
        {b2 + 1, n_steps, {0.2, 0.8, 1.2, 0.1, 0.1}},
    };
    // drop empty phases created by small n_steps
    std::erase_if(params.schedule,
                  [](const ScheduleRow& r) { return r.first_step > r.last_step; });
    return params;
}

double velocity_bound(int resolution_bits) {
    if (resolution_bits < 1) throw std::invalid_argument("velocity_bound: bad resolution");
    if (resolution_bits == 1) return 1.0;
    return static_cast<double>(1 << resolution_bits) / 4.0;
}

StepParams step_params(int step, const SwarmParams& params) {
    for (const auto& row : params.schedule)
        if (step >= row.first_step && step <= row.last_step) return row.params;
    throw std::out_of_range("step_params: step " + std::to_string(step) +
                            " not covered by schedule");
}

FitnessResult evaluate_fitness(const RisConfig& config, const ChannelSet& channels,
                               const PowerModel& model, ReconfigMethod method,
                               const Tolerances& tol, double bandwidth) {
    FitnessResult result;
    result.p_elem = element_power(config, method, model);
    const double p_fixed = fixed_power(static_cast<int>(channels.k()),
                                       ris_power(config, method, model), model);

    const MatrixC h_ris = cascaded_channel(config, channels);
    if (h_ris.norm() == 0.0) {
        // nothing reaches the users: the allocator would drive p to zero
        result.p.assign(channels.k(), 0.0);
        result.total_power = p_fixed;
        return result;
    }

    const Precoder precoder =
        rzf_precoder(h_ris, channels.noise_power, static_cast<int>(channels.k()));
    const GainMatrix zeta = effective_gains(h_ris, precoder);

    const AllocResult alloc = allocate_power(zeta, channels.noise_power, p_fixed, model.xi(),
                                             bandwidth, model.p_t_max, tol);
    result.ee = alloc.eta_ee;
    result.p = alloc.p;
    result.se = spectral_efficiency(sinr(zeta, alloc.p, channels.noise_power));
    result.outer_iters = alloc.outer_iters;
    result.converged = alloc.converged;

    double sum_p = 0.0;
    for (double v : alloc.p) sum_p += v;
    result.total_power = p_fixed + model.xi() * sum_p;
    return result;
}

void velocity_update(Particle& particle, const std::vector<int>& gm, const StepParams& sp,
                     double bound, Rng& rng) {
    const std::size_t n = particle.position.size();
    if (gm.size() != n || particle.velocity.size() != n || particle.best_position.size() != n)
        throw std::invalid_argument("velocity_update: shape mismatch");

    const double r1 = rng.uniform_open();
    const double r2 = rng.uniform_open();
    for (std::size_t i = 0; i < n; ++i) {
        const double mask1 = rng.bernoulli(sp.d1) ? 0.0 : 1.0;
        const double mask2 = rng.bernoulli(sp.d2) ? 0.0 : 1.0;
        double v = sp.w * particle.velocity[i] +
                   sp.c1 * r1 * mask1 *
                       static_cast<double>(particle.best_position[i] - particle.position[i]) +
                   sp.c2 * r2 * mask2 *
                       static_cast<double>(gm[i] - particle.position[i]);
        particle.velocity[i] = std::clamp(v, -bound, bound);
    }
}

std::vector<int> position_update(const std::vector<int>& position,
                                 const std::vector<double>& velocity, int resolution_bits) {
    if (position.size() != velocity.size())
        throw std::invalid_argument("position_update: shape mismatch");

    const long modulus = 1L << resolution_bits;
    std::vector<int> out(position.size());
    for (std::size_t i = 0; i < position.size(); ++i) {
        long v = std::lround(static_cast<double>(position[i]) + velocity[i]);
        v %= modulus;
        if (v < 0) v += modulus;
        out[i] = static_cast<int>(v);
    }
    return out;
}

namespace {

std::string position_key(const std::vector<int>& position) {
    std::string key;
    key.reserve(position.size() * 2);
    for (int s : position) {
        key.push_back(static_cast<char>(s & 0xff));
        key.push_back(static_cast<char>((s >> 8) & 0xff));
    }
    return key;
}

} // namespace

SwarmResult optimize(const Scenario& scenario, const ChannelSet& channels,
                     const SwarmParams& params, const PowerModel& model,
                     ReconfigMethod method, const Tolerances& tol, double bandwidth,
                     int resolution_bits) {
    if (params.n_particles < 1) throw std::invalid_argument("optimize: need >= 1 particle");
    const std::size_t side = scenario.ris.rows;
    if (side * side != scenario.n_ris())
        throw std::invalid_argument("optimize: RIS grid is not square");

    Rng rng(params.seed);
    const double bound = velocity_bound(resolution_bits);

    std::unordered_map<std::string, FitnessResult> cache;
    long evaluations = 0;
    auto fitness_of = [&](const std::vector<int>& position) -> const FitnessResult& {
        auto [it, inserted] = cache.try_emplace(position_key(position));
        if (inserted) {
            RisConfig config = make_config(side, resolution_bits);
            config.states = position;
            it->second = evaluate_fitness(config, channels, model, method, tol, bandwidth);
            ++evaluations;
        }
        return it->second;
    };

    // particle 0 starts from the uniform-weight knowledge-based
    // configuration, the rest from Gaussian-weight variants
    std::vector<Particle> swarm(static_cast<std::size_t>(params.n_particles));
    for (std::size_t p = 0; p < swarm.size(); ++p) {
        const RisConfig config = initial_config(scenario, rng, p == 0, resolution_bits,
                                                params.init_weight_std);
        swarm[p].position = config.states;
        swarm[p].velocity.resize(config.size());
        for (auto& v : swarm[p].velocity) v = rng.uniform(-bound, bound);
    }

    SwarmResult result;
    std::size_t gm_index = 0;
    double mean_acc = 0.0;
    for (std::size_t p = 0; p < swarm.size(); ++p) {
        const FitnessResult& fit = fitness_of(swarm[p].position);
        swarm[p].best_position = swarm[p].position;
        swarm[p].best_ee = fit.ee;
        swarm[p].best_alloc = fit.p;
        mean_acc += fit.ee;
        if (p == 0) result.step0_ee = fit.ee;
        if (fit.ee > swarm[gm_index].best_ee) gm_index = p;
    }
    std::vector<int> gm = swarm[gm_index].best_position;
    double gm_ee = swarm[gm_index].best_ee;
    result.trace.push_back(gm_ee);
    result.mean_trace.push_back(mean_acc / static_cast<double>(swarm.size()));

    for (int step = 1; step <= params.n_steps; ++step) {
        const StepParams sp = step_params(step, params);
        mean_acc = 0.0;
        for (auto& particle : swarm) {
            velocity_update(particle, gm, sp, bound, rng);
            particle.position = position_update(particle.position, particle.velocity,
                                                resolution_bits);
            const FitnessResult& fit = fitness_of(particle.position);
            mean_acc += fit.ee;
            if (fit.ee > particle.best_ee) {
                particle.best_ee = fit.ee;
                particle.best_position = particle.position;
                particle.best_alloc = fit.p;
            }
        }
        // synchronous PSO: the social best moves only between steps
        for (const auto& particle : swarm)
            if (particle.best_ee > gm_ee) {
                gm_ee = particle.best_ee;
                gm = particle.best_position;
            }
        result.trace.push_back(gm_ee);
        result.mean_trace.push_back(mean_acc / static_cast<double>(swarm.size()));
        result.steps_run = step;
    }

    result.best_config = make_config(side, resolution_bits);
    result.best_config.states = gm;
    result.best_ee = gm_ee;
    result.best_fitness = fitness_of(gm);
    result.best_alloc = result.best_fitness.p;
    result.fitness_evaluations = evaluations;
    return result;
}

} // namespace risee
