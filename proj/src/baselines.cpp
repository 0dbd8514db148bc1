#include "risee/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risee {

namespace {

double sum_of(const std::vector<double>& p) {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
}

} // namespace

ResultRow result_from_fitness(const DropContext& ctx, const std::string& optimizer,
                              const FitnessResult& fit) {
    ResultRow row;
    row.optimizer = optimizer;
    row.method = method_name(ctx.method);
    row.n = static_cast<int>(ctx.channels->n());
    row.rb = ctx.resolution_bits;
    row.p_t_max_dbm = watts_to_dbm(ctx.model.p_t_max);
    row.ee_bits_per_joule = fit.ee;
    row.se_bps_hz = fit.se;
    row.total_power_w = fit.total_power;
    row.p_elem_w = fit.p_elem;
    row.sum_p_tx_w = sum_of(fit.p);
    row.palloc_outer_iters = fit.outer_iters;
    return row;
}

ResultRow baseline_flat(const DropContext& ctx) {
    const RisConfig config = make_config(ctx.scenario->ris.rows, ctx.resolution_bits);
    const FitnessResult fit =
        evaluate_fitness(config, *ctx.channels, ctx.model, ctx.method, ctx.tol, ctx.bandwidth);
    return result_from_fitness(ctx, "flat", fit);
}

ResultRow baseline_random(const DropContext& ctx, Rng& rng) {
    RisConfig config = make_config(ctx.scenario->ris.rows, ctx.resolution_bits);
    const auto n_states = static_cast<std::uint64_t>(config.n_states());
    for (auto& s : config.states) s = static_cast<int>(rng.uniform_int(n_states));
    const FitnessResult fit =
        evaluate_fitness(config, *ctx.channels, ctx.model, ctx.method, ctx.tol, ctx.bandwidth);
    return result_from_fitness(ctx, "random", fit);
}

ResultRow baseline_greedy(const DropContext& ctx, int max_passes) {
    RisConfig config = make_config(ctx.scenario->ris.rows, ctx.resolution_bits);
    FitnessResult best =
        evaluate_fitness(config, *ctx.channels, ctx.model, ctx.method, ctx.tol, ctx.bandwidth);

    const int n_states = config.n_states();
    for (int pass = 0; pass < max_passes; ++pass) {
        bool improved = false;
        for (std::size_t i = 0; i < config.size(); ++i) {
            const int original = config.states[i];
            int best_state = original;
            for (int s = 0; s < n_states; ++s) {
                if (s == original) continue;
                config.states[i] = s;
                const FitnessResult fit = evaluate_fitness(config, *ctx.channels, ctx.model,
                                                           ctx.method, ctx.tol, ctx.bandwidth);
                if (fit.ee > best.ee) {
                    best = fit;
                    best_state = s;
                }
            }
            if (best_state != original) improved = true;
            config.states[i] = best_state;
        }
        if (!improved) break;
    }
    return result_from_fitness(ctx, "greedy", best);
}

ExhaustiveResult baseline_exhaustive(const DropContext& ctx, int cap_log2) {
    const std::size_t n = ctx.scenario->n_ris();
    const long total_bits = static_cast<long>(n) * ctx.resolution_bits;
    if (total_bits > cap_log2)
        throw std::invalid_argument("baseline_exhaustive: 2^" + std::to_string(total_bits) +
                                    " configurations exceed the 2^" + std::to_string(cap_log2) +
                                    " cap");

    RisConfig config = make_config(ctx.scenario->ris.rows, ctx.resolution_bits);
    const int n_states = config.n_states();

    ExhaustiveResult result;
    result.best_config = config;
    FitnessResult best;
    best.ee = -1.0;

    bool done = false;
    while (!done) {
        const FitnessResult fit = evaluate_fitness(config, *ctx.channels, ctx.model, ctx.method,
                                                   ctx.tol, ctx.bandwidth);
        ++result.evaluations;
        if (fit.ee > best.ee) {
            best = fit;
            result.best_config = config;
        }
        // odometer increment over the state grid
        done = true;
        for (std::size_t i = 0; i < config.size(); ++i) {
            if (++config.states[i] < n_states) {
                done = false;
                break;
            }
            config.states[i] = 0;
        }
    }
    result.row = result_from_fitness(ctx, "exhaustive", best);
    return result;
}

CpsoResult baseline_cpso(const DropContext& ctx, const SwarmParams& params) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    const double bound = std::numbers::pi / 2.0;

    Rng rng(params.seed);
    const PhaseCodebook book = phase_codebook(ctx.resolution_bits);
    const std::size_t n = ctx.scenario->n_ris();

    struct CParticle {
        std::vector<double> theta;
        std::vector<double> velocity;
        std::vector<double> best_theta;
        double best_ee = -1.0;
    };

    auto quantized = [&](const std::vector<double>& theta) {
        RisConfig config = make_config(ctx.scenario->ris.rows, ctx.resolution_bits);
        for (std::size_t i = 0; i < n; ++i)
            config.states[i] = quantize_phase(theta[i], book);
        return config;
    };

    std::vector<CParticle> swarm(static_cast<std::size_t>(params.n_particles));
    for (std::size_t p = 0; p < swarm.size(); ++p) {
        swarm[p].theta = initial_phases(*ctx.scenario, rng, p == 0, params.init_weight_std);
        for (auto& t : swarm[p].theta) t = std::fmod(std::fmod(t, kTwoPi) + kTwoPi, kTwoPi);
        swarm[p].velocity.resize(n);
        for (auto& v : swarm[p].velocity) v = rng.uniform(-bound, bound);
    }

    std::vector<double> gm;
    double gm_ee = -1.0;
    FitnessResult gm_fit;
    RisConfig gm_config = make_config(ctx.scenario->ris.rows, ctx.resolution_bits);

    auto evaluate = [&](CParticle& particle) {
        const RisConfig config = quantized(particle.theta);
        const FitnessResult fit = evaluate_fitness(config, *ctx.channels, ctx.model, ctx.method,
                                                   ctx.tol, ctx.bandwidth);
        if (fit.ee > particle.best_ee) {
            particle.best_ee = fit.ee;
            particle.best_theta = particle.theta;
        }
        if (fit.ee > gm_ee) {
            gm_ee = fit.ee;
            gm = particle.theta;
            gm_fit = fit;
            gm_config = config;
        }
    };

    for (auto& particle : swarm) {
        particle.best_theta = particle.theta;
        evaluate(particle);
    }

    for (int step = 1; step <= params.n_steps; ++step) {
        const StepParams sp = step_params(step, params);
        const std::vector<double> gm_snapshot = gm;
        for (auto& particle : swarm) {
            const double r1 = rng.uniform_open();
            const double r2 = rng.uniform_open();
            for (std::size_t i = 0; i < n; ++i) {
                double v = sp.w * particle.velocity[i] +
                           sp.c1 * r1 * (particle.best_theta[i] - particle.theta[i]) +
                           sp.c2 * r2 * (gm_snapshot[i] - particle.theta[i]);
                particle.velocity[i] = std::clamp(v, -bound, bound);
                double t = particle.theta[i] + particle.velocity[i];
                t = std::fmod(t, kTwoPi);
                if (t < 0.0) t += kTwoPi;
                particle.theta[i] = t;
            }
            evaluate(particle);
        }
    }

    CpsoResult result;
    result.row = result_from_fitness(ctx, "cpso", gm_fit);
    result.row.pso_steps = params.n_steps;
    result.best_config = gm_config;
    result.best_ee = gm_ee;
    return result;
}

IpsoRun run_ipso(const DropContext& ctx, const SwarmParams& params) {
    IpsoRun run;
    run.swarm = optimize(*ctx.scenario, *ctx.channels, params, ctx.model, ctx.method, ctx.tol,
                         ctx.bandwidth, ctx.resolution_bits);
    run.row = result_from_fitness(ctx, "ipso", run.swarm.best_fitness);
    run.row.pso_steps = run.swarm.steps_run;
    return run;
}

} // namespace risee
