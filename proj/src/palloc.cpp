#include "risee/palloc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace risee {

namespace {

double sum_of(std::span<const double> p) { return std::accumulate(p.begin(), p.end(), 0.0); }

// Terms of the Lemma-1 closed form that do not depend on rho:
// p_k(rho) = num_k / (rho + base_k)^2 with base_k = eta xi + sum_j y_j^2 zeta_jk.
struct ClosedFormTerms {
    Eigen::VectorXd num;
    Eigen::VectorXd base;

    double sum_p(double rho) const {
        double s = 0.0;
        for (Eigen::Index k = 0; k < num.size(); ++k) {
            if (num(k) == 0.0) continue;
            const double d = rho + base(k);
            s += num(k) / (d * d);
        }
        return s;
    }

    std::vector<double> allocation(double rho) const {
        std::vector<double> p(static_cast<std::size_t>(num.size()), 0.0);
        for (Eigen::Index k = 0; k < num.size(); ++k) {
            if (num(k) == 0.0) continue;
            const double d = rho + base(k);
            if (!(d > 0.0))
                throw std::domain_error("p_update: zero denominator with positive numerator");
            p[static_cast<std::size_t>(k)] = num(k) / (d * d);
        }
        return p;
    }
};

ClosedFormTerms closed_form_terms(const Eigen::VectorXd& gamma, const Eigen::VectorXd& y,
                                  double eta, const GainMatrix& zeta, double xi) {
    const Eigen::Index k_users = zeta.users();
    if (gamma.size() != k_users || y.size() != k_users)
        throw std::invalid_argument("p_update: gamma/y size mismatch");

    ClosedFormTerms terms;
    terms.num.resize(k_users);
    terms.base.resize(k_users);
    for (Eigen::Index k = 0; k < k_users; ++k) {
        terms.num(k) = y(k) * y(k) * kLog2Scale * (1.0 + gamma(k)) * zeta.zeta(k, k);
        double cross = 0.0;
        for (Eigen::Index j = 0; j < k_users; ++j)
            cross += y(j) * y(j) * zeta.zeta(j, k);
        terms.base(k) = eta * xi + cross;
    }
    return terms;
}

} // namespace

double objective_j(std::span<const double> p, double eta, const GainMatrix& zeta,
                   double noise_power, double p_fixed, double xi, double bandwidth) {
    const Eigen::VectorXd gamma = gamma_update(p, zeta, noise_power);
    double se = 0.0;
    for (Eigen::Index k = 0; k < gamma.size(); ++k) se += std::log2(1.0 + gamma(k));
    return bandwidth * se - eta * (p_fixed + xi * sum_of(p));
}

double dinkelbach_eta(std::span<const double> p, const GainMatrix& zeta, double noise_power,
                      double p_fixed, double xi, double bandwidth) {
    const Eigen::VectorXd gamma = gamma_update(p, zeta, noise_power);
    double se = 0.0;
    for (Eigen::Index k = 0; k < gamma.size(); ++k) se += std::log2(1.0 + gamma(k));
    return bandwidth * se / (p_fixed + xi * sum_of(p));
}

Eigen::VectorXd gamma_update(std::span<const double> p, const GainMatrix& zeta,
                             double noise_power) {
    return sinr(zeta, p, noise_power);
}

Eigen::VectorXd y_update(std::span<const double> p, const Eigen::VectorXd& gamma,
                         const GainMatrix& zeta, double noise_power) {
    const Eigen::Index k_users = zeta.users();
    if (static_cast<Eigen::Index>(p.size()) != k_users || gamma.size() != k_users)
        throw std::invalid_argument("y_update: size mismatch");

    Eigen::VectorXd y(k_users);
    for (Eigen::Index k = 0; k < k_users; ++k) {
        double denom = noise_power;
        for (Eigen::Index j = 0; j < k_users; ++j)
            denom += p[static_cast<std::size_t>(j)] * zeta.zeta(k, j);
        const double num = kLog2Scale * (1.0 + gamma(k)) *
                           p[static_cast<std::size_t>(k)] * zeta.zeta(k, k);
        y(k) = std::sqrt(std::max(num, 0.0)) / denom;
    }
    return y;
}

std::vector<double> p_update(const Eigen::VectorXd& gamma, const Eigen::VectorXd& y,
                             double eta, double rho, const GainMatrix& zeta, double xi) {
    return closed_form_terms(gamma, y, eta, zeta, xi).allocation(rho);
}

RhoResult solve_rho(const Eigen::VectorXd& gamma, const Eigen::VectorXd& y, double eta,
                    const GainMatrix& zeta, double xi, double p_t_max,
                    double tol, int max_bisect) {
    if (!(p_t_max > 0.0)) throw std::invalid_argument("solve_rho: p_t_max must be > 0");

    const ClosedFormTerms terms = closed_form_terms(gamma, y, eta, zeta, xi);
    if (terms.sum_p(0.0) <= p_t_max) return {0.0, true};

    // sum_p is strictly decreasing in rho; double until the budget is met
    double lo = 0.0;
    double hi = 1.0;
    int doublings = 0;
    while (terms.sum_p(hi) > p_t_max) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > max_bisect) return {hi, false};
    }

    double rho = hi;  // feasible side
    for (int i = 0; i < max_bisect; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double s = terms.sum_p(mid);
        if (s > p_t_max)
            lo = mid;
        else {
            hi = mid;
            rho = mid;
            if (p_t_max - s <= tol * p_t_max) return {rho, true};
        }
    }
    return {rho, std::abs(terms.sum_p(rho) - p_t_max) <= tol * p_t_max};
}

InnerResult iqt_solve(std::span<const double> p_init, double eta, const GainMatrix& zeta,
                      double noise_power, double p_fixed, double xi, double bandwidth,
                      double p_t_max, const Tolerances& tol,
                      AllocState* state_out, int outer_index,
                      std::vector<AllocTraceRow>* trace) {
    const Eigen::Index k_users = zeta.users();
    if (static_cast<Eigen::Index>(p_init.size()) != k_users)
        throw std::invalid_argument("iqt_solve: p_init size mismatch");

    const double eta_norm = eta / bandwidth;  // units of the inner algebra

    std::vector<double> p(p_init.begin(), p_init.end());
    // degenerate users never receive power; the closed form returns 0 for
    // them anyway once y_k = 0
    for (Eigen::Index k = 0; k < k_users; ++k)
        if (zeta.zeta(k, k) == 0.0) p[static_cast<std::size_t>(k)] = 0.0;

    InnerResult result;
    double j_prev = objective_j(p, eta, zeta, noise_power, p_fixed, xi, bandwidth);
    Eigen::VectorXd gamma, y;
    double rho = 0.0;

    for (int t = 1; t <= tol.max_inner; ++t) {
        gamma = gamma_update(p, zeta, noise_power);
        y = y_update(p, gamma, zeta, noise_power);
        const RhoResult rs = solve_rho(gamma, y, eta_norm, zeta, xi, p_t_max);
        rho = rs.rho;
        p = p_update(gamma, y, eta_norm, rho, zeta, xi);

        const double j = objective_j(p, eta, zeta, noise_power, p_fixed, xi, bandwidth);
        if (trace)
            trace->push_back({outer_index, t, eta, j, sum_of(p), rho});
        result.iterations = t;
        const bool done = std::abs(j - j_prev) <= tol.eps_inner;
        j_prev = j;
        if (done) {
            result.converged = true;
            break;
        }
    }

    result.p = p;
    result.j_value = j_prev;
    if (state_out) {
        state_out->p = p;
        state_out->gamma = gamma;
        state_out->y = y;
        state_out->eta = eta;
        state_out->rho = rho;
        state_out->inner_iter += result.iterations;
        state_out->j_value = j_prev;
    }
    return result;
}

AllocResult allocate_power(const GainMatrix& zeta, double noise_power, double p_fixed,
                           double xi, double bandwidth, double p_t_max,
                           const Tolerances& tol, std::span<const double> p0,
                           std::vector<AllocTraceRow>* trace) {
    const Eigen::Index k_users = zeta.users();
    if (k_users < 1) throw std::invalid_argument("allocate_power: no users");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("allocate_power: noise power must be > 0");
    if (!(p_fixed > 0.0)) throw std::invalid_argument("allocate_power: p_fixed must be > 0");

    std::vector<double> p;
    if (p0.empty()) {
        p.assign(static_cast<std::size_t>(k_users), p_t_max / static_cast<double>(k_users));
    } else {
        if (static_cast<Eigen::Index>(p0.size()) != k_users)
            throw std::invalid_argument("allocate_power: p0 size mismatch");
        if (sum_of(p0) > p_t_max * (1.0 + 1e-12))
            throw std::invalid_argument("allocate_power: infeasible p0");
        p.assign(p0.begin(), p0.end());
    }

    AllocResult result;
    result.state.p = p;

    for (int n = 1; n <= tol.max_outer; ++n) {
        const double eta = dinkelbach_eta(p, zeta, noise_power, p_fixed, xi, bandwidth);
        const InnerResult inner = iqt_solve(p, eta, zeta, noise_power, p_fixed, xi, bandwidth,
                                            p_t_max, tol, &result.state, n, trace);
        p = inner.p;
        result.outer_iters = n;
        result.inner_iters += inner.iterations;
        result.state.outer_iter = n;
        if (std::abs(inner.j_value) <= tol.eps_outer) {
            result.converged = inner.converged;
            break;
        }
    }

    result.p = p;
    result.eta_ee = dinkelbach_eta(p, zeta, noise_power, p_fixed, xi, bandwidth);
    return result;
}

} // namespace risee
