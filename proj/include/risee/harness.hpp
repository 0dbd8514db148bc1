#ifndef RISEE_HARNESS_HPP
#define RISEE_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "risee/channel.hpp"
#include "risee/palloc.hpp"
#include "risee/power.hpp"
#include "risee/scene.hpp"
#include "risee/swarm.hpp"

namespace risee {

inline constexpr double kSpeedOfLight = 299792458.0;

// Flat key=value experiment description; one file fully determines a sweep
// including seeds. Keys mirror the simulation-parameter table, see the
// README for the full list.
struct ExperimentConfig {
    int m = 8;
    int k = 4;
    std::vector<int> n_list = {100, 400, 900};
    std::vector<int> rb_list = {1};
    std::vector<ReconfigMethod> method_list = {ReconfigMethod::PIN, ReconfigMethod::VARACTOR,
                                               ReconfigMethod::RF_SWITCH};
    std::vector<double> p_t_max_dbm_list = {25.0};

    double frequency_hz = 5.25e9;
    double fbs_spacing_wl = 0.5;   // d_FBS in wavelengths
    double ris_spacing_wl = 0.25;  // d_RIS in wavelengths
    Region region{{4.0, 6.0}, {-8.0, 8.0}, {-8.0, 8.0}};
    double rician_h = 5.0;
    double rician_g = 5.0;
    double noise_dbm = -94.0;
    double pathloss_exponent = 2.0;
    double bandwidth_hz = 10e6;

    double p_fbs_dbm = 30.0;
    double p_ue_dbm = 10.0;
    double p_controller_mw = 10.0;
    double p_dc_varactor_mw = 4.0;
    double p_dc_pin_switch_mw = 0.01;
    double p_pin_mw = 1.25;
    double p_switch_mw = 0.5;
    double nu = 0.8;

    int n_drops = 20;
    std::uint64_t master_seed = 1;
    int n_particles = 100;
    int n_steps = 100;
    double init_weight_std = 0.25;
    double eps_outer_rel = 1e-6;  // scaled by bandwidth
    double eps_inner_rel = 1e-8;
    int max_outer = 100;
    int max_inner = 200;
    std::vector<std::string> optimizers = {"ipso", "flat", "random"};
    int exhaustive_cap_log2 = 20;
    bool record_timing = false;
    int workers = 0;  // 0 = hardware concurrency

    double wavelength() const { return kSpeedOfLight / frequency_hz; }
    double noise_power() const { return dbm_to_watts(noise_dbm); }
    PowerModel power_model(double p_t_max_dbm) const;
    Tolerances tolerances() const;
    SwarmParams swarm_params(std::uint64_t seed) const;
    void validate() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

// One random placement: RIS at the origin, FBS line and K UEs uniform over
// the region. The FBS center is drawn from the region shrunk by half the
// array aperture so every antenna stays inside.
Scenario build_scenario(const ExperimentConfig& config, int n_elements, Rng& rng);

struct ResultRow {
    std::string scenario_id;
    std::uint64_t drop_seed = 0;
    std::string method;
    int n = 0;
    int rb = 0;
    double p_t_max_dbm = 0.0;
    std::string optimizer;
    double ee_bits_per_joule = 0.0;
    double se_bps_hz = 0.0;
    double total_power_w = 0.0;
    double p_elem_w = 0.0;
    double sum_p_tx_w = 0.0;
    int pso_steps = 0;
    int palloc_outer_iters = 0;
    double wall_time_s = 0.0;
    std::string error;
};

struct SummaryRow {
    std::string method;
    int n = 0;
    int rb = 0;
    double p_t_max_dbm = 0.0;
    std::string optimizer;
    int n_drops = 0;
    double mean_ee = 0.0;
    double mean_se = 0.0;
    double mean_total_power_w = 0.0;
    double mean_p_elem_w = 0.0;
    double mean_sum_p_tx_w = 0.0;
    double mean_wall_time_s = 0.0;
};

struct SweepResult {
    std::vector<ResultRow> detail;
    std::vector<SummaryRow> summary;
};

// Documented, stable derivation of per-drop seeds.
std::uint64_t drop_seed(std::uint64_t master_seed, std::size_t tuple_index,
                        std::size_t drop_index);

// Runs every (method, N, Rb, P_t^max) tuple over n_drops seeded drops with
// the selected optimizers; jobs run on a bounded worker pool and rows are
// gathered in deterministic (tuple, drop, optimizer) order.
SweepResult run_sweep(const ExperimentConfig& config);

std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_csv(const std::vector<SummaryRow>& rows);
void write_file(const std::string& path, const std::string& contents);

} // namespace risee

#endif
