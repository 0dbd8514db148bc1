#include "risee/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "risee/baselines.hpp"

namespace risee {

PowerModel ExperimentConfig::power_model(double p_t_max_dbm) const {
    PowerModel model;
    model.p_fbs = dbm_to_watts(p_fbs_dbm);
    model.p_ue = dbm_to_watts(p_ue_dbm);
    model.p_controller = p_controller_mw * 1e-3;
    model.p_dc_varactor = p_dc_varactor_mw * 1e-3;
    model.p_dc_pin_switch = p_dc_pin_switch_mw * 1e-3;
    model.p_pin = p_pin_mw * 1e-3;
    model.p_switch = p_switch_mw * 1e-3;
    model.amplifier_efficiency = nu;
    model.p_t_max = dbm_to_watts(p_t_max_dbm);
    return model;
}

Tolerances ExperimentConfig::tolerances() const {
    Tolerances tol;
    tol.eps_outer = eps_outer_rel * bandwidth_hz;
    tol.eps_inner = eps_inner_rel * bandwidth_hz;
    tol.max_outer = max_outer;
    tol.max_inner = max_inner;
    return tol;
}

SwarmParams ExperimentConfig::swarm_params(std::uint64_t seed) const {
    SwarmParams params = SwarmParams::defaults(n_particles, n_steps, seed);
    params.init_weight_std = init_weight_std;
    return params;
}

void ExperimentConfig::validate() const {
    for (int n : n_list) {
        const auto side = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
        if (side * side != n)
            throw std::invalid_argument("config: N=" + std::to_string(n) +
                                        " is not a perfect square");
    }
    if (n_drops < 1) throw std::invalid_argument("config: n_drops must be >= 1");
    if (m < 1 || k < 1) throw std::invalid_argument("config: m and k must be >= 1");
    for (int rb : rb_list)
        if (rb < 1 || rb > 16) throw std::invalid_argument("config: rb out of [1,16]");
    if (!(nu > 0.0) || nu > 1.0) throw std::invalid_argument("config: nu out of (0,1]");
    if (n_list.empty() || rb_list.empty() || method_list.empty() || p_t_max_dbm_list.empty() ||
        optimizers.empty())
        throw std::invalid_argument("config: empty sweep axis");
}

namespace {

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(value);
    while (std::getline(ss, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = item.find_last_not_of(" \t");
        out.push_back(item.substr(begin, end - begin + 1));
    }
    return out;
}

std::vector<int> int_list(const std::string& value) {
    std::vector<int> out;
    for (const auto& item : split_list(value)) out.push_back(std::stoi(item));
    return out;
}

std::vector<double> double_list(const std::string& value) {
    std::vector<double> out;
    for (const auto& item : split_list(value)) out.push_back(std::stod(item));
    return out;
}

bool parse_bool(const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("config: bad boolean value '" + value + "'");
}

} // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string{};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) +
                                                     ": empty key");

        if (key == "m") config.m = std::stoi(value);
        else if (key == "k") config.k = std::stoi(value);
        else if (key == "n_list") config.n_list = int_list(value);
        else if (key == "rb_list") config.rb_list = int_list(value);
        else if (key == "method_list") {
            config.method_list.clear();
            for (const auto& name : split_list(value))
                config.method_list.push_back(method_from_name(name));
        }
        else if (key == "p_t_max_dbm_list" || key == "p_t_max_dbm")
            config.p_t_max_dbm_list = double_list(value);
        else if (key == "frequency_hz") config.frequency_hz = std::stod(value);
        else if (key == "fbs_spacing_wl") config.fbs_spacing_wl = std::stod(value);
        else if (key == "ris_spacing_wl") config.ris_spacing_wl = std::stod(value);
        else if (key == "region_x") {
            const auto v = double_list(value);
            if (v.size() != 2) throw std::invalid_argument("config: region_x needs lo,hi");
            config.region.x = {v[0], v[1]};
        }
        else if (key == "region_y") {
            const auto v = double_list(value);
            if (v.size() != 2) throw std::invalid_argument("config: region_y needs lo,hi");
            config.region.y = {v[0], v[1]};
        }
        else if (key == "region_z") {
            const auto v = double_list(value);
            if (v.size() != 2) throw std::invalid_argument("config: region_z needs lo,hi");
            config.region.z = {v[0], v[1]};
        }
        else if (key == "rician_h") config.rician_h = std::stod(value);
        else if (key == "rician_g") config.rician_g = std::stod(value);
        else if (key == "noise_dbm") config.noise_dbm = std::stod(value);
        else if (key == "pathloss_exponent") config.pathloss_exponent = std::stod(value);
        else if (key == "bandwidth_hz") config.bandwidth_hz = std::stod(value);
        else if (key == "p_fbs_dbm") config.p_fbs_dbm = std::stod(value);
        else if (key == "p_ue_dbm") config.p_ue_dbm = std::stod(value);
        else if (key == "p_controller_mw") config.p_controller_mw = std::stod(value);
        else if (key == "p_dc_varactor_mw") config.p_dc_varactor_mw = std::stod(value);
        else if (key == "p_dc_pin_switch_mw") config.p_dc_pin_switch_mw = std::stod(value);
        else if (key == "p_pin_mw") config.p_pin_mw = std::stod(value);
        else if (key == "p_switch_mw") config.p_switch_mw = std::stod(value);
        else if (key == "nu") config.nu = std::stod(value);
        else if (key == "n_drops") config.n_drops = std::stoi(value);
        else if (key == "master_seed") config.master_seed = std::stoull(value);
        else if (key == "n_particles") config.n_particles = std::stoi(value);
        else if (key == "n_steps") config.n_steps = std::stoi(value);
        else if (key == "init_weight_std") config.init_weight_std = std::stod(value);
        else if (key == "eps_outer_rel") config.eps_outer_rel = std::stod(value);
        else if (key == "eps_inner_rel") config.eps_inner_rel = std::stod(value);
        else if (key == "max_outer") config.max_outer = std::stoi(value);
        else if (key == "max_inner") config.max_inner = std::stoi(value);
        else if (key == "optimizers") config.optimizers = split_list(value);
        else if (key == "exhaustive_cap_log2") config.exhaustive_cap_log2 = std::stoi(value);
        else if (key == "record_timing") config.record_timing = parse_bool(value);
        else if (key == "workers") config.workers = std::stoi(value);
        else throw std::invalid_argument("config line " + std::to_string(line_no) +
                                         ": unknown key '" + key + "'");
    }
    config.validate();
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    return parse_config(in);
}

Scenario build_scenario(const ExperimentConfig& config, int n_elements, Rng& rng) {
    const auto side = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(n_elements))));
    if (side * side != static_cast<std::size_t>(n_elements))
        throw std::invalid_argument("build_scenario: N must be a perfect square");

    Scenario scenario;
    scenario.carrier_frequency = config.frequency_hz;
    scenario.wavelength = config.wavelength();
    scenario.ris = build_ris_grid(side, config.ris_spacing_wl * scenario.wavelength);

    const double fbs_spacing = config.fbs_spacing_wl * scenario.wavelength;
    const double half_aperture = 0.5 * fbs_spacing * static_cast<double>(config.m - 1);
    Region fbs_region = config.region;
    fbs_region.y.lo += half_aperture;
    fbs_region.y.hi -= half_aperture;
    if (fbs_region.y.length() < 0.0)
        throw std::invalid_argument("build_scenario: FBS array wider than the region");

    const Coordinate center = sample_positions(fbs_region, 1, rng).front();
    scenario.fbs = build_fbs_array(center, static_cast<std::size_t>(config.m), fbs_spacing);
    scenario.ues = sample_positions(config.region, static_cast<std::size_t>(config.k), rng);
    return scenario;
}

std::uint64_t drop_seed(std::uint64_t master_seed, std::size_t tuple_index,
                        std::size_t drop_index) {
    return mix_seed(master_seed, tuple_index, drop_index);
}

namespace {

struct SweepTuple {
    ReconfigMethod method;
    int n = 0;
    int rb = 0;
    double p_t_max_dbm = 0.0;
};

std::vector<SweepTuple> tuple_grid(const ExperimentConfig& config) {
    std::vector<SweepTuple> tuples;
    for (const auto method : config.method_list)
        for (const int n : config.n_list)
            for (const int rb : config.rb_list)
                for (const double p : config.p_t_max_dbm_list)
                    tuples.push_back({method, n, rb, p});
    return tuples;
}

std::vector<ResultRow> run_drop(const ExperimentConfig& config, const SweepTuple& tuple,
                                std::size_t tuple_index, std::size_t drop_index) {
    const std::uint64_t seed = drop_seed(config.master_seed, tuple_index, drop_index);
    const Rng root(seed);

    Rng scene_rng = root.child(1);
    Rng channel_rng = root.child(2);
    Rng random_rng = root.child(3);

    const Scenario scenario = build_scenario(config, tuple.n, scene_rng);
    const RicianParams rician{config.rician_h, config.rician_g};
    const ChannelSet channels = synthesize_channels(scenario, rician, config.noise_power(),
                                                    channel_rng, config.pathloss_exponent);

    DropContext ctx;
    ctx.scenario = &scenario;
    ctx.channels = &channels;
    ctx.model = config.power_model(tuple.p_t_max_dbm);
    ctx.method = tuple.method;
    ctx.resolution_bits = tuple.rb;
    ctx.tol = config.tolerances();
    ctx.bandwidth = config.bandwidth_hz;

    std::vector<ResultRow> rows;
    for (const auto& optimizer : config.optimizers) {
        const auto start = std::chrono::steady_clock::now();
        ResultRow row;
        try {
            if (optimizer == "ipso") {
                row = run_ipso(ctx, config.swarm_params(mix_seed(seed, 4))).row;
            } else if (optimizer == "flat") {
                row = baseline_flat(ctx);
            } else if (optimizer == "random") {
                row = baseline_random(ctx, random_rng);
            } else if (optimizer == "greedy") {
                row = baseline_greedy(ctx);
            } else if (optimizer == "exhaustive") {
                row = baseline_exhaustive(ctx, config.exhaustive_cap_log2).row;
            } else if (optimizer == "cpso") {
                row = baseline_cpso(ctx, config.swarm_params(mix_seed(seed, 5))).row;
            } else {
                throw std::invalid_argument("unknown optimizer '" + optimizer + "'");
            }
        } catch (const std::exception& e) {
            row = ResultRow{};
            row.optimizer = optimizer;
            row.method = method_name(tuple.method);
            row.n = tuple.n;
            row.rb = tuple.rb;
            row.p_t_max_dbm = tuple.p_t_max_dbm;
            row.error = e.what();
        }
        if (config.record_timing) {
            const auto stop = std::chrono::steady_clock::now();
            row.wall_time_s = std::chrono::duration<double>(stop - start).count();
        }
        row.scenario_id = "t" + std::to_string(tuple_index) + "_d" + std::to_string(drop_index);
        row.drop_seed = seed;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

SweepResult run_sweep(const ExperimentConfig& config) {
    config.validate();
    const std::vector<SweepTuple> tuples = tuple_grid(config);
    const std::size_t n_drops = static_cast<std::size_t>(config.n_drops);
    const std::size_t n_jobs = tuples.size() * n_drops;

    std::vector<std::vector<ResultRow>> slots(n_jobs);
    std::atomic<std::size_t> next_job{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t job = next_job.fetch_add(1);
            if (job >= n_jobs) return;
            const std::size_t tuple_index = job / n_drops;
            const std::size_t drop_index = job % n_drops;
            slots[job] = run_drop(config, tuples[tuple_index], tuple_index, drop_index);
        }
    };

    unsigned n_workers = config.workers > 0 ? static_cast<unsigned>(config.workers)
                                            : std::thread::hardware_concurrency();
    if (n_workers == 0) n_workers = 1;
    n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(n_jobs));

    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepResult result;

    // per-tuple, per-optimizer means in deterministic order
    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
        for (const auto& optimizer : config.optimizers) {
            SummaryRow summary;
            summary.method = method_name(tuples[ti].method);
            summary.n = tuples[ti].n;
            summary.rb = tuples[ti].rb;
            summary.p_t_max_dbm = tuples[ti].p_t_max_dbm;
            summary.optimizer = optimizer;
            for (std::size_t di = 0; di < n_drops; ++di) {
                for (const auto& row : slots[ti * n_drops + di]) {
                    if (row.optimizer != optimizer || !row.error.empty()) continue;
                    ++summary.n_drops;
                    summary.mean_ee += row.ee_bits_per_joule;
                    summary.mean_se += row.se_bps_hz;
                    summary.mean_total_power_w += row.total_power_w;
                    summary.mean_p_elem_w += row.p_elem_w;
                    summary.mean_sum_p_tx_w += row.sum_p_tx_w;
                    summary.mean_wall_time_s += row.wall_time_s;
                }
            }
            if (summary.n_drops > 0) {
                const double inv = 1.0 / summary.n_drops;
                summary.mean_ee *= inv;
                summary.mean_se *= inv;
                summary.mean_total_power_w *= inv;
                summary.mean_p_elem_w *= inv;
                summary.mean_sum_p_tx_w *= inv;
                summary.mean_wall_time_s *= inv;
            }
            result.summary.push_back(std::move(summary));
        }
    }

    for (auto& slot : slots)
        for (auto& row : slot) result.detail.push_back(std::move(row));
    return result;
}

namespace {

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::string out = "scenario_id,drop_seed,method,n,rb,p_t_max_dbm,optimizer,"
                      "ee_bits_per_joule,se_bps_hz,total_power_w,p_elem_w,sum_p_tx_w,"
                      "pso_steps,palloc_outer_iters,wall_time_s,error\n";
    for (const auto& r : rows) {
        out += csv_quote(r.scenario_id) + ',' + std::to_string(r.drop_seed) + ',' +
               csv_quote(r.method) + ',' + std::to_string(r.n) + ',' + std::to_string(r.rb) +
               ',' + fmt(r.p_t_max_dbm) + ',' + csv_quote(r.optimizer) + ',' +
               fmt(r.ee_bits_per_joule) + ',' + fmt(r.se_bps_hz) + ',' +
               fmt(r.total_power_w) + ',' + fmt(r.p_elem_w) + ',' + fmt(r.sum_p_tx_w) + ',' +
               std::to_string(r.pso_steps) + ',' + std::to_string(r.palloc_outer_iters) + ',' +
               fmt(r.wall_time_s) + ',' + csv_quote(r.error) + '\n';
    }
    return out;
}

std::string to_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "method,n,rb,p_t_max_dbm,optimizer,n_drops,mean_ee_bits_per_joule,"
                      "mean_se_bps_hz,mean_total_power_w,mean_p_elem_w,mean_sum_p_tx_w,"
                      "mean_wall_time_s\n";
    for (const auto& r : rows) {
        out += csv_quote(r.method) + ',' + std::to_string(r.n) + ',' + std::to_string(r.rb) +
               ',' + fmt(r.p_t_max_dbm) + ',' + csv_quote(r.optimizer) + ',' +
               std::to_string(r.n_drops) + ',' + fmt(r.mean_ee) + ',' + fmt(r.mean_se) + ',' +
               fmt(r.mean_total_power_w) + ',' + fmt(r.mean_p_elem_w) + ',' +
               fmt(r.mean_sum_p_tx_w) + ',' + fmt(r.mean_wall_time_s) + '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + path);
}

} // namespace risee
