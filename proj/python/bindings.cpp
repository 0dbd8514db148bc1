// Python bindings for the risee core: channel synthesis, precoding, power
// models, the Dinkelbach-IQT allocator, and the integer-PSO optimizer.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "risee/baselines.hpp"
#include "risee/harness.hpp"
#include "risee/oracle.hpp"

namespace py = pybind11;
using namespace risee;

namespace {

Scenario make_scenario(int n, int m, int k, std::uint64_t seed, double frequency_hz,
                       double ris_spacing_wl, double fbs_spacing_wl) {
    ExperimentConfig config;
    config.m = m;
    config.k = k;
    config.frequency_hz = frequency_hz;
    config.ris_spacing_wl = ris_spacing_wl;
    config.fbs_spacing_wl = fbs_spacing_wl;
    Rng rng = Rng(seed).child(1);
    return build_scenario(config, n, rng);
}

ChannelSet synthesize(const Scenario& scenario, double epsilon_h, double epsilon_g,
                      double noise_dbm, std::uint64_t seed, double pathloss_exponent) {
    Rng rng = Rng(seed).child(2);
    return synthesize_channels(scenario, {epsilon_h, epsilon_g}, dbm_to_watts(noise_dbm), rng,
                               pathloss_exponent);
}

py::tuple allocate(const Eigen::MatrixXd& zeta_matrix, double noise_power, double p_fixed,
                   double xi, double bandwidth, double p_t_max) {
    GainMatrix zeta;
    zeta.zeta = zeta_matrix;
    const AllocResult result = allocate_power(zeta, noise_power, p_fixed, xi, bandwidth,
                                              p_t_max, Tolerances::scaled(bandwidth));
    return py::make_tuple(result.p, result.eta_ee, result.converged);
}

SwarmResult optimize_py(const Scenario& scenario, const ChannelSet& channels,
                        const PowerModel& model, ReconfigMethod method, int resolution_bits,
                        int n_particles, int n_steps, std::uint64_t seed, double bandwidth) {
    SwarmParams params = SwarmParams::defaults(n_particles, n_steps, seed);
    return optimize(scenario, channels, params, model, method,
                    Tolerances::scaled(bandwidth), bandwidth, resolution_bits);
}

} // namespace

PYBIND11_MODULE(_risee, m) {
    m.doc() = "RIS-assisted near-field downlink energy-efficiency toolkit";

    py::enum_<ReconfigMethod>(m, "ReconfigMethod")
        .value("PIN", ReconfigMethod::PIN)
        .value("VARACTOR", ReconfigMethod::VARACTOR)
        .value("RF_SWITCH", ReconfigMethod::RF_SWITCH);

    py::class_<PowerModel>(m, "PowerModel")
        .def(py::init<>())
        .def_readwrite("p_fbs", &PowerModel::p_fbs)
        .def_readwrite("p_ue", &PowerModel::p_ue)
        .def_readwrite("p_controller", &PowerModel::p_controller)
        .def_readwrite("p_dc_varactor", &PowerModel::p_dc_varactor)
        .def_readwrite("p_dc_pin_switch", &PowerModel::p_dc_pin_switch)
        .def_readwrite("p_pin", &PowerModel::p_pin)
        .def_readwrite("p_switch", &PowerModel::p_switch)
        .def_readwrite("amplifier_efficiency", &PowerModel::amplifier_efficiency)
        .def_readwrite("p_t_max", &PowerModel::p_t_max)
        .def_property_readonly("xi", &PowerModel::xi);

    py::class_<RisConfig>(m, "RisConfig")
        .def(py::init(
                 [](std::size_t side, int rb) { return make_config(side, rb); }),
             py::arg("side"), py::arg("resolution_bits"))
        .def_readwrite("states", &RisConfig::states)
        .def_readonly("side", &RisConfig::side)
        .def_readonly("resolution_bits", &RisConfig::resolution_bits)
        .def_readwrite("amplitude", &RisConfig::amplitude);

    py::class_<Scenario>(m, "Scenario")
        .def_property_readonly("n_ris", &Scenario::n_ris)
        .def_property_readonly("n_fbs", &Scenario::n_fbs)
        .def_property_readonly("n_ues", &Scenario::n_ues)
        .def_readonly("wavelength", &Scenario::wavelength);

    py::class_<ChannelSet>(m, "ChannelSet")
        .def_readonly("incident", &ChannelSet::incident)
        .def_readonly("reflected", &ChannelSet::reflected)
        .def_readonly("noise_power", &ChannelSet::noise_power)
        .def_readonly("realization_seed", &ChannelSet::realization_seed);

    py::class_<FitnessResult>(m, "FitnessResult")
        .def_readonly("ee", &FitnessResult::ee)
        .def_readonly("p", &FitnessResult::p)
        .def_readonly("se", &FitnessResult::se)
        .def_readonly("total_power", &FitnessResult::total_power)
        .def_readonly("p_elem", &FitnessResult::p_elem)
        .def_readonly("converged", &FitnessResult::converged);

    py::class_<SwarmResult>(m, "SwarmResult")
        .def_readonly("best_config", &SwarmResult::best_config)
        .def_readonly("best_ee", &SwarmResult::best_ee)
        .def_readonly("best_alloc", &SwarmResult::best_alloc)
        .def_readonly("trace", &SwarmResult::trace)
        .def_readonly("mean_trace", &SwarmResult::mean_trace)
        .def_readonly("step0_ee", &SwarmResult::step0_ee)
        .def_readonly("fitness_evaluations", &SwarmResult::fitness_evaluations);

    m.def("dbm_to_watts", &dbm_to_watts, py::arg("dbm"));
    m.def("watts_to_dbm", &watts_to_dbm, py::arg("watts"));
    m.def("fraunhofer_distance", &fraunhofer_distance, py::arg("aperture"),
          py::arg("wavelength"));
    m.def("near_field_criterion", &near_field_criterion, py::arg("ris_aperture"),
          py::arg("wavelength"), py::arg("r1"), py::arg("r2"));
    m.def("path_loss", &path_loss, py::arg("distance"), py::arg("wavelength"),
          py::arg("exponent") = 2.0);
    m.def("phase_response", &phase_response, py::arg("distance"), py::arg("wavelength"));

    m.def(
        "phase_codebook", [](int rb) { return phase_codebook(rb).phases; },
        py::arg("resolution_bits"), "equally spaced codebook phases in [0, 2*pi)");
    m.def(
        "quantize_phase",
        [](double theta, int rb) { return quantize_phase(theta, phase_codebook(rb)); },
        py::arg("theta"), py::arg("resolution_bits"));

    m.def("element_power", &element_power, py::arg("config"), py::arg("method"),
          py::arg("model"));
    m.def("ris_power", &ris_power, py::arg("config"), py::arg("method"), py::arg("model"));
    m.def("fixed_power", &fixed_power, py::arg("k_users"), py::arg("ris_power_watts"),
          py::arg("model"));

    m.def("make_scenario", &make_scenario, py::arg("n"), py::arg("m") = 8, py::arg("k") = 4,
          py::arg("seed") = 1, py::arg("frequency_hz") = 5.25e9,
          py::arg("ris_spacing_wl") = 0.25, py::arg("fbs_spacing_wl") = 0.5,
          "random drop: RIS at origin, FBS and UEs uniform over the default region");
    m.def("synthesize_channels", &synthesize, py::arg("scenario"), py::arg("epsilon_h") = 5.0,
          py::arg("epsilon_g") = 5.0, py::arg("noise_dbm") = -94.0, py::arg("seed") = 1,
          py::arg("pathloss_exponent") = 2.0);

    m.def("cascaded_channel", &cascaded_channel, py::arg("config"), py::arg("channels"));
    m.def(
        "rzf_precoder",
        [](const MatrixC& h_ris, double noise_power, int k) {
            return rzf_precoder(h_ris, noise_power, k).matrix;
        },
        py::arg("h_ris"), py::arg("noise_power"), py::arg("k_users"));
    m.def(
        "effective_gains",
        [](const MatrixC& h_ris, const MatrixC& precoder) {
            return effective_gains(h_ris, Precoder{precoder, 0.0}).zeta;
        },
        py::arg("h_ris"), py::arg("precoder"));
    m.def(
        "sinr",
        [](const Eigen::MatrixXd& zeta, const std::vector<double>& p, double noise) {
            return sinr(GainMatrix{zeta}, p, noise);
        },
        py::arg("zeta"), py::arg("p"), py::arg("noise_power"));
    m.def("spectral_efficiency", &spectral_efficiency, py::arg("sinr"));
    m.def("energy_efficiency", &energy_efficiency, py::arg("se"), py::arg("bandwidth"),
          py::arg("total_power"));

    m.def("allocate_power", &allocate, py::arg("zeta"), py::arg("noise_power"),
          py::arg("p_fixed"), py::arg("xi"), py::arg("bandwidth"), py::arg("p_t_max"),
          "returns (p, ee_bits_per_joule, converged)");
    m.def(
        "grid_search_allocation",
        [](const Eigen::MatrixXd& zeta, double noise, double p_fixed, double xi, double bw,
           double p_t_max, int points) {
            const GridSearchResult r =
                grid_search_allocation(GainMatrix{zeta}, noise, p_fixed, xi, bw, p_t_max,
                                       points);
            return py::make_tuple(r.p, r.ee);
        },
        py::arg("zeta"), py::arg("noise_power"), py::arg("p_fixed"), py::arg("xi"),
        py::arg("bandwidth"), py::arg("p_t_max"), py::arg("points_per_axis") = 200);

    m.def(
        "evaluate_fitness",
        [](const RisConfig& config, const ChannelSet& channels, const PowerModel& model,
           ReconfigMethod method, double bandwidth) {
            return evaluate_fitness(config, channels, model, method,
                                    Tolerances::scaled(bandwidth), bandwidth);
        },
        py::arg("config"), py::arg("channels"), py::arg("model"), py::arg("method"),
        py::arg("bandwidth") = 10e6);

    m.def("optimize", &optimize_py, py::arg("scenario"), py::arg("channels"),
          py::arg("model"), py::arg("method"), py::arg("resolution_bits"),
          py::arg("n_particles") = 100, py::arg("n_steps") = 100, py::arg("seed") = 1,
          py::arg("bandwidth") = 10e6,
          "integer-PSO search over RIS phase states with nested power allocation");

    m.attr("__version__") = "0.1.0";
}
