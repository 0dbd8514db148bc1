#include "risee/power.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace risee {

std::string method_name(ReconfigMethod method) {
    switch (method) {
        case ReconfigMethod::PIN: return "pin";
        case ReconfigMethod::VARACTOR: return "varactor";
        case ReconfigMethod::RF_SWITCH: return "rf_switch";
    }
    throw std::logic_error("method_name: unknown method");
}

ReconfigMethod method_from_name(const std::string& name) {
    if (name == "pin") return ReconfigMethod::PIN;
    if (name == "varactor") return ReconfigMethod::VARACTOR;
    if (name == "rf_switch" || name == "switch") return ReconfigMethod::RF_SWITCH;
    throw std::invalid_argument("unknown reconfiguration method: " + name);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

double watts_to_dbm(double watts) {
    if (!(watts > 0.0)) throw std::invalid_argument("watts_to_dbm: power must be > 0");
    return 10.0 * std::log10(watts * 1e3);
}

double element_power(const RisConfig& config, ReconfigMethod method, const PowerModel& model) {
    switch (method) {
        case ReconfigMethod::PIN: {
            long bits = 0;
            for (int s : config.states) bits += std::popcount(static_cast<unsigned>(s));
            return model.p_pin * static_cast<double>(bits);
        }
        case ReconfigMethod::VARACTOR:
            return 0.0;
        case ReconfigMethod::RF_SWITCH:
            return static_cast<double>(config.size()) * config.resolution_bits * model.p_switch;
    }
    throw std::logic_error("element_power: unknown method");
}

double ris_power(const RisConfig& config, ReconfigMethod method, const PowerModel& model) {
    return model.p_controller +
           static_cast<double>(config.size()) * model.drive_circuit_power(method) +
           element_power(config, method, model);
}

double fixed_power(int k_users, double ris_power_watts, const PowerModel& model) {
    if (k_users < 1) throw std::invalid_argument("fixed_power: k_users must be >= 1");
    return model.p_fbs + ris_power_watts + static_cast<double>(k_users) * model.p_ue;
}

PowerBreakdown total_power(double fixed_watts, std::span<const double> p, double xi) {
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) throw std::invalid_argument("total_power: negative transmit power");
        sum += v;
    }
    PowerBreakdown out;
    out.fixed = fixed_watts;
    out.transmit_drain = xi * sum;
    out.total = out.fixed + out.transmit_drain;
    return out;
}

PowerBreakdown total_power(const RisConfig& config, ReconfigMethod method,
                           const PowerModel& model, int k_users, std::span<const double> p) {
    const double elem = element_power(config, method, model);
    const double driver = static_cast<double>(config.size()) * model.drive_circuit_power(method);
    const double fixed = fixed_power(k_users, model.p_controller + driver + elem, model);
    PowerBreakdown out = total_power(fixed, p, model.xi());
    out.elem = elem;
    out.driver = driver;
    out.controller = model.p_controller;
    return out;
}

} // namespace risee
