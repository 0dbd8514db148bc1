#ifndef RISEE_POWER_HPP
#define RISEE_POWER_HPP

#include <span>
#include <string>

#include "risee/ris.hpp"

namespace risee {

enum class ReconfigMethod { PIN, VARACTOR, RF_SWITCH };

std::string method_name(ReconfigMethod method);
ReconfigMethod method_from_name(const std::string& name);

// Dissipation constants; all stored in watts, dBm/mW conversion happens
// once at configuration load.
struct PowerModel {
    double p_fbs = 1.0;                 // 30 dBm
    double p_ue = 0.01;                 // 10 dBm
    double p_controller = 10e-3;        // 10 mW
    double p_dc_varactor = 4e-3;        // 4 mW per element
    double p_dc_pin_switch = 0.01e-3;   // 0.01 mW per element
    double p_pin = 1.25e-3;             // 1.25 mW per PIN in state '1'
    double p_switch = 0.5e-3;           // 0.5 mW per 1-bit RF switch
    double amplifier_efficiency = 0.8;  // nu
    double p_t_max = 0.31622776601683794;  // 25 dBm

    double xi() const { return 1.0 / amplifier_efficiency; }
    double drive_circuit_power(ReconfigMethod method) const {
        return method == ReconfigMethod::VARACTOR ? p_dc_varactor : p_dc_pin_switch;
    }
};

struct PowerBreakdown {
    double fixed = 0.0;           // P_fixed
    double elem = 0.0;            // P_elem
    double driver = 0.0;          // N * P_dc
    double controller = 0.0;      // P_controller
    double transmit_drain = 0.0;  // xi * sum(p_k)
    double total = 0.0;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// PIN: P_PIN * total popcount of the state codes; varactor: 0;
// RF switch: N * Rb * P_switch regardless of states.
double element_power(const RisConfig& config, ReconfigMethod method, const PowerModel& model);

// P_controller + N * P_dc(method) + P_elem
double ris_power(const RisConfig& config, ReconfigMethod method, const PowerModel& model);

// P_FBS + P_RIS + K * P_UE
double fixed_power(int k_users, double ris_power_watts, const PowerModel& model);

PowerBreakdown total_power(double fixed_watts, std::span<const double> p, double xi);

// Same, with the RIS-side components broken out for reporting.
PowerBreakdown total_power(const RisConfig& config, ReconfigMethod method,
                           const PowerModel& model, int k_users, std::span<const double> p);

} // namespace risee

#endif
