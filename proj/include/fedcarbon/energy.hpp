#pragma once

#include <algorithm>
#include <string>

#include "fedcarbon/profiles.hpp"
#include "fedcarbon/schedule.hpp"

// Per-policy energy accounting over n rounds. Four policies:
//   CL   - centralized learning: devices upload raw data, the center trains.
//   FA   - federated averaging: every device trains each round, the scheduled
//          subset uploads; the center broadcasts to the whole fleet.
//   FA-D - federated averaging with deep sleep: only the scheduled subset
//          wakes, trains and uploads; the rest sleep.
//   CFA  - consensus-driven federation: no center, scheduled devices exchange
//          models with N neighbors over the sidelink.

namespace fedcarbon {

struct EnergyBreakdown {
    double compute_j = 0.0;
    double comm_j = 0.0;
    int rounds = 0;

    double total_j() const { return compute_j + comm_j; }
};

namespace detail {

inline void require_rounds(int n) {
    if (n < 0) throw std::invalid_argument("round count must be >= 0");
}

inline double require_link(const std::optional<double>& ee, const char* which) {
    if (!ee) throw ConfigError(std::string("scenario comm profile has no ") + which + " efficiency");
    if (*ee <= 0.0) throw std::domain_error(std::string(which) + " efficiency must be > 0");
    return *ee;
}

/// b(W) * (dl_transfers * gamma / EE_D + ul_transfers / EE_U). Both policies
/// with a parameter server share this shape; only the transfer counts differ.
inline double wwan_model_comm(double model_bits, double dl_transfers, double ul_transfers,
                              const Scenario& s) {
    if (model_bits == 0.0 || (dl_transfers == 0.0 && ul_transfers == 0.0)) return 0.0;
    const double ee_d = require_link(s.comm.ee_dl_bits_per_j, "downlink");
    const double ee_u = require_link(s.comm.ee_ul_bits_per_j, "uplink");
    return model_bits * (dl_transfers * s.center.pue / ee_d + ul_transfers / ee_u);
}

}  // namespace detail

/// Centralized learning: n PUE-weighted center rounds plus alpha uploads of
/// every device's raw data.
inline EnergyBreakdown energy_cl(const Scenario& s, int n) {
    detail::require_rounds(n);
    const double rounds = static_cast<double>(n);
    EnergyBreakdown e;
    e.rounds = n;
    e.compute_j = rounds * (s.center.pue * round_energy(s.center)) + rounds * s.peripheral_energy_j;
    // The one-off data upload belongs to a training process; n = 0 bills nothing.
    const double upload_bits = n == 0 ? 0.0 : s.alpha * s.total_data_bits();
    e.comm_j = upload_bits == 0.0
                   ? 0.0
                   : upload_bits / detail::require_link(s.comm.ee_ul_bits_per_j, "uplink");
    return e;
}

/// Federated averaging. Every device trains every round; the center
/// aggregates (a beta fraction of its round) and broadcasts to all K devices;
/// the scheduled devices upload their models.
inline EnergyBreakdown energy_fa(const Scenario& s, int n, const ActiveSchedule& schedule) {
    detail::require_rounds(n);
    check_schedule(schedule, s.fleet_size(), s.k_active, n);
    const double rounds = static_cast<double>(n);
    const double ps_agg = s.center.pue * s.center.agg_fraction * round_energy(s.center);

    double device_sum = 0.0;
    for (const auto& d : s.devices)
        device_sum += rounds * round_energy(d);

    long long uploads = 0;
    for (const auto& round : schedule.rounds)
        uploads += static_cast<long long>(round.size());

    EnergyBreakdown e;
    e.rounds = n;
    e.compute_j = rounds * ps_agg + device_sum + rounds * s.peripheral_energy_j;
    e.comm_j = detail::wwan_model_comm(s.model.bits(),
                                       rounds * static_cast<double>(s.fleet_size()),
                                       static_cast<double>(uploads), s);
    return e;
}

/// Federated averaging with deep sleep: unscheduled devices spend the round
/// asleep, and the center only serves the scheduled subset.
inline EnergyBreakdown energy_fad(const Scenario& s, int n, const ActiveSchedule& schedule) {
    detail::require_rounds(n);
    check_schedule(schedule, s.fleet_size(), s.k_active, n);
    const double rounds = static_cast<double>(n);
    const double ps_agg = s.center.pue * s.center.agg_fraction * round_energy(s.center);
    const auto counts = active_round_counts(schedule, s.fleet_size());

    double device_sum = 0.0;
    long long transfers = 0;
    for (std::size_t k = 0; k < s.devices.size(); ++k) {
        const double active = static_cast<double>(counts[k]);
        const double asleep = static_cast<double>(n - counts[k]);
        device_sum += active * round_energy(s.devices[k]) + asleep * s.devices[k].sleep_energy_j;
        transfers += counts[k];
    }

    EnergyBreakdown e;
    e.rounds = n;
    e.compute_j = rounds * ps_agg + device_sum + rounds * s.peripheral_energy_j;
    e.comm_j = detail::wwan_model_comm(s.model.bits(), static_cast<double>(transfers),
                                       static_cast<double>(transfers), s);
    return e;
}

/// Consensus-driven federation: no parameter server. Each scheduled device
/// trains and pushes its model to `neighbors` peers over the sidelink;
/// unscheduled devices sleep.
inline EnergyBreakdown energy_cfa(const Scenario& s, int n, const ActiveSchedule& schedule,
                                  bool compose_sidelink = false) {
    detail::require_rounds(n);
    check_schedule(schedule, s.fleet_size(), s.k_active, n);
    if (s.neighbors < 0 || s.neighbors > std::max(0, s.fleet_size() - 1))
        throw std::invalid_argument("neighbors must lie in [0, fleet size - 1]");
    const double rounds = static_cast<double>(n);
    const auto counts = active_round_counts(schedule, s.fleet_size());

    double device_sum = 0.0;
    long long transmissions = 0;
    for (std::size_t k = 0; k < s.devices.size(); ++k) {
        const double active = static_cast<double>(counts[k]);
        const double asleep = static_cast<double>(n - counts[k]);
        device_sum += active * round_energy(s.devices[k]) + asleep * s.devices[k].sleep_energy_j;
        transmissions += counts[k];
    }

    EnergyBreakdown e;
    e.rounds = n;
    e.compute_j = device_sum + rounds * s.peripheral_energy_j;
    const double pushed_bits =
        static_cast<double>(transmissions) * static_cast<double>(s.neighbors) * s.model.bits();
    e.comm_j = pushed_bits == 0.0 ? 0.0 : pushed_bits / effective_sidelink(s, compose_sidelink);
    return e;
}

}
