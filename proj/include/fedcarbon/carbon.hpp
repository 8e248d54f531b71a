#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "fedcarbon/energy.hpp"
#include "fedcarbon/policy.hpp"

// Carbon accounting: the same per-policy energy decomposition as energy.hpp,
// but every term is weighted by the carbon intensity of the site where the
// joules are spent (device k at CI_k, center and base station at CI_0).
// With a uniform carbon intensity this collapses to CI * energy.

namespace fedcarbon {

struct CarbonBreakdown {
    Policy policy = Policy::CL;
    double compute_g = 0.0;
    double comm_g = 0.0;
    int rounds = 0;

    double total_g() const { return compute_g + comm_g; }
};

namespace detail {

/// Fleet-level peripheral energy is spread equally over the devices, each
/// share emitted at that device's local intensity.
inline double peripheral_carbon(const Scenario& s, double rounds) {
    if (s.peripheral_energy_j == 0.0 || rounds == 0.0) return 0.0;
    if (s.devices.empty())
        throw std::invalid_argument("peripheral energy needs at least one device to charge it to");
    double ci_sum = 0.0;
    for (const auto& d : s.devices) ci_sum += d.carbon_intensity_g_per_j;
    return rounds * (s.peripheral_energy_j / static_cast<double>(s.fleet_size())) * ci_sum;
}

inline CarbonBreakdown carbon_cl(const Scenario& s, int n) {
    require_rounds(n);
    const double rounds = static_cast<double>(n);
    CarbonBreakdown c;
    c.policy = Policy::CL;
    c.rounds = n;
    c.compute_g = rounds * (s.center.pue * round_energy(s.center)) * s.center.carbon_intensity_g_per_j +
                  peripheral_carbon(s, rounds);
    double upload = 0.0;
    for (const auto& d : s.devices) upload += d.data_bits * d.carbon_intensity_g_per_j;
    upload *= n == 0 ? 0.0 : s.alpha;
    c.comm_g = upload == 0.0 ? 0.0 : upload / require_link(s.comm.ee_ul_bits_per_j, "uplink");
    return c;
}

inline CarbonBreakdown carbon_fa_family(Policy policy, const Scenario& s, int n,
                                        const ActiveSchedule& schedule) {
    require_rounds(n);
    check_schedule(schedule, s.fleet_size(), s.k_active, n);
    const double rounds = static_cast<double>(n);
    const double ci0 = s.center.carbon_intensity_g_per_j;
    const double ps_agg_g =
        s.center.pue * s.center.agg_fraction * round_energy(s.center) * ci0;
    const auto counts = active_round_counts(schedule, s.fleet_size());

    double device_g = 0.0;
    double active_ci_sum = 0.0;   // sum over rounds and scheduled devices of CI_k
    long long transfers = 0;
    for (std::size_t k = 0; k < s.devices.size(); ++k) {
        const auto& d = s.devices[k];
        const double active = static_cast<double>(counts[k]);
        const double asleep = static_cast<double>(n - counts[k]);
        if (policy == Policy::FA)
            device_g += rounds * round_energy(d) * d.carbon_intensity_g_per_j;
        else
            device_g += (active * round_energy(d) + asleep * d.sleep_energy_j) *
                        d.carbon_intensity_g_per_j;
        active_ci_sum += active * d.carbon_intensity_g_per_j;
        transfers += counts[k];
    }

    CarbonBreakdown c;
    c.policy = policy;
    c.rounds = n;
    c.compute_g = rounds * ps_agg_g + device_g + peripheral_carbon(s, rounds);

    const double bw = s.model.bits();
    const double dl_transfers = policy == Policy::FA
                                    ? rounds * static_cast<double>(s.fleet_size())
                                    : static_cast<double>(transfers);
    if (bw == 0.0 || (dl_transfers == 0.0 && transfers == 0)) {
        c.comm_g = 0.0;
    } else {
        const double ee_d = require_link(s.comm.ee_dl_bits_per_j, "downlink");
        const double ee_u = require_link(s.comm.ee_ul_bits_per_j, "uplink");
        c.comm_g = bw * (dl_transfers * s.center.pue * ci0 / ee_d + active_ci_sum / ee_u);
    }
    return c;
}

inline CarbonBreakdown carbon_cfa(const Scenario& s, int n, const ActiveSchedule& schedule,
                                  bool compose_sidelink) {
    require_rounds(n);
    check_schedule(schedule, s.fleet_size(), s.k_active, n);
    if (s.neighbors < 0 || s.neighbors > std::max(0, s.fleet_size() - 1))
        throw std::invalid_argument("neighbors must lie in [0, fleet size - 1]");
    const double rounds = static_cast<double>(n);
    const auto counts = active_round_counts(schedule, s.fleet_size());

    double device_g = 0.0;
    double active_ci_sum = 0.0;
    for (std::size_t k = 0; k < s.devices.size(); ++k) {
        const auto& d = s.devices[k];
        const double active = static_cast<double>(counts[k]);
        const double asleep = static_cast<double>(n - counts[k]);
        device_g += (active * round_energy(d) + asleep * d.sleep_energy_j) *
                    d.carbon_intensity_g_per_j;
        active_ci_sum += active * d.carbon_intensity_g_per_j;
    }

    CarbonBreakdown c;
    c.policy = Policy::CFA;
    c.rounds = n;
    c.compute_g = device_g + peripheral_carbon(s, rounds);
    const double pushed = static_cast<double>(s.neighbors) * s.model.bits() * active_ci_sum;
    c.comm_g = pushed == 0.0 ? 0.0 : pushed / effective_sidelink(s, compose_sidelink);
    return c;
}

}  // namespace detail

/// Carbon footprint of running `policy` for n rounds under the given active
/// schedule. CL ignores the schedule (the fleet only uploads data).
inline CarbonBreakdown carbon_footprint(Policy policy, const Scenario& s, int n,
                                        const ActiveSchedule& schedule,
                                        bool compose_sidelink = false) {
    switch (policy) {
        case Policy::CL: return detail::carbon_cl(s, n);
        case Policy::FA: return detail::carbon_fa_family(Policy::FA, s, n, schedule);
        case Policy::FAD: return detail::carbon_fa_family(Policy::FAD, s, n, schedule);
        case Policy::CFA: return detail::carbon_cfa(s, n, schedule, compose_sidelink);
    }
    throw std::logic_error("unknown policy");
}

struct PolicyFootprint {
    CarbonBreakdown carbon;
    double delta_vs_cl_g = 0.0;
};

/// Evaluates several policies side by side under canonical round-robin
/// schedules. The CL entry is the baseline every delta refers to, so it must
/// be present.
inline std::vector<PolicyFootprint> compare_policies(const Scenario& s,
                                                     const std::map<Policy, int>& rounds,
                                                     bool compose_sidelink = false) {
    if (!rounds.count(Policy::CL))
        throw std::invalid_argument("compare_policies needs a CL baseline entry");
    const CarbonBreakdown baseline = carbon_footprint(Policy::CL, s, rounds.at(Policy::CL), {});

    std::vector<PolicyFootprint> out;
    for (const Policy p : {Policy::CL, Policy::FA, Policy::FAD, Policy::CFA}) {
        const auto it = rounds.find(p);
        if (it == rounds.end()) continue;
        const int n = it->second;
        const CarbonBreakdown c =
            p == Policy::CL
                ? baseline
                : carbon_footprint(p, s, n, round_robin_schedule(n, s.fleet_size(), s.k_active),
                                   compose_sidelink);
        out.push_back({c, c.total_g() - baseline.total_g()});
    }
    return out;
}

}
