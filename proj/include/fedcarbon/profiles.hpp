#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fedcarbon/error.hpp"

// Value types describing one training deployment: the device fleet, the
// parameter server / data center, the radio links and the model size.
// All energies are joules, all data sizes bits, carbon intensities g/J.

namespace fedcarbon {

struct DeviceProfile {
    double power_w = 0.0;            // P_k while training
    double batch_time_s = 0.0;       // T_k per batch
    int batches_per_round = 1;       // B
    double sleep_energy_j = 0.0;     // energy of one round spent in deep sleep
    double carbon_intensity_g_per_j = 0.0;
    double data_bits = 0.0;          // size of the local dataset if uploaded
    std::int64_t examples_count = 0;  // Q_k

    bool operator==(const DeviceProfile&) const = default;
};

struct CenterProfile {
    double power_w = 0.0;            // P_0
    double batch_time_s = 0.0;       // T_0
    int batches_per_round = 1;       // B
    double pue = 1.0;                // gamma
    double agg_fraction = 0.0;       // beta: share of a center round spent aggregating
    double carbon_intensity_g_per_j = 0.0;

    bool operator==(const CenterProfile&) const = default;
};

/// Link efficiencies in bits per joule. A link that the deployment does not
/// have is simply absent; operations that need it say so.
struct CommProfile {
    std::optional<double> ee_ul_bits_per_j;
    std::optional<double> ee_dl_bits_per_j;
    std::optional<double> ee_sl_bits_per_j;

    bool operator==(const CommProfile&) const = default;
};

struct ModelSpec {
    std::int64_t param_count = 0;
    int bits_per_param = 32;
    std::optional<double> model_bits_override;

    bool operator==(const ModelSpec&) const = default;

    /// b(W): bits exchanged per model transfer.
    double bits() const {
        return model_bits_override ? *model_bits_override
                                   : static_cast<double>(param_count) * bits_per_param;
    }
};

struct Scenario {
    std::string name = "scenario";
    std::vector<DeviceProfile> devices;
    CenterProfile center;
    CommProfile comm;
    ModelSpec model;
    int k_active = 1;                 // devices scheduled per round (K_a)
    int neighbors = 1;                // sidelink fan-out per active device (N)
    double alpha = 1.0;               // how many times raw data is re-uploaded under CL
    double peripheral_energy_j = 0.0; // fleet-level per-round overhead (sensors, actuation)

    bool operator==(const Scenario&) const = default;

    int fleet_size() const { return static_cast<int>(devices.size()); }

    double total_data_bits() const {
        double s = 0.0;
        for (const auto& d : devices) s += d.data_bits;
        return s;
    }

    std::int64_t total_examples() const {
        std::int64_t s = 0;
        for (const auto& d : devices) s += d.examples_count;
        return s;
    }

    double mean_data_bits() const {
        return devices.empty() ? 0.0 : total_data_bits() / static_cast<double>(devices.size());
    }
};

/// Energy of one training round, P * T * B. Works for devices and the center
/// alike; B = 0 gives 0 J (the >= 1 bound is a scenario-validation rule).
template <typename Profile>
double round_energy(const Profile& p) {
    return p.power_w * p.batch_time_s * static_cast<double>(p.batches_per_round);
}

/// phi_k = (P_k / P_0) * (T_k / T_0): device round energy relative to the
/// center, assuming equal batches per round.
inline double phi_ratio(const DeviceProfile& device, const CenterProfile& center) {
    if (center.power_w <= 0.0 || center.batch_time_s <= 0.0)
        throw std::domain_error("phi_ratio: center power_w and batch_time_s must be > 0");
    return (device.power_w / center.power_w) * (device.batch_time_s / center.batch_time_s);
}

/// Effective sidelink efficiency of a device-to-device exchange routed over
/// the WWAN instead of a true sidelink: one uplink plus one PUE-weighted
/// downlink per bit, 1 / (1/EE_U + gamma/EE_D).
inline double sidelink_via_wwan(const CommProfile& comm, double pue) {
    if (!comm.ee_ul_bits_per_j || !comm.ee_dl_bits_per_j)
        throw ConfigError("sidelink_via_wwan: uplink and downlink efficiencies are required");
    if (*comm.ee_ul_bits_per_j <= 0.0 || *comm.ee_dl_bits_per_j <= 0.0)
        throw std::domain_error("sidelink_via_wwan: efficiencies must be > 0");
    if (pue < 1.0)
        throw std::domain_error("sidelink_via_wwan: pue must be >= 1");
    return 1.0 / (1.0 / *comm.ee_ul_bits_per_j + pue / *comm.ee_dl_bits_per_j);
}

/// The sidelink efficiency a consensus policy should use: the profile's own
/// if present, otherwise the WWAN-composed one when compose_if_missing is set.
inline double effective_sidelink(const Scenario& s, bool compose_if_missing = false) {
    if (s.comm.ee_sl_bits_per_j)
        return *s.comm.ee_sl_bits_per_j;
    if (compose_if_missing)
        return sidelink_via_wwan(s.comm, s.center.pue);
    throw ConfigError("no sidelink efficiency in profile (enable WWAN composition to derive one)");
}

namespace detail {
inline void check(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}
}

/// Full structural validation, used at the file-parsing boundary. Individual
/// cost functions re-check only the preconditions they rely on, so tests can
/// probe formulas on deliberately partial profiles.
inline void validate_scenario(const Scenario& s) {
    using detail::check;
    check(!s.devices.empty(), "devices: at least one device required");
    for (std::size_t k = 0; k < s.devices.size(); ++k) {
        const auto& d = s.devices[k];
        const std::string at = "devices[" + std::to_string(k) + "].";
        check(d.power_w >= 0.0, at + "power_w must be >= 0");
        check(d.batch_time_s >= 0.0, at + "batch_time_s must be >= 0");
        check(d.batches_per_round >= 1, at + "batches_per_round must be >= 1");
        check(d.sleep_energy_j >= 0.0, at + "sleep_energy_j must be >= 0");
        check(d.sleep_energy_j <= round_energy(d),
              at + "sleep_energy_j must not exceed the active round energy");
        check(d.carbon_intensity_g_per_j >= 0.0, at + "carbon_intensity_g_per_j must be >= 0");
        check(d.data_bits >= 0.0, at + "data_bits must be >= 0");
        check(d.examples_count >= 0, at + "examples_count must be >= 0");
    }
    check(s.center.power_w >= 0.0, "center.power_w must be >= 0");
    check(s.center.batch_time_s >= 0.0, "center.batch_time_s must be >= 0");
    check(s.center.batches_per_round >= 1, "center.batches_per_round must be >= 1");
    check(s.center.pue >= 1.0, "center.pue must be >= 1");
    check(s.center.agg_fraction >= 0.0 && s.center.agg_fraction <= 1.0,
          "center.agg_fraction must lie in [0, 1]");
    check(s.center.carbon_intensity_g_per_j >= 0.0, "center.carbon_intensity_g_per_j must be >= 0");
    if (s.comm.ee_ul_bits_per_j)
        check(*s.comm.ee_ul_bits_per_j > 0.0, "comm.ee_ul_bits_per_j must be > 0 when present");
    if (s.comm.ee_dl_bits_per_j)
        check(*s.comm.ee_dl_bits_per_j > 0.0, "comm.ee_dl_bits_per_j must be > 0 when present");
    if (s.comm.ee_sl_bits_per_j)
        check(*s.comm.ee_sl_bits_per_j > 0.0, "comm.ee_sl_bits_per_j must be > 0 when present");
    check(s.model.param_count >= 0, "model.param_count must be >= 0");
    check(s.model.bits_per_param >= 1, "model.bits_per_param must be >= 1");
    if (s.model.model_bits_override)
        check(*s.model.model_bits_override >= static_cast<double>(s.model.param_count),
              "model.model_bits must be >= param_count (at least one bit per parameter)");
    check(s.k_active >= 1 && s.k_active <= s.fleet_size(),
          "k_active must lie in [1, fleet size]");
    check(s.neighbors >= 1, "neighbors must be >= 1");
    if (s.fleet_size() >= 2)
        check(s.neighbors <= s.fleet_size() - 1, "neighbors must be <= fleet size - 1");
    check(s.alpha >= 0.0, "alpha must be >= 0");
    check(s.peripheral_energy_j >= 0.0, "peripheral_energy_j must be >= 0");
}

}
