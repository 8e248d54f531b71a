#pragma once

#include <cstdint>

#include "fedcarbon/profiles.hpp"
#include "fedcarbon/rng.hpp"

namespace testing_helpers {

/// Handwriting-digit-style supervised deployment: 30 identical handsets, a
/// single data center, LTE-like uplink/downlink, a small dense model.
inline fedcarbon::Scenario mnist_like_scenario() {
    fedcarbon::Scenario s;
    s.name = "mnist_like";
    fedcarbon::DeviceProfile d;
    d.power_w = 3.0;
    d.batch_time_s = 0.05;
    d.batches_per_round = 10;
    d.sleep_energy_j = 0.1;
    d.carbon_intensity_g_per_j = 2.5e-4;
    d.data_bits = 6.2e6;
    d.examples_count = 2000;
    s.devices.assign(30, d);
    s.center.power_w = 590.0;
    s.center.batch_time_s = 0.01;
    s.center.batches_per_round = 10;
    s.center.pue = 1.5;
    s.center.agg_fraction = 0.05;
    s.center.carbon_intensity_g_per_j = 2.5e-4;
    s.comm.ee_ul_bits_per_j = 10e3;
    s.comm.ee_dl_bits_per_j = 50e3;
    s.comm.ee_sl_bits_per_j = 100e3;
    s.model.param_count = 5625;
    s.model.bits_per_param = 32;
    s.k_active = 20;
    s.neighbors = 1;
    s.alpha = 1.0;
    return s;
}

/// Random but valid scenario for property sweeps. Every draw is positive so
/// strict predicates stay away from exact ties.
inline fedcarbon::Scenario random_scenario(std::uint64_t seed) {
    fedcarbon::Rng rng(fedcarbon::derive_seed(seed, 0x5C));
    fedcarbon::Scenario s;
    s.name = "random";
    const int fleet = 2 + static_cast<int>(rng.bounded(18));
    for (int k = 0; k < fleet; ++k) {
        fedcarbon::DeviceProfile d;
        d.power_w = rng.uniform(0.5, 20.0);
        d.batch_time_s = rng.uniform(0.01, 0.5);
        d.batches_per_round = 1 + static_cast<int>(rng.bounded(8));
        d.sleep_energy_j = rng.uniform(0.0, 0.5);
        d.carbon_intensity_g_per_j = rng.uniform(1e-5, 5e-4);
        d.data_bits = rng.uniform(1e5, 5e8);
        d.examples_count = 100 + static_cast<std::int64_t>(rng.bounded(5000));
        s.devices.push_back(d);
    }
    s.center.power_w = rng.uniform(100.0, 2000.0);
    s.center.batch_time_s = rng.uniform(0.001, 0.05);
    s.center.batches_per_round = 1 + static_cast<int>(rng.bounded(8));
    s.center.pue = rng.uniform(1.0, 2.5);
    s.center.agg_fraction = rng.uniform(0.0, 0.3);
    s.center.carbon_intensity_g_per_j = rng.uniform(1e-5, 5e-4);
    s.comm.ee_ul_bits_per_j = rng.uniform(5e3, 50e3);
    s.comm.ee_dl_bits_per_j = rng.uniform(5e3, 100e3);
    s.comm.ee_sl_bits_per_j = rng.uniform(5e3, 200e3);
    s.model.param_count = 1000 + static_cast<std::int64_t>(rng.bounded(2000000));
    s.model.bits_per_param = 32;
    s.k_active = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(fleet)));
    s.neighbors = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(fleet - 1)));
    s.alpha = rng.uniform(1.0, 4.0);
    s.peripheral_energy_j = rng.uniform(0.0, 10.0);
    return s;
}

/// Same fleet everywhere it matters for the closed-form reductions: one CI at
/// every site, but sizes and efficiencies still random.
inline fedcarbon::Scenario random_uniform_ci_scenario(std::uint64_t seed) {
    fedcarbon::Scenario s = random_scenario(seed);
    fedcarbon::Rng rng(fedcarbon::derive_seed(seed, 0xC1));
    const double ci = rng.uniform(1e-5, 5e-4);
    for (auto& d : s.devices) d.carbon_intensity_g_per_j = ci;
    s.center.carbon_intensity_g_per_j = ci;
    return s;
}

}
