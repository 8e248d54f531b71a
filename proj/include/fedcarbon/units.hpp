#pragma once

#include <stdexcept>

// Unit helpers. Everything downstream works in SI: joules, bits, seconds,
// grams of CO2-equivalent. Conversions happen here and at the JSON boundary.

namespace fedcarbon {

inline constexpr double joules_per_kwh = 3.6e6;
inline constexpr double joules_per_wh = 3600.0;
inline constexpr double bits_per_mb = 8e6;    // 1 MB = 8e6 bits
inline constexpr double bits_per_mbit = 1e6;
inline constexpr double bits_per_kbit = 1e3;

constexpr double wh_to_joules(double wh) { return wh * joules_per_wh; }
constexpr double kwh_to_joules(double kwh) { return kwh * joules_per_kwh; }
constexpr double mb_to_bits(double mb) { return mb * bits_per_mb; }
constexpr double mbit_to_bits(double mbit) { return mbit * bits_per_mbit; }
constexpr double kbit_to_bits(double kbit) { return kbit * bits_per_kbit; }
constexpr double ms_to_seconds(double ms) { return ms * 1e-3; }

/// Grid carbon intensity: kgCO2-eq per kWh -> grams per joule.
inline double ci_to_grams_per_joule(double kg_per_kwh) {
    if (kg_per_kwh < 0)
        throw std::domain_error("carbon intensity must be >= 0 kg/kWh");
    return kg_per_kwh * 1000.0 / joules_per_kwh;
}

/// Inverse of ci_to_grams_per_joule.
inline double ci_to_kg_per_kwh(double g_per_j) {
    if (g_per_j < 0)
        throw std::domain_error("carbon intensity must be >= 0 g/J");
    return g_per_j * joules_per_kwh / 1000.0;
}

}
