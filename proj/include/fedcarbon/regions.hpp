#pragma once

#include <cmath>
#include <limits>

#include "fedcarbon/policy.hpp"
#include "fedcarbon/profiles.hpp"

// Sustainability regions: closed-form predicates telling whether a federated
// policy emits less carbon than the centralized baseline (or than another
// federated policy) for a given deployment and round budget. Each predicate
// returns the two sides of its inequality so sweeps can plot margins.
//
// The *_general forms weight devices by their local carbon intensity and
// example counts; the plain forms assume a uniform intensity. Where a
// predicate needs a concrete active subset, the first k_active devices are
// used - the round-0 set of the canonical round-robin schedule - and the
// general forms are exact footprint comparisons when every round activates
// that same set and per-device data scales with its example count.

namespace fedcarbon {

enum class RegionId { DU_FA, DU_FAD, SU, BW, CI_FA, CI_FAD, CI_CFA, CFA_VS_FA, CFA_VS_FAD };

inline const char* region_name(RegionId id) {
    switch (id) {
        case RegionId::DU_FA: return "DU-FA";
        case RegionId::DU_FAD: return "DU-FAD";
        case RegionId::SU: return "SU";
        case RegionId::BW: return "BW";
        case RegionId::CI_FA: return "CI-FA";
        case RegionId::CI_FAD: return "CI-FAD";
        case RegionId::CI_CFA: return "CI-CFA";
        case RegionId::CFA_VS_FA: return "CFA-vs-FA";
        case RegionId::CFA_VS_FAD: return "CFA-vs-FAD";
    }
    throw std::logic_error("unknown region id");
}

enum class Orientation { GreaterThan, LessThan };

/// One evaluated inequality. `holds` is strict: at lhs == rhs the region does
/// not hold, whatever the orientation.
struct RegionVerdict {
    RegionId id;
    double lhs = 0.0;
    double rhs = 0.0;
    Orientation orientation = Orientation::GreaterThan;
    bool holds = false;
    double margin = 0.0;   // lhs - rhs; sign matching `orientation` means the region holds
};

namespace detail {

inline RegionVerdict verdict(RegionId id, double lhs, double rhs, Orientation o) {
    RegionVerdict v;
    v.id = id;
    v.lhs = lhs;
    v.rhs = rhs;
    v.orientation = o;
    v.holds = o == Orientation::GreaterThan ? lhs > rhs : lhs < rhs;
    v.margin = lhs - rhs;
    return v;
}

inline void require_round_budget(int n) {
    if (n < 1) throw std::invalid_argument("round budget n must be >= 1");
}

inline void require_fleet_nonempty(const Scenario& s) {
    if (s.devices.empty()) throw std::invalid_argument("scenario has no devices");
}

inline double require_positive_link(const std::optional<double>& ee, const char* which) {
    if (!ee) throw ConfigError(std::string("scenario comm profile has no ") + which + " efficiency");
    if (*ee <= 0.0) throw std::domain_error(std::string(which) + " efficiency must be > 0");
    return *ee;
}

inline double require_model_bits(const Scenario& s) {
    const double bw = s.model.bits();
    if (bw <= 0.0) throw std::domain_error("model bits b(W) must be > 0");
    return bw;
}

inline double link_ratio(const std::optional<double>& num, const char* num_name,
                         const std::optional<double>& den, const char* den_name) {
    if (!num) throw ConfigError(std::string("scenario comm profile has no ") + num_name + " efficiency");
    if (!den) throw ConfigError(std::string("scenario comm profile has no ") + den_name + " efficiency");
    if (*num <= 0.0 || *den <= 0.0)
        throw std::domain_error("link efficiencies must be > 0");
    return *num / *den;
}

/// Sum of CI over the canonical active subset (devices 0..k_active-1).
inline double active_ci_sum(const Scenario& s) {
    if (s.k_active < 1 || s.k_active > s.fleet_size())
        throw std::invalid_argument("k_active must lie in [1, fleet size]");
    double sum = 0.0;
    for (int k = 0; k < s.k_active; ++k)
        sum += s.devices[static_cast<std::size_t>(k)].carbon_intensity_g_per_j;
    return sum;
}

/// Example-share-weighted fleet carbon intensity, sum_k (Q_k / Q) * CI_k.
inline double example_weighted_ci(const Scenario& s) {
    const double total = static_cast<double>(s.total_examples());
    if (total <= 0.0) throw std::domain_error("fleet example counts must sum to > 0");
    double sum = 0.0;
    for (const auto& d : s.devices)
        sum += (static_cast<double>(d.examples_count) / total) * d.carbon_intensity_g_per_j;
    return sum;
}

}  // namespace detail

/// alpha * b(E) / (n * K_a * b(W)): CL upload bits per federated model upload.
/// The uniform-intensity regions are all phrased around this load factor.
inline double data_to_model_load(const Scenario& s, int n) {
    detail::require_round_budget(n);
    const double bw = detail::require_model_bits(s);
    return s.alpha * s.total_data_bits() /
           (static_cast<double>(n) * static_cast<double>(s.k_active) * bw);
}

/// Downlink/uplink region: FA (or FA-D) beats CL on communication carbon with
/// a uniform carbon intensity iff
///   (EE_D / EE_U) * (alpha b(E) / (n K_a b(W)) - 1)  >  gamma * K / K_a
/// (FA-D replaces the right side with gamma: the center only serves the
/// scheduled subset, K_a downlinks per round instead of K).
inline RegionVerdict region_du(Policy policy, const Scenario& s, int n) {
    if (policy != Policy::FA && policy != Policy::FAD)
        throw std::invalid_argument("region_du applies to FA and FA-D only");
    detail::require_fleet_nonempty(s);
    const double ratio = detail::link_ratio(s.comm.ee_dl_bits_per_j, "downlink",
                                            s.comm.ee_ul_bits_per_j, "uplink");
    const double lhs = ratio * (data_to_model_load(s, n) - 1.0);
    const double rhs = policy == Policy::FA
                           ? s.center.pue * static_cast<double>(s.fleet_size()) /
                                 static_cast<double>(s.k_active)
                           : s.center.pue;
    return detail::verdict(policy == Policy::FA ? RegionId::DU_FA : RegionId::DU_FAD, lhs, rhs,
                           Orientation::GreaterThan);
}

/// The smallest EE_D/EE_U that would make region_du hold; +infinity when the
/// data load factor is <= 1 (no efficiency ratio can compensate).
inline double du_required_ratio(Policy policy, const Scenario& s, int n) {
    if (policy != Policy::FA && policy != Policy::FAD)
        throw std::invalid_argument("du_required_ratio applies to FA and FA-D only");
    detail::require_fleet_nonempty(s);
    const double surplus = data_to_model_load(s, n) - 1.0;
    if (surplus <= 0.0) return std::numeric_limits<double>::infinity();
    const double rhs = policy == Policy::FA
                           ? s.center.pue * static_cast<double>(s.fleet_size()) /
                                 static_cast<double>(s.k_active)
                           : s.center.pue;
    return rhs / surplus;
}

/// Sidelink/uplink region: CFA beats CL on communication carbon with a
/// uniform intensity iff (EE_S / EE_U) * alpha / (n K_a) > N b(W) / b(E).
inline RegionVerdict region_su(const Scenario& s, int n, bool compose_sidelink = false) {
    detail::require_fleet_nonempty(s);
    detail::require_round_budget(n);
    const double data_bits = s.total_data_bits();
    if (data_bits <= 0.0) throw std::domain_error("fleet data bits b(E) must be > 0");
    const double bw = detail::require_model_bits(s);
    const double ee_s = effective_sidelink(s, compose_sidelink);
    const double ee_u = detail::require_positive_link(s.comm.ee_ul_bits_per_j, "uplink");
    const double lhs = (ee_s / ee_u) * s.alpha /
                       (static_cast<double>(n) * static_cast<double>(s.k_active));
    const double rhs = static_cast<double>(s.neighbors) * bw / data_bits;
    return detail::verdict(RegionId::SU, lhs, rhs, Orientation::GreaterThan);
}

/// Round budget below which federated model traffic stays cheaper than the
/// one-off data upload: n_max = alpha * b(E) / (Gamma * K_a * b(W)), where
/// Gamma is 1 for upload-only policies and the sidelink fan-out N when each
/// transfer is pushed to N peers.
inline double max_sustainable_rounds(const Scenario& s, int fanout_weight = 1) {
    detail::require_fleet_nonempty(s);
    if (fanout_weight < 1) throw std::invalid_argument("fanout_weight must be >= 1");
    const double bw = detail::require_model_bits(s);
    return s.alpha * s.total_data_bits() /
           (static_cast<double>(fanout_weight) * static_cast<double>(s.k_active) * bw);
}

/// The same bound phrased as a verdict on a concrete n:
/// b(W) / mean b(E_k)  <  (alpha / n) * K / (Gamma * K_a).
inline RegionVerdict region_bw(const Scenario& s, int n, int fanout_weight = 1) {
    detail::require_fleet_nonempty(s);
    detail::require_round_budget(n);
    if (fanout_weight < 1) throw std::invalid_argument("fanout_weight must be >= 1");
    const double mean_bits = s.mean_data_bits();
    if (mean_bits <= 0.0) throw std::domain_error("fleet data bits b(E) must be > 0");
    const double bw = detail::require_model_bits(s);
    const double lhs = bw / mean_bits;
    const double rhs = (s.alpha / static_cast<double>(n)) * static_cast<double>(s.fleet_size()) /
                       (static_cast<double>(fanout_weight) * static_cast<double>(s.k_active));
    return detail::verdict(RegionId::BW, lhs, rhs, Orientation::LessThan);
}

/// Computing-carbon region: the fleet's training emissions stay below the
/// center's iff sum phi_k CI_k / ((1 - beta) CI_0) < gamma. FA sums over the
/// whole fleet, FA-D over the scheduled subset; CFA drops the 1/(1 - beta)
/// (no server-side aggregation at all) and sums over the scheduled subset.
inline RegionVerdict region_ci(Policy policy, const Scenario& s) {
    detail::require_fleet_nonempty(s);
    if (policy == Policy::CL)
        throw std::invalid_argument("region_ci compares federated policies against CL");
    const double ci0 = s.center.carbon_intensity_g_per_j;
    if (ci0 <= 0.0) throw std::domain_error("center carbon intensity must be > 0");
    const int limit = policy == Policy::FA ? s.fleet_size() : s.k_active;
    if (limit < 1 || limit > s.fleet_size())
        throw std::invalid_argument("k_active must lie in [1, fleet size]");

    double weighted = 0.0;
    for (int k = 0; k < limit; ++k) {
        const auto& d = s.devices[static_cast<std::size_t>(k)];
        weighted += phi_ratio(d, s.center) * d.carbon_intensity_g_per_j;
    }

    double lhs;
    RegionId id;
    if (policy == Policy::CFA) {
        lhs = weighted / ci0;
        id = RegionId::CI_CFA;
    } else {
        const double beta = s.center.agg_fraction;
        if (beta >= 1.0)
            throw std::domain_error("agg_fraction must be < 1 for a server-side policy");
        lhs = weighted / ((1.0 - beta) * ci0);
        id = policy == Policy::FA ? RegionId::CI_FA : RegionId::CI_FAD;
    }
    return detail::verdict(id, lhs, s.center.pue, Orientation::LessThan);
}

/// Example-weighted data-vs-model load factor:
///   H = (alpha / (n K_a)) * (b(E) / b(W)) * sum_k sigma_k CI_k,
/// sigma_k = Q_k / Q. This is the heterogeneous-intensity replacement for
/// data_to_model_load * CI; it equals the exact CL upload carbon per
/// federated transfer opportunity when b(E_k) is proportional to Q_k.
inline double h_factor(const Scenario& s, int n) {
    detail::require_fleet_nonempty(s);
    detail::require_round_budget(n);
    const double bw = detail::require_model_bits(s);
    return (s.alpha / (static_cast<double>(n) * static_cast<double>(s.k_active))) *
           (s.total_data_bits() / bw) * detail::example_weighted_ci(s);
}

/// Heterogeneous-intensity downlink/uplink region, normalized by the active
/// subset's mean intensity so a uniform fleet reduces numerically to
/// region_du:
///   lhs = (EE_D/EE_U) * (H / avg_A(CI) - 1)
///   rhs = gamma * (K / K_a) * CI_0 / avg_A(CI)      (FA-D: without K / K_a)
inline RegionVerdict region_du_general(Policy policy, const Scenario& s, int n) {
    if (policy != Policy::FA && policy != Policy::FAD)
        throw std::invalid_argument("region_du_general applies to FA and FA-D only");
    detail::require_fleet_nonempty(s);
    const double ratio = detail::link_ratio(s.comm.ee_dl_bits_per_j, "downlink",
                                            s.comm.ee_ul_bits_per_j, "uplink");
    const double avg_active = detail::active_ci_sum(s) / static_cast<double>(s.k_active);
    if (avg_active <= 0.0)
        throw std::domain_error("active devices' carbon intensities must sum to > 0");
    const double lhs = ratio * (h_factor(s, n) / avg_active - 1.0);
    const double fleet_per_active =
        policy == Policy::FA
            ? static_cast<double>(s.fleet_size()) / static_cast<double>(s.k_active)
            : 1.0;
    const double rhs = s.center.pue * fleet_per_active * s.center.carbon_intensity_g_per_j / avg_active;
    return detail::verdict(policy == Policy::FA ? RegionId::DU_FA : RegionId::DU_FAD, lhs, rhs,
                           Orientation::GreaterThan);
}

/// Heterogeneous-intensity sidelink/uplink region, same normalization:
///   lhs = (EE_S/EE_U) * (alpha / (n K_a)) * (sum sigma_k CI_k / avg_A(CI))
///   rhs = N * b(W) / b(E)
/// With wwan_composed_limit the sidelink is assumed exactly as efficient as
/// an uplink+downlink relay, in which case the EE_S/EE_U factor cancels and
/// the region reduces to the round-budget bound with Gamma = N.
inline RegionVerdict region_su_general(const Scenario& s, int n, bool compose_sidelink = false,
                                       bool wwan_composed_limit = false) {
    detail::require_fleet_nonempty(s);
    detail::require_round_budget(n);
    const double data_bits = s.total_data_bits();
    if (data_bits <= 0.0) throw std::domain_error("fleet data bits b(E) must be > 0");
    const double bw = detail::require_model_bits(s);
    const double avg_active = detail::active_ci_sum(s) / static_cast<double>(s.k_active);
    if (avg_active <= 0.0)
        throw std::domain_error("active devices' carbon intensities must sum to > 0");
    const double base = (s.alpha / (static_cast<double>(n) * static_cast<double>(s.k_active))) *
                        (detail::example_weighted_ci(s) / avg_active);
    double lhs;
    if (wwan_composed_limit) {
        lhs = base;
    } else {
        const double ee_s = effective_sidelink(s, compose_sidelink);
        const double ee_u = detail::require_positive_link(s.comm.ee_ul_bits_per_j, "uplink");
        lhs = (ee_s / ee_u) * base;
    }
    const double rhs = static_cast<double>(s.neighbors) * bw / data_bits;
    return detail::verdict(RegionId::SU, lhs, rhs, Orientation::GreaterThan);
}

/// Per-round communication-carbon comparison of CFA against FA (or FA-D):
///   EE_S/EE_U + gamma * K * (CI_0 / sum_A CI_k) * EE_S/EE_D  >  N
/// (against FA-D the center only serves K_a devices, so K becomes K_a).
/// Exact: both sides are the FA and CFA per-round comm carbon divided by the
/// positive factor sum_A CI_k * b(W) / EE_S.
inline RegionVerdict cfa_beats_fa_per_round(const Scenario& s, Policy vs_policy = Policy::FA,
                                            bool compose_sidelink = false) {
    if (vs_policy != Policy::FA && vs_policy != Policy::FAD)
        throw std::invalid_argument("cfa_beats_fa_per_round compares against FA or FA-D");
    detail::require_fleet_nonempty(s);
    const double ee_s = effective_sidelink(s, compose_sidelink);
    const double ee_u = detail::require_positive_link(s.comm.ee_ul_bits_per_j, "uplink");
    const double ee_d = detail::require_positive_link(s.comm.ee_dl_bits_per_j, "downlink");
    const double active_ci = detail::active_ci_sum(s);
    if (active_ci <= 0.0)
        throw std::domain_error("active devices' carbon intensities must sum to > 0");
    const double served = vs_policy == Policy::FA ? static_cast<double>(s.fleet_size())
                                                  : static_cast<double>(s.k_active);
    const double lhs = ee_s / ee_u +
                       s.center.pue * served * (s.center.carbon_intensity_g_per_j / active_ci) *
                           (ee_s / ee_d);
    return detail::verdict(vs_policy == Policy::FA ? RegionId::CFA_VS_FA : RegionId::CFA_VS_FAD,
                           lhs, static_cast<double>(s.neighbors), Orientation::GreaterThan);
}

}
