#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fedcarbon/carbon.hpp"
#include "fedcarbon/policy.hpp"
#include "fedcarbon/profiles.hpp"
#include "fedcarbon/schedule.hpp"
#include "fedcarbon/units.hpp"

// Built-in deployment presets, staged continual-learning accounting, and the
// reinforcement-learning cost adaptation (data re-uploaded every round).

namespace fedcarbon {

namespace detail {
inline std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}
}

/// Radio efficiency presets, bits per joule.
inline CommProfile builtin_comm_profile(const std::string& name) {
    const std::string key = detail::upper(name);
    if (key == "LTE") return {15e3, 25e3, std::nullopt};
    if (key == "NBIOT") return {25e3, 50e3, std::nullopt};
    if (key == "TISCH") return {std::nullopt, std::nullopt, 20e3};
    if (key == "WIFI_NAN") return {std::nullopt, std::nullopt, 100e3};
    throw std::out_of_range("unknown comm profile \"" + name +
                            "\" (expected LTE, NBIOT, TISCH, or WIFI_NAN)");
}

/// One training stage: the per-device dataset collected for it, the round
/// budget, and the stage-level per-device energy allowances (prorated across
/// the stage's rounds when the stage is costed).
struct Stage {
    double data_bits = 0.0;
    int rounds = 0;
    Policy policy = Policy::FAD;
    double sleep_wh_per_device = 0.0;
    double peripheral_wh_per_device = 0.0;

    bool operator==(const Stage&) const = default;
};

struct StagePlan {
    std::vector<Stage> stages;
    bool charge_peripherals = false;   // bill peripheral draw to the footprint
    double retrainings_per_day = 1.0;

    bool operator==(const StagePlan&) const = default;
};

inline void check_plan(const StagePlan& plan) {
    if (plan.stages.empty()) throw std::invalid_argument("plan: at least one stage required");
    for (std::size_t i = 0; i < plan.stages.size(); ++i) {
        const auto& st = plan.stages[i];
        const std::string at = "plan.stages[" + std::to_string(i) + "].";
        if (st.rounds < 0) throw std::invalid_argument(at + "rounds must be >= 0");
        if (st.data_bits < 0.0) throw std::invalid_argument(at + "data_bits must be >= 0");
        if (st.sleep_wh_per_device < 0.0)
            throw std::invalid_argument(at + "sleep_wh_per_device must be >= 0");
        if (st.peripheral_wh_per_device < 0.0)
            throw std::invalid_argument(at + "peripheral_wh_per_device must be >= 0");
    }
    if (plan.retrainings_per_day < 0.0)
        throw std::invalid_argument("plan.retrainings_per_day must be >= 0");
}

/// Scenario as it stands during one stage: the stage's dataset on every
/// device, and the stage's Wh allowances converted to per-round joules.
/// The result can violate the sleep <= active-round bound that file loading
/// enforces (a short stage concentrates the sleep allowance), which the cost
/// formulas themselves never need.
inline Scenario apply_stage(const Scenario& base, const StagePlan& plan, std::size_t index) {
    check_plan(plan);
    if (index >= plan.stages.size()) throw std::out_of_range("apply_stage: no such stage");
    const Stage& st = plan.stages[index];
    Scenario s = base;
    const double rounds = st.rounds > 0 ? static_cast<double>(st.rounds) : 1.0;
    for (auto& d : s.devices) {
        d.data_bits = st.data_bits;
        d.sleep_energy_j = wh_to_joules(st.sleep_wh_per_device) / rounds;
    }
    s.peripheral_energy_j = plan.charge_peripherals
                                ? s.fleet_size() * wh_to_joules(st.peripheral_wh_per_device) / rounds
                                : 0.0;
    return s;
}

inline double annualize(double grams_per_stage, double retrainings_per_day) {
    if (retrainings_per_day < 0.0)
        throw std::domain_error("annualize: retrainings_per_day must be >= 0");
    return grams_per_stage * retrainings_per_day * 365.0;
}

struct ContinualReport {
    std::vector<CarbonBreakdown> stages;   // one footprint per stage, in order
    double total_compute_g = 0.0;
    double total_comm_g = 0.0;
    double total_g = 0.0;
    double retraining_stage_g = 0.0;   // mean over stages after the first (the periodic cost)
    double annualized_g = 0.0;         // retraining_stage_g * retrainings/day * 365
};

/// Costs every stage of the plan with its own dataset size and round budget
/// (round-robin activation) and annualizes the recurring stage cost.
inline ContinualReport continual_total(const StagePlan& plan, const Scenario& base,
                                       bool compose_sidelink = false) {
    check_plan(plan);
    ContinualReport rep;
    for (std::size_t i = 0; i < plan.stages.size(); ++i) {
        const Stage& st = plan.stages[i];
        const Scenario s = apply_stage(base, plan, i);
        const ActiveSchedule schedule = round_robin_schedule(st.rounds, s.fleet_size(), s.k_active);
        CarbonBreakdown cb = carbon_footprint(st.policy, s, st.rounds, schedule, compose_sidelink);
        rep.total_compute_g += cb.compute_g;
        rep.total_comm_g += cb.comm_g;
        rep.total_g += cb.total_g();
        rep.stages.push_back(std::move(cb));
    }
    if (rep.stages.size() > 1) {
        double sum = 0.0;
        for (std::size_t i = 1; i < rep.stages.size(); ++i) sum += rep.stages[i].total_g();
        rep.retraining_stage_g = sum / static_cast<double>(rep.stages.size() - 1);
    } else {
        rep.retraining_stage_g = rep.stages.front().total_g();
    }
    rep.annualized_g = annualize(rep.retraining_stage_g, plan.retrainings_per_day);
    return rep;
}

/// Footprints per policy when training data is regenerated every round (the
/// reinforcement-learning setting): CL re-uploads the data each round, so its
/// upload multiplier becomes n; the federated policies move models only.
inline std::map<Policy, CarbonBreakdown> rl_accounting(const Scenario& s, int rounds,
                                                       bool compose_sidelink = false) {
    if (rounds < 0) throw std::invalid_argument("rl_accounting: rounds must be >= 0");
    const ActiveSchedule schedule = round_robin_schedule(rounds, s.fleet_size(), s.k_active);
    Scenario cl = s;
    cl.alpha = static_cast<double>(rounds);
    std::map<Policy, CarbonBreakdown> out;
    out[Policy::CL] = carbon_footprint(Policy::CL, cl, rounds, schedule, compose_sidelink);
    out[Policy::FA] = carbon_footprint(Policy::FA, s, rounds, schedule, compose_sidelink);
    out[Policy::FAD] = carbon_footprint(Policy::FAD, s, rounds, schedule, compose_sidelink);
    out[Policy::CFA] = carbon_footprint(Policy::CFA, s, rounds, schedule, compose_sidelink);
    return out;
}

struct CaseStudy {
    Scenario scenario;
    StagePlan plan;
};

/// Deployment presets for the two bundled case studies.
///
/// HRI_CONTINUAL: nine radar nodes classifying operator position next to a
/// robot; an initial training stage on 31 MB per device, then daily 19 MB
/// retraining stages. Radar peripheral draw is carried as metadata but not
/// billed to training.
///
/// RL_ROBOTS: five robot arms learning a motion policy; experience is
/// regenerated every round (cost via rl_accounting), models gossip over the
/// sidelink, and servo peripheral draw is billed to every policy.
inline CaseStudy case_study_preset(const std::string& name) {
    const std::string key = detail::upper(name);
    const double grid_ci = ci_to_grams_per_joule(0.9);   // g/J at 0.9 kg CO2-eq per kWh
    if (key == "HRI_CONTINUAL") {
        CaseStudy cs;
        Scenario& s = cs.scenario;
        s.name = "HRI_CONTINUAL";
        DeviceProfile d;
        d.power_w = 15.0;
        d.batch_time_s = 0.140;
        d.batches_per_round = 3;
        d.carbon_intensity_g_per_j = grid_ci;
        d.data_bits = mb_to_bits(31.0);
        d.examples_count = 1000;
        s.devices.assign(9, d);
        s.center.power_w = 590.0;
        s.center.batch_time_s = 0.010;
        s.center.batches_per_round = 3;
        s.center.pue = 1.67;
        s.center.agg_fraction = 0.05;
        s.center.carbon_intensity_g_per_j = grid_ci;
        s.comm = builtin_comm_profile("LTE");
        s.comm.ee_sl_bits_per_j = builtin_comm_profile("WIFI_NAN").ee_sl_bits_per_j;
        s.model.param_count = 270000;   // 1.08 MB at 32 bits/parameter
        s.k_active = 4;
        s.neighbors = 3;
        s.alpha = 1.0;
        cs.plan.stages = {
            {mb_to_bits(31.0), 40, Policy::FAD, 0.05, 3.0},
            {mb_to_bits(19.0), 12, Policy::FAD, 0.05, 3.0},
            {mb_to_bits(19.0), 12, Policy::FAD, 0.05, 3.0},
        };
        cs.plan.charge_peripherals = false;
        cs.plan.retrainings_per_day = 1.0;
        return cs;
    }
    if (key == "RL_ROBOTS") {
        CaseStudy cs;
        Scenario& s = cs.scenario;
        s.name = "RL_ROBOTS";
        DeviceProfile d;
        d.power_w = 5.1;
        d.batch_time_s = 0.400;
        d.batches_per_round = 3;
        d.carbon_intensity_g_per_j = grid_ci;
        d.data_bits = mb_to_bits(24.6);
        d.examples_count = 1000;
        s.devices.assign(5, d);
        s.center.power_w = 590.0;
        s.center.batch_time_s = 0.020;
        s.center.batches_per_round = 3;
        s.center.pue = 1.67;
        s.center.agg_fraction = 0.05;
        s.center.carbon_intensity_g_per_j = grid_ci;
        s.comm = builtin_comm_profile("LTE");
        s.comm.ee_sl_bits_per_j = builtin_comm_profile("WIFI_NAN").ee_sl_bits_per_j;
        s.model.param_count = 1400000;   // 5.6 MB at 32 bits/parameter
        s.k_active = 5;
        s.neighbors = 4;
        s.alpha = 1.0;   // rl_accounting substitutes the per-round re-upload
        cs.plan.stages = {{mb_to_bits(24.6), 300, Policy::CFA, 0.05, 6.6}};
        cs.plan.charge_peripherals = true;
        cs.plan.retrainings_per_day = 1.0;
        return cs;
    }
    throw std::out_of_range("unknown case study \"" + name +
                            "\" (expected HRI_CONTINUAL or RL_ROBOTS)");
}

}
