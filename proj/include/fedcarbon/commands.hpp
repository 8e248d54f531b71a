#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fedcarbon/carbon.hpp"
#include "fedcarbon/dataset.hpp"
#include "fedcarbon/model.hpp"
#include "fedcarbon/regions.hpp"
#include "fedcarbon/report.hpp"
#include "fedcarbon/scenario_io.hpp"
#include "fedcarbon/scenarios.hpp"
#include "fedcarbon/sim.hpp"
#include "fedcarbon/version.hpp"

// Command implementations behind the CLI: each one turns validated inputs
// into a Report with deterministic ordering and metadata.

namespace fedcarbon {

namespace detail {

/// Evaluates a region that may be undefined for this scenario (missing link,
/// zero data, beta = 1...). Undefined regions are simply absent from reports.
inline std::optional<RegionVerdict> try_region(const std::function<RegionVerdict()>& eval) {
    try {
        return eval();
    } catch (const ConfigError&) {
        return std::nullopt;
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

inline std::string bool_cell(bool v) { return v ? "true" : "false"; }

inline void append_region_cells(std::vector<std::string>& row,
                                const std::optional<RegionVerdict>& v) {
    row.push_back(v ? format_g6(v->margin) : "");
    row.push_back(v ? bool_cell(v->holds) : "");
}

/// The footprint/sweep row tail: margins and verdicts of the regions that
/// apply to this policy (blank cells otherwise).
inline void append_policy_regions(std::vector<std::string>& row, Policy policy,
                                  const Scenario& s, int n, bool compose_sidelink) {
    std::optional<RegionVerdict> du, ci, bw, su;
    if (n >= 1 && policy != Policy::CL) {
        if (policy == Policy::FA || policy == Policy::FAD)
            du = try_region([&] { return region_du(policy, s, n); });
        ci = try_region([&] { return region_ci(policy, s); });
        bw = try_region([&] {
            return region_bw(s, n, policy == Policy::CFA ? s.neighbors : 1);
        });
        if (policy == Policy::CFA)
            su = try_region([&] { return region_su(s, n, compose_sidelink); });
    }
    append_region_cells(row, du);
    append_region_cells(row, ci);
    append_region_cells(row, bw);
    append_region_cells(row, su);
}

inline void add_standard_meta(Report& rep, const std::string& command, const Scenario& s,
                              const std::string& canonical_args) {
    rep.add_meta("command", command);
    rep.add_meta("version", version);
    rep.add_meta("scenario", s.name);
    rep.add_meta("config_hash", hex64(fnv1a64(serialize_scenario(s) + canonical_args)));
}

}  // namespace detail

/// One row per requested policy: the carbon breakdown for n rounds, plus the
/// margins of the sustainability regions that apply to that policy.
inline Report cmd_footprint(const Scenario& s, const std::vector<Policy>& policies, int n,
                            bool compose_sidelink = false) {
    if (policies.empty()) throw std::invalid_argument("footprint: at least one policy required");
    if (n < 0) throw std::invalid_argument("footprint: rounds must be >= 0");

    Report rep;
    std::string args = "footprint;n=" + std::to_string(n) +
                       ";compose=" + (compose_sidelink ? "1" : "0");
    for (Policy p : policies) args += std::string(";") + policy_name(p);
    detail::add_standard_meta(rep, "footprint", s, args);
    rep.add_meta("rounds", std::to_string(n));
    rep.columns = {"scenario",  "policy",   "rounds",    "compute_g", "comm_g",
                   "total_g",   "du_margin", "du_holds", "ci_margin", "ci_holds",
                   "bw_margin", "bw_holds",  "su_margin", "su_holds"};

    const ActiveSchedule schedule = round_robin_schedule(n, s.fleet_size(), s.k_active);
    for (Policy p : {Policy::CL, Policy::FA, Policy::FAD, Policy::CFA}) {
        if (std::find(policies.begin(), policies.end(), p) == policies.end()) continue;
        const CarbonBreakdown cb = carbon_footprint(p, s, n, schedule, compose_sidelink);
        std::vector<std::string> row = {s.name,
                                        policy_name(p),
                                        std::to_string(n),
                                        format_g6(cb.compute_g),
                                        format_g6(cb.comm_g),
                                        format_g6(cb.total_g())};
        detail::append_policy_regions(row, p, s, n, compose_sidelink);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

/// One row per applicable sustainability predicate at round budget n.
inline Report cmd_regions(const Scenario& s, int n, bool compose_sidelink = false) {
    if (n < 1) throw std::invalid_argument("regions: rounds must be >= 1");

    Report rep;
    detail::add_standard_meta(rep, "regions", s,
                              "regions;n=" + std::to_string(n) +
                                  ";compose=" + (compose_sidelink ? "1" : "0"));
    rep.add_meta("rounds", std::to_string(n));
    rep.columns = {"scenario", "region", "policy",  "rounds", "lhs",
                   "rhs",      "relation", "holds", "margin", "required_ee_ratio", "n_max"};

    struct Entry {
        const char* policy;
        std::function<RegionVerdict()> eval;
        std::function<std::string()> required_ratio;
        std::function<std::string()> n_max;
    };
    const auto none = [] { return std::string(); };
    const std::vector<Entry> entries = {
        {"FA", [&] { return region_du(Policy::FA, s, n); },
         [&] { return format_g6(du_required_ratio(Policy::FA, s, n)); }, none},
        {"FA-D", [&] { return region_du(Policy::FAD, s, n); },
         [&] { return format_g6(du_required_ratio(Policy::FAD, s, n)); }, none},
        {"CFA", [&] { return region_su(s, n, compose_sidelink); }, none, none},
        {"", [&] { return region_bw(s, n, 1); }, none,
         [&] { return format_g6(max_sustainable_rounds(s, 1)); }},
        {"FA", [&] { return region_ci(Policy::FA, s); }, none, none},
        {"FA-D", [&] { return region_ci(Policy::FAD, s); }, none, none},
        {"CFA", [&] { return region_ci(Policy::CFA, s); }, none, none},
        {"CFA", [&] { return cfa_beats_fa_per_round(s, Policy::FA, compose_sidelink); }, none, none},
        {"CFA", [&] { return cfa_beats_fa_per_round(s, Policy::FAD, compose_sidelink); }, none, none},
    };
    for (const Entry& e : entries) {
        const auto v = detail::try_region(e.eval);
        if (!v) continue;
        rep.rows.push_back({s.name, region_name(v->id), e.policy, std::to_string(n),
                            format_g6(v->lhs), format_g6(v->rhs),
                            v->orientation == Orientation::GreaterThan ? ">" : "<",
                            detail::bool_cell(v->holds), format_g6(v->margin),
                            e.required_ratio(), e.n_max()});
    }
    return rep;
}

/// Stage-by-stage footprint of a continual-learning plan plus the annualized
/// recurring cost, one row per stage and a trailing total row.
inline Report cmd_continual(const Scenario& base, const StagePlan& plan,
                            bool compose_sidelink = false) {
    const ContinualReport cr = continual_total(plan, base, compose_sidelink);

    Report rep;
    std::string args = "continual;compose=" + std::string(compose_sidelink ? "1" : "0");
    for (const Stage& st : plan.stages)
        args += ";" + format_g6(st.data_bits) + ":" + std::to_string(st.rounds) + ":" +
                policy_name(st.policy);
    detail::add_standard_meta(rep, "continual", base, args);
    rep.add_meta("stages", std::to_string(plan.stages.size()));
    rep.add_meta("retrainings_per_day", format_g6(plan.retrainings_per_day));
    rep.add_meta("retraining_stage_g", format_g6(cr.retraining_stage_g));
    rep.add_meta("annualized_g", format_g6(cr.annualized_g));
    rep.columns = {"scenario", "stage", "policy", "rounds", "compute_g", "comm_g", "total_g"};
    for (std::size_t i = 0; i < cr.stages.size(); ++i) {
        const CarbonBreakdown& cb = cr.stages[i];
        rep.rows.push_back({base.name, std::to_string(i), policy_name(cb.policy),
                            std::to_string(cb.rounds), format_g6(cb.compute_g),
                            format_g6(cb.comm_g), format_g6(cb.total_g())});
    }
    rep.rows.push_back({base.name, "total", "", "", format_g6(cr.total_compute_g),
                        format_g6(cr.total_comm_g), format_g6(cr.total_g)});
    return rep;
}

struct SweepSpec {
    std::string parameter;        // k_active | ee_ul | ee_dl | ee_sl | rounds | model_bits
    std::vector<double> grid;     // strictly increasing
    std::vector<Policy> policies = {Policy::CL, Policy::FA, Policy::FAD, Policy::CFA};
    int rounds = 1;               // n used when the parameter is not "rounds"
    bool compose_sidelink = false;
};

namespace detail {

inline int grid_int(double v, const char* what) {
    const double r = std::floor(v);
    if (r != v || v < 0.0 || v > 1e9)
        throw std::invalid_argument(std::string("sweep: ") + what + " grid values must be small non-negative integers");
    return static_cast<int>(r);
}

}  // namespace detail

/// Footprint rows over a one-parameter grid, for boundary plots. Row order is
/// (policy, grid index); every row repeats the swept parameter and value.
inline Report cmd_sweep(const Scenario& base, const SweepSpec& spec) {
    static const std::vector<std::string> known = {"k_active", "ee_ul",  "ee_dl",
                                                   "ee_sl",    "rounds", "model_bits"};
    if (std::find(known.begin(), known.end(), spec.parameter) == known.end())
        throw std::invalid_argument("sweep: unknown parameter \"" + spec.parameter + "\"");
    if (spec.grid.empty()) throw std::invalid_argument("sweep: empty grid");
    for (std::size_t i = 1; i < spec.grid.size(); ++i)
        if (!(spec.grid[i - 1] < spec.grid[i]))
            throw std::invalid_argument("sweep: grid values must be strictly increasing");
    if (spec.policies.empty()) throw std::invalid_argument("sweep: at least one policy required");
    if (spec.rounds < 0) throw std::invalid_argument("sweep: rounds must be >= 0");

    Report rep;
    std::string args = "sweep;param=" + spec.parameter + ";n=" + std::to_string(spec.rounds) +
                       ";compose=" + (spec.compose_sidelink ? "1" : "0");
    for (double v : spec.grid) args += ";" + format_g6(v);
    for (Policy p : spec.policies) args += std::string(";") + policy_name(p);
    detail::add_standard_meta(rep, "sweep", base, args);
    rep.add_meta("parameter", spec.parameter);
    rep.columns = {"scenario",  "parameter", "value",    "policy",    "rounds",
                   "compute_g", "comm_g",    "total_g",  "du_margin", "du_holds",
                   "ci_margin", "ci_holds",  "bw_margin", "bw_holds", "su_margin",
                   "su_holds"};

    for (Policy p : {Policy::CL, Policy::FA, Policy::FAD, Policy::CFA}) {
        if (std::find(spec.policies.begin(), spec.policies.end(), p) == spec.policies.end())
            continue;
        for (double value : spec.grid) {
            Scenario s = base;
            int n = spec.rounds;
            if (spec.parameter == "k_active") {
                s.k_active = detail::grid_int(value, "k_active");
                if (s.k_active < 1 || s.k_active > s.fleet_size())
                    throw std::invalid_argument("sweep: k_active grid value outside [1, fleet size]");
            } else if (spec.parameter == "ee_ul") {
                s.comm.ee_ul_bits_per_j = value;
            } else if (spec.parameter == "ee_dl") {
                s.comm.ee_dl_bits_per_j = value;
            } else if (spec.parameter == "ee_sl") {
                s.comm.ee_sl_bits_per_j = value;
            } else if (spec.parameter == "rounds") {
                n = detail::grid_int(value, "rounds");
            } else {
                s.model.model_bits_override = value;
            }
            const ActiveSchedule schedule = round_robin_schedule(n, s.fleet_size(), s.k_active);
            const CarbonBreakdown cb =
                carbon_footprint(p, s, n, schedule, spec.compose_sidelink);
            std::vector<std::string> row = {base.name,
                                            spec.parameter,
                                            format_g6(value),
                                            policy_name(p),
                                            std::to_string(n),
                                            format_g6(cb.compute_g),
                                            format_g6(cb.comm_g),
                                            format_g6(cb.total_g())};
            detail::append_policy_regions(row, p, s, n, spec.compose_sidelink);
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

struct SimulateSpec {
    Policy policy = Policy::FA;
    int classes = 3;
    int dim = 2;
    int per_class = 200;
    double separation = 3.0;
    ModelKind model_kind = ModelKind::SoftmaxLinear;
    int hidden = 16;               // OneHiddenLayer only
    double payload_overhead = 1.0; // serialization overhead on b(W)
    TrainingHyper hyper;
    RunOptions options;
    int seeds = 1;
    std::uint64_t base_seed = 1;
};

/// One row per seed plus summary metadata; the median rounds are the natural
/// n input for cmd_footprint.
inline Report cmd_simulate(const Scenario& base, const SimulateSpec& spec) {
    if (spec.seeds < 1) throw std::invalid_argument("simulate: at least one seed required");
    check_hyper(spec.hyper);

    ModelShape shape;
    shape.kind = spec.model_kind;
    shape.classes = spec.classes;
    shape.dim = spec.dim;
    shape.hidden = spec.hidden;

    // The simulated model defines the payload the cost models would move.
    Scenario s = base;
    s.model.param_count = shape.param_count();
    s.model.bits_per_param = 32;
    if (spec.payload_overhead != 1.0)
        s.model.model_bits_override = model_payload_bits(shape, spec.payload_overhead);
    else
        s.model.model_bits_override.reset();

    Report rep;
    const std::string args = "simulate;policy=" + std::string(policy_name(spec.policy)) +
                             ";classes=" + std::to_string(spec.classes) +
                             ";dim=" + std::to_string(spec.dim) +
                             ";per_class=" + std::to_string(spec.per_class) +
                             ";separation=" + format_g6(spec.separation) +
                             ";seeds=" + std::to_string(spec.seeds) +
                             ";base_seed=" + std::to_string(spec.base_seed) +
                             ";target=" + format_g6(spec.hyper.target_loss) +
                             ";max_rounds=" + std::to_string(spec.hyper.max_rounds);
    detail::add_standard_meta(rep, "simulate", s, args);
    rep.add_meta("policy", policy_name(spec.policy));
    rep.add_meta("seeds", std::to_string(spec.seeds));
    rep.add_meta("base_seed", std::to_string(spec.base_seed));
    rep.columns = {"scenario", "policy", "seed", "rounds_used", "hit_target", "final_loss"};

    std::vector<int> rounds;
    int hits = 0;
    for (int i = 0; i < spec.seeds; ++i) {
        const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(i);
        const Dataset ds =
            make_synthetic_dataset(spec.classes, spec.dim, spec.per_class, spec.separation, seed);
        const TrainingOutcome outcome =
            run_training(spec.policy, s, ds, shape, spec.hyper, spec.options, seed);
        rounds.push_back(outcome.rounds_used);
        hits += outcome.hit_target ? 1 : 0;
        rep.rows.push_back({s.name, policy_name(spec.policy), std::to_string(seed),
                            std::to_string(outcome.rounds_used),
                            detail::bool_cell(outcome.hit_target),
                            format_g6(outcome.loss_trace.back())});
    }

    std::vector<int> sorted = rounds;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    const double median = m % 2 ? sorted[m / 2]
                                : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    rep.add_meta("rounds_median", format_g6(median));
    rep.add_meta("rounds_min", std::to_string(sorted.front()));
    rep.add_meta("rounds_max", std::to_string(sorted.back()));
    rep.add_meta("hit_rate", format_g6(static_cast<double>(hits) / static_cast<double>(spec.seeds)));
    return rep;
}

}
