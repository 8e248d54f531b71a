// Acceptance gate: every release-blocking check in one binary, one verdict
// line per criterion. Exits nonzero if any criterion fails. An optional
// argv[1] naming the CLI binary enables the process-level determinism check.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fedcarbon/fedcarbon.hpp"
#include "helpers.hpp"

using namespace fedcarbon;
using testing_helpers::mnist_like_scenario;
using testing_helpers::random_scenario;
using testing_helpers::random_uniform_ci_scenario;

namespace {

// Pinned tolerances. Each criterion quotes the one it enforces.
constexpr double kTolBoundExact = 1e-9;      // closed-form round bounds (50, 25)
constexpr double kTolBoundRounded = 0.1;     // the 66.67 bound is quoted rounded
constexpr double kTolThresholdProduct = 2.0; // K_a*n thresholds vs 257 / 158
constexpr double kTolRequiredRatio = 0.15;   // EE_D/EE_U thresholds vs 2.88 / 1.92
constexpr double kTolCiLhs = 0.01;           // computing-condition lhs vs 1.516 / 2.95
constexpr double kTolPhi = 0.005;            // phi reproductions vs 0.356 / 0.173
constexpr double kTolAnnualRel = 0.02;       // annualized grams vs 400 / 2000
constexpr double kTolReduction = 1e-9;       // general vs simplified regions (relative)
constexpr double kTolGradient = 1e-4;        // analytic vs finite-difference gradient
constexpr double kTolConservation = 1e-9;    // gossip mean conservation (relative)
constexpr double kTolAdditivity = 1e-9;      // shard-weighted loss additivity (relative)
constexpr double kMinHitRate = 0.95;         // simulator convergence success rate
constexpr int kPropertyTrials = 1000;
constexpr int kSimSeeds = 24;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

double median_of(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

/// Fleet of identical devices whose only relevant trait is the data-to-model
/// bit ratio b(W)/b(E_k).
Scenario bit_ratio_fleet(int fleet, int k_active, double model_to_data_ratio) {
    Scenario s;
    DeviceProfile d;
    d.data_bits = 1e6;
    s.devices.assign(static_cast<std::size_t>(fleet), d);
    s.model.model_bits_override = model_to_data_ratio * 1e6;
    s.k_active = k_active;
    s.neighbors = 1;
    s.alpha = 1.0;
    return s;
}

/// Fleet where every device has compute ratio phi against the center and all
/// sites share one grid intensity.
Scenario phi_fleet(int fleet, int k_active, double phi) {
    Scenario s;
    DeviceProfile d;
    d.power_w = phi;
    d.batch_time_s = 1.0;
    d.batches_per_round = 1;
    d.carbon_intensity_g_per_j = 2.5e-4;
    s.devices.assign(static_cast<std::size_t>(fleet), d);
    s.center.power_w = 1.0;
    s.center.batch_time_s = 1.0;
    s.center.batches_per_round = 1;
    s.center.pue = 1.67;
    s.center.agg_fraction = 0.05;
    s.center.carbon_intensity_g_per_j = 2.5e-4;
    s.k_active = k_active;
    s.neighbors = 1;
    return s;
}

void zero_computing_terms(Scenario& s) {
    for (auto& d : s.devices) {
        d.power_w = 0.0;
        d.sleep_energy_j = 0.0;
    }
    s.center.power_w = 0.0;
    s.peripheral_energy_j = 0.0;
}

Outcome criterion_round_bounds() {
    const double b30 = max_sustainable_rounds(bit_ratio_fleet(30, 20, 0.03));
    const double b60 = max_sustainable_rounds(bit_ratio_fleet(60, 40, 0.03));
    const double b100 = max_sustainable_rounds(bit_ratio_fleet(100, 50, 0.03));
    const double b100_hi = max_sustainable_rounds(bit_ratio_fleet(100, 50, 0.08));
    const bool pass = std::abs(b30 - 50.0) <= kTolBoundExact &&
                      std::abs(b60 - 50.0) <= kTolBoundExact &&
                      std::abs(b100 - 66.67) <= kTolBoundRounded &&
                      std::abs(b100_hi - 25.0) <= kTolBoundExact;
    std::ostringstream d;
    d << "n_max " << format_g6(b30) << " / " << format_g6(b60) << " / " << format_g6(b100)
      << " / " << format_g6(b100_hi) << " vs 50 / 50 / 66.67+-" << kTolBoundRounded << " / 25";
    return {pass, d.str()};
}

Outcome criterion_continual_thresholds() {
    const CaseStudy cs = case_study_preset("HRI_CONTINUAL");
    const Scenario initial = apply_stage(cs.scenario, cs.plan, 0);
    const Scenario retrain = apply_stage(cs.scenario, cs.plan, 1);
    const double t_initial = max_sustainable_rounds(initial) * initial.k_active;
    const double t_retrain = max_sustainable_rounds(retrain) * retrain.k_active;
    const bool pass = std::abs(t_initial - 257.0) <= kTolThresholdProduct &&
                      std::abs(t_retrain - 158.0) <= kTolThresholdProduct;
    std::ostringstream d;
    d << "K_a*n < " << format_g6(t_initial) << " / " << format_g6(t_retrain)
      << " vs 257 / 158 +-" << kTolThresholdProduct;
    return {pass, d.str()};
}

Outcome criterion_du_thresholds() {
    const Scenario s = mnist_like_scenario();   // gamma = 1.5, EE_D/EE_U = 5
    const int n = 29;
    const double need_fa = du_required_ratio(Policy::FA, s, n);
    const double need_fad = du_required_ratio(Policy::FAD, s, n);
    const RegionVerdict fa = region_du(Policy::FA, s, n);
    const RegionVerdict fad = region_du(Policy::FAD, s, n);
    const bool pass = std::abs(need_fa - 2.88) <= kTolRequiredRatio &&
                      std::abs(need_fad - 1.92) <= kTolRequiredRatio && fa.holds && fad.holds;
    std::ostringstream d;
    d << "required EE_D/EE_U " << format_g6(need_fa) << " / " << format_g6(need_fad)
      << " vs 2.88 / 1.92 +-" << kTolRequiredRatio << "; at ratio 5 holds "
      << (fa.holds ? "true" : "false") << " / " << (fad.holds ? "true" : "false");
    return {pass, d.str()};
}

Outcome criterion_computing_condition() {
    const RegionVerdict small = region_ci(Policy::FAD, phi_fleet(9, 4, 0.36));
    const RegionVerdict large = region_ci(Policy::FAD, phi_fleet(25, 20, 0.14));
    const CaseStudy hri = case_study_preset("HRI_CONTINUAL");
    const CaseStudy rl = case_study_preset("RL_ROBOTS");
    const double phi_hri = phi_ratio(hri.scenario.devices.front(), hri.scenario.center);
    const double phi_rl = phi_ratio(rl.scenario.devices.front(), rl.scenario.center);
    const bool pass = std::abs(small.lhs - 1.516) <= kTolCiLhs && small.holds &&
                      std::abs(large.lhs - 2.95) <= kTolCiLhs && !large.holds &&
                      std::abs(phi_hri - 0.356) <= kTolPhi && std::abs(phi_rl - 0.173) <= kTolPhi;
    std::ostringstream d;
    d << "lhs " << format_g6(small.lhs) << " (<1.67 " << (small.holds ? "holds" : "fails")
      << ") / " << format_g6(large.lhs) << " (" << (large.holds ? "holds" : "fails")
      << "); phi " << format_g6(phi_hri) << " / " << format_g6(phi_rl);
    return {pass, d.str()};
}

Outcome criterion_annualization() {
    const double continual = annualize(1.1, 1.0);
    const double rl = annualize(5.4, 1.0);
    const bool pass = std::abs(continual - 401.5) <= 1e-9 &&
                      std::abs(continual - 400.0) / 400.0 <= kTolAnnualRel &&
                      std::abs(rl - 1971.0) <= 1e-9 &&
                      std::abs(rl - 2000.0) / 2000.0 <= kTolAnnualRel;
    std::ostringstream d;
    d << format_g6(continual) << " g/yr vs 400 g, " << format_g6(rl)
      << " g/yr vs 2000 g (rel tol " << kTolAnnualRel << ")";
    return {pass, d.str()};
}

Outcome criterion_oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    int disagreements = 0;
    for (int seed = 0; seed < kPropertyTrials; ++seed) {
        Scenario s = random_uniform_ci_scenario(static_cast<std::uint64_t>(seed));
        zero_computing_terms(s);
        Rng rng(derive_seed(static_cast<std::uint64_t>(seed), 0xAC));
        const int n = 1 + static_cast<int>(rng.bounded(120));
        const ActiveSchedule sched = round_robin_schedule(n, s.fleet_size(), s.k_active);

        const double cl = carbon_footprint(Policy::CL, s, n, sched).total_g();
        const double fa = carbon_footprint(Policy::FA, s, n, sched).total_g();
        const double fad = carbon_footprint(Policy::FAD, s, n, sched).total_g();
        const double cfa = carbon_footprint(Policy::CFA, s, n, sched).total_g();

        if (region_du(Policy::FA, s, n).holds != (fa < cl)) ++disagreements;
        if (region_du(Policy::FAD, s, n).holds != (fad < cl)) ++disagreements;
        if (region_su(s, n).holds != (cfa < cl)) ++disagreements;
        if (cfa_beats_fa_per_round(s, Policy::FA).holds != (cfa < fa)) ++disagreements;
    }
    const double dt = seconds_since(t0);
    std::ostringstream d;
    d << kPropertyTrials << " scenarios x 4 predicates, " << disagreements
      << " disagreements, " << format_g6(dt) << " s";
    return {disagreements == 0 && dt < 5.0, d.str()};
}

Outcome criterion_general_reduction() {
    const auto t0 = std::chrono::steady_clock::now();
    int violations = 0;
    double worst = 0.0;
    for (int seed = 0; seed < kPropertyTrials; ++seed) {
        const Scenario s = random_uniform_ci_scenario(static_cast<std::uint64_t>(seed));
        Rng rng(derive_seed(static_cast<std::uint64_t>(seed), 0xAD));
        const int n = 1 + static_cast<int>(rng.bounded(120));

        const std::pair<RegionVerdict, RegionVerdict> pairs[] = {
            {region_du_general(Policy::FA, s, n), region_du(Policy::FA, s, n)},
            {region_du_general(Policy::FAD, s, n), region_du(Policy::FAD, s, n)},
            {region_su_general(s, n), region_su(s, n)},
        };
        for (const auto& [general, simple] : pairs) {
            const double err = std::max(rel_diff(general.lhs, simple.lhs),
                                        rel_diff(general.rhs, simple.rhs));
            worst = std::max(worst, err);
            if (err > kTolReduction || general.holds != simple.holds) ++violations;
        }
    }
    const double dt = seconds_since(t0);
    std::ostringstream d;
    d << kPropertyTrials << " uniform-CI scenarios, worst rel diff " << format_g6(worst)
      << " (tol " << kTolReduction << "), " << format_g6(dt) << " s";
    return {violations == 0 && dt < 5.0, d.str()};
}

Outcome criterion_sleep_dominance() {
    const auto t0 = std::chrono::steady_clock::now();
    int violations = 0;
    for (int seed = 0; seed < kPropertyTrials; ++seed) {
        Scenario s = random_scenario(static_cast<std::uint64_t>(seed));
        for (auto& d : s.devices) d.sleep_energy_j = std::min(d.sleep_energy_j, round_energy(d));
        const ActiveSchedule sched = round_robin_schedule(1, s.fleet_size(), s.k_active);
        const double fa = energy_fa(s, 1, sched).total_j();
        const double fad = energy_fad(s, 1, sched).total_j();
        if (!(fad <= fa * (1.0 + 1e-12) + 1e-12)) ++violations;

        // Equality exactly at K_a = K with sleep = active.
        Scenario eq = s;
        eq.k_active = eq.fleet_size();
        for (auto& d : eq.devices) d.sleep_energy_j = round_energy(d);
        const ActiveSchedule all = round_robin_schedule(1, eq.fleet_size(), eq.k_active);
        if (rel_diff(energy_fad(eq, 1, all).total_j(), energy_fa(eq, 1, all).total_j()) > 1e-12)
            ++violations;

        // Strict once some device actually sleeps through the round.
        Scenario lt = s;
        lt.k_active = std::min(lt.k_active, lt.fleet_size() - 1);
        for (auto& d : lt.devices) d.sleep_energy_j = 0.5 * round_energy(d);
        const ActiveSchedule part = round_robin_schedule(1, lt.fleet_size(), lt.k_active);
        if (!(energy_fad(lt, 1, part).total_j() < energy_fa(lt, 1, part).total_j())) ++violations;
    }
    const double dt = seconds_since(t0);
    std::ostringstream d;
    d << kPropertyTrials << " scenarios, " << violations << " violations, " << format_g6(dt)
      << " s";
    return {violations == 0 && dt < 5.0, d.str()};
}

Outcome criterion_simulator_convergence() {
    const auto t0 = std::chrono::steady_clock::now();

    Scenario s;
    s.devices.assign(10, DeviceProfile{});
    s.k_active = 5;
    s.neighbors = 1;

    ModelShape shape;
    shape.kind = ModelKind::SoftmaxLinear;
    shape.classes = 3;
    shape.dim = 2;

    TrainingHyper hyper;
    hyper.step_size = 0.1;
    hyper.target_loss = 0.3;
    hyper.max_rounds = 200;
    hyper.local_epochs = 1;
    hyper.batch_size = 32;

    RunOptions iid;
    RunOptions skew;
    skew.partition.mode = PartitionMode::LabelSkew;
    skew.partition.classes_per_device = 2;

    int fa_hits = 0;
    std::vector<int> fa_rounds, fad_rounds, skew_rounds;
    for (int i = 0; i < kSimSeeds; ++i) {
        const std::uint64_t seed = 1 + static_cast<std::uint64_t>(i);
        const Dataset ds = make_synthetic_dataset(3, 2, 200, 3.0, seed);
        const TrainingOutcome fa = run_training(Policy::FA, s, ds, shape, hyper, iid, seed);
        const TrainingOutcome fad = run_training(Policy::FAD, s, ds, shape, hyper, iid, seed);
        const TrainingOutcome sk = run_training(Policy::FA, s, ds, shape, hyper, skew, seed);
        fa_hits += fa.hit_target ? 1 : 0;
        fa_rounds.push_back(fa.rounds_used);
        fad_rounds.push_back(fad.rounds_used);
        skew_rounds.push_back(sk.rounds_used);
    }
    const double hit_rate = static_cast<double>(fa_hits) / kSimSeeds;
    const double med_fa = median_of(fa_rounds);
    const double med_fad = median_of(fad_rounds);
    const double med_skew = median_of(skew_rounds);
    const double dt = seconds_since(t0);

    const bool pass = hit_rate >= kMinHitRate && med_fad >= med_fa && med_skew >= med_fa &&
                      dt < 120.0;
    std::ostringstream d;
    d << kSimSeeds << " seeds: FA hit rate " << format_g6(hit_rate) << " (need >= "
      << kMinHitRate << "), median rounds FA " << format_g6(med_fa) << " / FA-D "
      << format_g6(med_fad) << " / label-skew " << format_g6(med_skew) << ", " << format_g6(dt)
      << " s";
    return {pass, d.str()};
}

Outcome criterion_numerical_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream d;
    bool pass = true;

    // Analytic gradients against central finite differences.
    double worst_grad = 0.0;
    {
        const Dataset ds = make_synthetic_dataset(3, 4, 25, 2.0, 77);
        std::vector<int> idx(static_cast<std::size_t>(ds.size()));
        std::iota(idx.begin(), idx.end(), 0);
        for (const ModelKind kind : {ModelKind::SoftmaxLinear, ModelKind::OneHiddenLayer}) {
            ModelShape shape;
            shape.kind = kind;
            shape.classes = 3;
            shape.dim = 4;
            shape.hidden = 8;
            Rng rng(derive_seed(77, kind == ModelKind::SoftmaxLinear ? 1 : 2));
            std::vector<double> w(static_cast<std::size_t>(shape.param_count()));
            for (auto& v : w) v = rng.uniform(-0.5, 0.5);
            std::vector<double> grad;
            mean_loss_and_grad(shape, w, ds, idx, grad);
            const double h = 1e-6;
            for (std::size_t i = 0; i < w.size(); ++i) {
                std::vector<double> wp = w, wm = w;
                wp[i] += h;
                wm[i] -= h;
                const double fd =
                    (mean_loss(shape, wp, ds, idx) - mean_loss(shape, wm, ds, idx)) / (2.0 * h);
                worst_grad =
                    std::max(worst_grad, std::abs(fd - grad[i]) / std::max(1.0, std::abs(grad[i])));
            }
        }
        pass = pass && worst_grad < kTolGradient;
    }

    // Equal-weight full-mesh gossip preserves the fleet mean.
    double worst_mean = 0.0;
    {
        const int nodes = 6, dims = 20;
        Rng rng(derive_seed(123, 9));
        std::vector<Params> fleet(nodes);
        for (auto& p : fleet) {
            p.values.resize(dims);
            for (auto& v : p.values) v = rng.uniform(-5.0, 5.0);
        }
        std::vector<Params> mixed(nodes);
        for (int k = 0; k < nodes; ++k) {
            std::vector<Params> others;
            std::vector<std::int64_t> counts;
            for (int h = 0; h < nodes; ++h)
                if (h != k) {
                    others.push_back(fleet[static_cast<std::size_t>(h)]);
                    counts.push_back(100);
                }
            mixed[static_cast<std::size_t>(k)] =
                consensus_step(k, fleet[static_cast<std::size_t>(k)], others, counts);
        }
        for (int i = 0; i < dims; ++i) {
            double before = 0.0, after = 0.0;
            for (int k = 0; k < nodes; ++k) {
                before += fleet[static_cast<std::size_t>(k)].values[static_cast<std::size_t>(i)];
                after += mixed[static_cast<std::size_t>(k)].values[static_cast<std::size_t>(i)];
            }
            worst_mean = std::max(worst_mean, rel_diff(before, after));
        }
        pass = pass && worst_mean < kTolConservation;
    }

    // Aggregation is exactly permutation invariant.
    bool perm_exact = true;
    {
        Rng rng(derive_seed(123, 10));
        std::vector<Params> models(6);
        std::vector<std::int64_t> counts = {3, 1, 4, 1, 5, 9};
        for (auto& p : models) {
            p.values.resize(12);
            for (auto& v : p.values) v = rng.uniform(-2.0, 2.0);
        }
        const std::vector<std::size_t> perm = {5, 2, 0, 4, 1, 3};
        std::vector<Params> pm;
        std::vector<std::int64_t> pc;
        for (std::size_t i : perm) {
            pm.push_back(models[i]);
            pc.push_back(counts[i]);
        }
        perm_exact = fa_aggregate(models, counts).values == fa_aggregate(pm, pc).values;
        pass = pass && perm_exact;
    }

    // Mean loss decomposes over disjoint shards with example-count weights.
    double worst_add = 0.0;
    {
        const Dataset ds = make_synthetic_dataset(3, 2, 60, 2.5, 31);
        ModelShape shape;
        shape.kind = ModelKind::SoftmaxLinear;
        shape.classes = 3;
        shape.dim = 2;
        Rng rng(derive_seed(31, 3));
        std::vector<double> w(static_cast<std::size_t>(shape.param_count()));
        for (auto& v : w) v = rng.uniform(-1.0, 1.0);
        std::vector<int> all(static_cast<std::size_t>(ds.size()));
        std::iota(all.begin(), all.end(), 0);
        const double total = mean_loss(shape, w, ds, all);
        const std::vector<Shard> shards = partition(ds, 6, PartitionSpec{}, 5);
        double weighted = 0.0;
        for (const Shard& sh : shards)
            weighted += (static_cast<double>(sh.size()) / ds.size()) *
                        mean_loss(shape, w, ds, sh.indices);
        worst_add = rel_diff(total, weighted);
        pass = pass && worst_add < kTolAdditivity;
    }

    const double dt = seconds_since(t0);
    pass = pass && dt < 30.0;
    d << "grad rel " << format_g6(worst_grad) << ", mean drift " << format_g6(worst_mean)
      << ", permutation " << (perm_exact ? "exact" : "BROKEN") << ", additivity "
      << format_g6(worst_add) << ", " << format_g6(dt) << " s";
    return {pass, d.str()};
}

Outcome criterion_determinism(const char* cli_path) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::ostringstream d;

    {
        const Scenario s = mnist_like_scenario();
        SweepSpec spec;
        spec.parameter = "k_active";
        spec.grid = {5, 10, 15, 20};
        spec.policies = {Policy::FAD};
        spec.rounds = 29;
        const Report a = cmd_sweep(s, spec);
        const Report b = cmd_sweep(s, spec);
        pass = pass && to_csv(a) == to_csv(b) && to_json_text(a) == to_json_text(b);
    }
    {
        Scenario s;
        s.devices.assign(5, DeviceProfile{});
        s.k_active = 3;
        s.neighbors = 2;
        SimulateSpec spec;
        spec.policy = Policy::FAD;
        spec.per_class = 60;
        spec.hyper.target_loss = 0.4;
        spec.hyper.max_rounds = 30;
        spec.seeds = 4;
        spec.base_seed = 11;
        const Report a = cmd_simulate(s, spec);
        const Report b = cmd_simulate(s, spec);
        pass = pass && to_csv(a) == to_csv(b) && to_json_text(a) == to_json_text(b);
    }
    d << "in-process sweep+simulate byte-identical: " << (pass ? "yes" : "no");

    if (cli_path != nullptr) {
        const auto tmp = std::filesystem::temp_directory_path();
        auto slurp = [](const std::filesystem::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            return buf.str();
        };
        auto run_twice = [&](const std::string& args, const char* stem) {
            const std::filesystem::path f1 = tmp / (std::string(stem) + "_1.csv");
            const std::filesystem::path f2 = tmp / (std::string(stem) + "_2.csv");
            const std::string base = std::string("\"") + cli_path + "\" " + args + " --out ";
            if (std::system((base + f1.string()).c_str()) != 0) return false;
            if (std::system((base + f2.string()).c_str()) != 0) return false;
            const std::string a = slurp(f1), b = slurp(f2);
            std::filesystem::remove(f1);
            std::filesystem::remove(f2);
            return !a.empty() && a == b;
        };
        const bool sweep_ok = run_twice(
            "sweep --preset HRI_CONTINUAL --param k_active --values 1 3 5 7 9 --policy fad "
            "--rounds 40",
            "fedcarbon_acc_sweep");
        const bool sim_ok = run_twice(
            "simulate --preset RL_ROBOTS --policy cfa --seeds 3 --target-loss 0.4 "
            "--max-rounds 12",
            "fedcarbon_acc_sim");
        pass = pass && sweep_ok && sim_ok;
        d << "; CLI runs byte-identical: " << (sweep_ok && sim_ok ? "yes" : "no");
    } else {
        d << "; CLI binary not given, process-level check skipped";
    }

    const double dt = seconds_since(t0);
    pass = pass && dt < 60.0;
    d << ", " << format_g6(dt) << " s";
    return {pass, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const char* cli_path = argc > 1 ? argv[1] : nullptr;
    int failures = 0;
    const auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %2d. %s — %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    };

    report(1, "sustainable round budgets", criterion_round_bounds);
    report(2, "continual-deployment K_a*n thresholds", criterion_continual_thresholds);
    report(3, "downlink/uplink efficiency thresholds", criterion_du_thresholds);
    report(4, "computing-carbon condition and phi ratios", criterion_computing_condition);
    report(5, "annualized retraining footprint", criterion_annualization);
    report(6, "region predicates match footprint comparisons", criterion_oracle_equivalence);
    report(7, "general regions reduce under uniform intensity", criterion_general_reduction);
    report(8, "deep sleep never raises the per-round footprint", criterion_sleep_dominance);
    report(9, "simulator convergence and partition ordering", criterion_simulator_convergence);
    report(10, "numerical identities", criterion_numerical_suite);
    report(11, "byte-identical reports", [&] { return criterion_determinism(cli_path); });

    std::printf("acceptance: %d/11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
