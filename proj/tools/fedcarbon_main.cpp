#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fedcarbon/commands.hpp"
#include "fedcarbon/scenario_io.hpp"
#include "fedcarbon/version.hpp"

// fedcarbon: energy/carbon accounting for centralized and federated training
// policies, sustainability-region analysis, parameter sweeps, and a
// deterministic training simulator.

namespace {

struct CommonArgs {
    std::string scenario_path;
    std::string preset;
    std::string format = "csv";
    std::string out;
    bool compose_sidelink = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    auto* file = cmd->add_option("--scenario", args.scenario_path, "Scenario JSON file");
    auto* preset = cmd->add_option("--preset", args.preset,
                                   "Built-in scenario preset (HRI_CONTINUAL, RL_ROBOTS)");
    file->excludes(preset);
    cmd->add_option("--format", args.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", args.out, "Write the report to this file instead of stdout");
    cmd->add_flag("--compose-sidelink", args.compose_sidelink,
                  "Derive a sidelink efficiency from uplink+downlink when the profile has none");
}

fedcarbon::ParsedScenario load_scenario(const CommonArgs& args) {
    if (!args.scenario_path.empty()) return fedcarbon::parse_scenario(args.scenario_path);
    if (!args.preset.empty()) {
        fedcarbon::CaseStudy cs = fedcarbon::case_study_preset(args.preset);
        return {cs.scenario, cs.plan};
    }
    throw fedcarbon::ConfigError("give --scenario FILE or --preset NAME");
}

std::vector<fedcarbon::Policy> parse_policies(const std::vector<std::string>& names) {
    std::vector<fedcarbon::Policy> out;
    if (names.empty()) {
        out = {fedcarbon::Policy::CL, fedcarbon::Policy::FA, fedcarbon::Policy::FAD,
               fedcarbon::Policy::CFA};
        return out;
    }
    for (const auto& name : names) out.push_back(fedcarbon::parse_policy(name));
    return out;
}

void emit(const fedcarbon::Report& rep, const CommonArgs& args) {
    const std::string text =
        args.format == "json" ? fedcarbon::to_json_text(rep) : fedcarbon::to_csv(rep);
    if (args.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw fedcarbon::ConfigError("cannot write report file: " + args.out);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy and carbon accounting for centralized and federated training"};
    app.set_version_flag("--version", std::string("fedcarbon ") + fedcarbon::version);
    app.require_subcommand(1);

    // footprint
    CommonArgs fp_args;
    std::vector<std::string> fp_policies;
    int fp_rounds = 0;
    bool fp_stages = false;
    auto* fp = app.add_subcommand("footprint", "Carbon breakdown per policy for a round budget");
    add_common(fp, fp_args);
    fp->add_option("--policy", fp_policies, "Policy to evaluate (repeatable; default: all)")
        ->check(CLI::IsMember({"cl", "fa", "fad", "fa-d", "cfa"}, CLI::ignore_case));
    auto* fp_rounds_opt = fp->add_option("--rounds", fp_rounds, "Training rounds n");
    fp->add_flag("--stages", fp_stages,
                 "Evaluate the scenario's stage plan instead of a single round budget");

    // regions
    CommonArgs rg_args;
    int rg_rounds = 0;
    auto* rg = app.add_subcommand("regions", "Sustainability-region verdicts at a round budget");
    add_common(rg, rg_args);
    rg->add_option("--rounds", rg_rounds, "Training rounds n")->required();

    // sweep
    CommonArgs sw_args;
    std::vector<std::string> sw_policies;
    std::string sw_param;
    std::vector<double> sw_values;
    int sw_rounds = 0;
    auto* sw = app.add_subcommand("sweep", "Footprints over a one-parameter grid");
    add_common(sw, sw_args);
    sw->add_option("--param", sw_param, "Swept parameter")
        ->check(CLI::IsMember({"k_active", "ee_ul", "ee_dl", "ee_sl", "rounds", "model_bits"}))
        ->required();
    sw->add_option("--values", sw_values, "Grid values, strictly increasing")
        ->required()
        ->delimiter(',');
    sw->add_option("--policy", sw_policies, "Policy to evaluate (repeatable; default: all)")
        ->check(CLI::IsMember({"cl", "fa", "fad", "fa-d", "cfa"}, CLI::ignore_case));
    auto* sw_rounds_opt = sw->add_option("--rounds", sw_rounds, "Training rounds n");

    // simulate
    CommonArgs sm_args;
    fedcarbon::SimulateSpec sm;
    std::string sm_policy = "fa";
    std::string sm_model = "linear";
    std::string sm_partition = "iid";
    std::string sm_order = "mix-first";
    int sm_cpd = 2;
    long long sm_base_seed = 1;
    auto* sim = app.add_subcommand("simulate", "Deterministic training runs to a target loss");
    add_common(sim, sm_args);
    sim->add_option("--policy", sm_policy, "Training policy")
        ->check(CLI::IsMember({"cl", "fa", "fad", "fa-d", "cfa"}, CLI::ignore_case))
        ->capture_default_str();
    sim->add_option("--seeds", sm.seeds, "Number of consecutive seeds to run")
        ->capture_default_str();
    sim->add_option("--seed", sm_base_seed, "First seed")->capture_default_str();
    sim->add_option("--classes", sm.classes, "Synthetic classes")->capture_default_str();
    sim->add_option("--dim", sm.dim, "Feature dimension")->capture_default_str();
    sim->add_option("--per-class", sm.per_class, "Examples per class")->capture_default_str();
    sim->add_option("--separation", sm.separation, "Cluster separation in sigmas")
        ->capture_default_str();
    sim->add_option("--model", sm_model, "Classifier family")
        ->check(CLI::IsMember({"linear", "mlp"}))
        ->capture_default_str();
    sim->add_option("--hidden", sm.hidden, "Hidden units (mlp)")->capture_default_str();
    sim->add_option("--payload-overhead", sm.payload_overhead,
                    "Serialization overhead factor on the model payload")
        ->capture_default_str();
    sim->add_option("--step-size", sm.hyper.step_size, "SGD step size")->capture_default_str();
    sim->add_option("--proximal", sm.hyper.proximal_weight,
                    "Proximal pull toward the round-start model")
        ->capture_default_str();
    sim->add_option("--target-loss", sm.hyper.target_loss, "Stop at this validation loss")
        ->capture_default_str();
    sim->add_option("--max-rounds", sm.hyper.max_rounds, "Round budget")->capture_default_str();
    sim->add_option("--local-epochs", sm.hyper.local_epochs, "Local epochs per round")
        ->capture_default_str();
    sim->add_option("--batch-size", sm.hyper.batch_size, "Mini-batch size")
        ->capture_default_str();
    sim->add_option("--partition", sm_partition, "Shard assignment")
        ->check(CLI::IsMember({"iid", "label_skew"}))
        ->capture_default_str();
    sim->add_option("--classes-per-device", sm_cpd, "Classes per device under label_skew")
        ->capture_default_str();
    sim->add_option("--validation-fraction", sm.options.validation_fraction,
                    "Held-out fraction for the stopping rule")
        ->capture_default_str();
    sim->add_option("--cfa-order", sm_order, "CFA round order")
        ->check(CLI::IsMember({"mix-first", "optimize-first"}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (fp->parsed()) {
            const auto input = load_scenario(fp_args);
            fedcarbon::Report rep;
            if (fp_stages) {
                if (!input.plan)
                    throw fedcarbon::ConfigError("--stages needs a scenario with a stage plan");
                rep = fedcarbon::cmd_continual(input.scenario, *input.plan,
                                               fp_args.compose_sidelink);
            } else {
                if (fp_rounds_opt->count() == 0)
                    throw fedcarbon::ConfigError("--rounds is required (or use --stages)");
                rep = fedcarbon::cmd_footprint(input.scenario, parse_policies(fp_policies),
                                               fp_rounds, fp_args.compose_sidelink);
            }
            emit(rep, fp_args);
        } else if (rg->parsed()) {
            const auto input = load_scenario(rg_args);
            emit(fedcarbon::cmd_regions(input.scenario, rg_rounds, rg_args.compose_sidelink),
                 rg_args);
        } else if (sw->parsed()) {
            const auto input = load_scenario(sw_args);
            fedcarbon::SweepSpec spec;
            spec.parameter = sw_param;
            spec.grid = sw_values;
            spec.policies = parse_policies(sw_policies);
            spec.compose_sidelink = sw_args.compose_sidelink;
            if (sw_rounds_opt->count())
                spec.rounds = sw_rounds;
            else if (sw_param != "rounds")
                throw fedcarbon::ConfigError("--rounds is required unless sweeping rounds");
            emit(fedcarbon::cmd_sweep(input.scenario, spec), sw_args);
        } else if (sim->parsed()) {
            const auto input = load_scenario(sm_args);
            sm.policy = fedcarbon::parse_policy(sm_policy);
            sm.model_kind = sm_model == "mlp" ? fedcarbon::ModelKind::OneHiddenLayer
                                              : fedcarbon::ModelKind::SoftmaxLinear;
            sm.options.partition.mode = sm_partition == "label_skew"
                                            ? fedcarbon::PartitionMode::LabelSkew
                                            : fedcarbon::PartitionMode::IID;
            sm.options.partition.classes_per_device = sm_cpd;
            sm.options.cfa_order = sm_order == "optimize-first"
                                       ? fedcarbon::CfaOrder::OptimizeThenMix
                                       : fedcarbon::CfaOrder::MixThenOptimize;
            if (sm_base_seed < 0) throw fedcarbon::ConfigError("--seed must be >= 0");
            sm.base_seed = static_cast<std::uint64_t>(sm_base_seed);
            emit(fedcarbon::cmd_simulate(input.scenario, sm), sm_args);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
