#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fedcarbon/dataset.hpp"
#include "fedcarbon/error.hpp"
#include "fedcarbon/model.hpp"
#include "fedcarbon/policy.hpp"
#include "fedcarbon/profiles.hpp"
#include "fedcarbon/rng.hpp"
#include "fedcarbon/schedule.hpp"

// Desk-scale training simulator. Produces rounds-to-target-loss, loss traces,
// and the activation schedule that the energy and carbon models consume.

namespace fedcarbon {

/// Flat parameter vector tagged with the round that produced it.
struct Params {
    std::vector<double> values;
    int round = 0;
};

struct TrainingHyper {
    double step_size = 0.1;
    double proximal_weight = 0.0;   // pull toward the round-start model
    double target_loss = 0.0;       // stop once validation loss <= this
    int max_rounds = 1;
    int local_epochs = 1;
    int batch_size = 32;
};

inline void check_hyper(const TrainingHyper& h) {
    if (!(h.step_size > 0.0)) throw std::invalid_argument("TrainingHyper: step_size must be > 0");
    if (h.proximal_weight < 0.0) throw std::invalid_argument("TrainingHyper: proximal_weight must be >= 0");
    if (h.max_rounds < 1) throw std::invalid_argument("TrainingHyper: max_rounds must be >= 1");
    if (h.local_epochs < 1) throw std::invalid_argument("TrainingHyper: local_epochs must be >= 1");
    if (h.batch_size < 1) throw std::invalid_argument("TrainingHyper: batch_size must be >= 1");
}

/// Wire size in bits of one model payload: 32-bit parameters times a
/// serialization-overhead factor (1.0 = bare weights).
inline double model_payload_bits(const ModelShape& shape, double overhead_factor = 1.0) {
    if (!(overhead_factor > 0.0))
        throw std::domain_error("model_payload_bits: overhead_factor must be > 0");
    return static_cast<double>(shape.param_count()) * 32.0 * overhead_factor;
}

/// Example-count-weighted average of uploaded models. Terms are sorted per
/// coordinate before summation so any permutation of the input list produces
/// bit-identical output.
inline Params fa_aggregate(const std::vector<Params>& models, const std::vector<std::int64_t>& counts) {
    if (models.empty()) throw std::invalid_argument("fa_aggregate: empty model list");
    if (counts.size() != models.size())
        throw std::invalid_argument("fa_aggregate: one count per model required");
    const std::size_t width = models.front().values.size();
    std::int64_t total = 0;
    int round = models.front().round;
    for (std::size_t k = 0; k < models.size(); ++k) {
        if (models[k].values.size() != width)
            throw std::invalid_argument("fa_aggregate: model shapes disagree");
        if (counts[k] < 0) throw std::invalid_argument("fa_aggregate: negative example count");
        total += counts[k];
        round = std::max(round, models[k].round);
    }
    if (total == 0) throw std::domain_error("fa_aggregate: total example count is zero");

    Params out;
    out.round = round;
    out.values.assign(width, 0.0);
    std::vector<double> terms(models.size());
    for (std::size_t i = 0; i < width; ++i) {
        for (std::size_t k = 0; k < models.size(); ++k) {
            const double share = static_cast<double>(counts[k]) / static_cast<double>(total);
            terms[k] = share * models[k].values[i];
        }
        std::sort(terms.begin(), terms.end());
        double acc = 0.0;
        for (double t : terms) acc += t;
        out.values[i] = acc;
    }
    return out;
}

/// One gossip update for device k: W_k += sum_h share_h (W_h - W_k), with
/// share_h the neighbor's fraction of the neighborhood's examples. Shares sum
/// to one, so a single neighbor replaces the model outright.
inline Params consensus_step(int k, const Params& own, const std::vector<Params>& neighbor_models,
                             const std::vector<std::int64_t>& neighbor_counts) {
    if (neighbor_models.empty())
        throw std::invalid_argument("consensus_step: device " + std::to_string(k) + " has an empty neighbor set");
    if (neighbor_counts.size() != neighbor_models.size())
        throw std::invalid_argument("consensus_step: one count per neighbor required");
    std::int64_t total = 0;
    for (std::size_t h = 0; h < neighbor_models.size(); ++h) {
        if (neighbor_models[h].values.size() != own.values.size())
            throw std::invalid_argument("consensus_step: model shapes disagree");
        if (neighbor_counts[h] < 0) throw std::invalid_argument("consensus_step: negative example count");
        total += neighbor_counts[h];
    }
    if (total == 0) throw std::domain_error("consensus_step: neighborhood example count is zero");

    Params out = own;
    for (std::size_t h = 0; h < neighbor_models.size(); ++h) {
        const double share = static_cast<double>(neighbor_counts[h]) / static_cast<double>(total);
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] += share * (neighbor_models[h].values[i] - own.values[i]);
    }
    return out;
}

/// Local mini-batch SGD for one round. Restarts from the broadcast model
/// (`global`), which also anchors the proximal pull; `local` is the device's
/// previous model and only needs a matching shape.
inline Params local_optimize(const Params& local, const Params& global, const Dataset& ds,
                             const Shard& shard, const ModelShape& shape,
                             const TrainingHyper& hyper, Rng& rng) {
    check_hyper(hyper);
    if (local.values.size() != global.values.size())
        throw std::invalid_argument("local_optimize: model shapes disagree");
    if (static_cast<std::int64_t>(global.values.size()) != shape.param_count())
        throw std::invalid_argument("local_optimize: parameter vector does not match the model shape");
    if (shard.indices.empty()) throw std::invalid_argument("local_optimize: empty shard");

    Params out;
    out.values = global.values;
    out.round = global.round + 1;
    std::vector<int> order = shard.indices;
    std::vector<double> grad;
    for (int epoch = 0; epoch < hyper.local_epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t pos = 0; pos < order.size(); pos += static_cast<std::size_t>(hyper.batch_size)) {
            const std::size_t take = std::min(static_cast<std::size_t>(hyper.batch_size), order.size() - pos);
            const double loss = objective_and_grad(shape, out.values, global.values,
                                                   hyper.proximal_weight, ds,
                                                   std::span<const int>(order.data() + pos, take), grad);
            if (!std::isfinite(loss)) throw DivergedError(global.round);
            for (std::size_t i = 0; i < out.values.size(); ++i)
                out.values[i] -= hyper.step_size * grad[i];
        }
    }
    for (double v : out.values)
        if (!std::isfinite(v)) throw DivergedError(global.round);
    return out;
}

enum class CfaOrder { MixThenOptimize, OptimizeThenMix };

struct RunOptions {
    PartitionSpec partition{};
    double validation_fraction = 0.2;
    CfaOrder cfa_order = CfaOrder::MixThenOptimize;
};

/// One gossip round: which device published and who consumed the model.
struct CfaRound {
    int publisher = -1;
    std::vector<int> subscribers;
};

struct TrainingOutcome {
    int rounds_used = 0;
    bool hit_target = false;
    std::vector<double> loss_trace;
    ActiveSchedule schedule;
    std::vector<CfaRound> neighbor_history;   // CFA only
};

namespace detail {

inline Dataset subset(const Dataset& ds, const std::vector<int>& idx) {
    Dataset out;
    out.classes = ds.classes;
    out.dim = ds.dim;
    out.seed = ds.seed;
    out.labels.reserve(idx.size());
    out.features.reserve(idx.size() * static_cast<std::size_t>(ds.dim));
    for (int i : idx) {
        out.labels.push_back(ds.labels[static_cast<std::size_t>(i)]);
        const double* x = ds.example(i);
        out.features.insert(out.features.end(), x, x + ds.dim);
    }
    return out;
}

}  // namespace detail

/// Runs one training job to the target validation loss or max_rounds.
/// Deterministic: the seed fixes the validation split, the partition, the
/// initial parameters, and every device's per-round batch order.
inline TrainingOutcome run_training(Policy policy, const Scenario& s, const Dataset& ds,
                                    const ModelShape& shape, const TrainingHyper& hyper,
                                    const RunOptions& opts, std::uint64_t seed) {
    check_hyper(hyper);
    const int fleet = s.fleet_size();
    if (fleet < 1) throw std::invalid_argument("run_training: scenario has no devices");
    if (s.k_active < 1 || s.k_active > fleet)
        throw std::invalid_argument("run_training: k_active must lie in [1, fleet size]");
    if (ds.classes != shape.classes || ds.dim != shape.dim)
        throw std::invalid_argument("run_training: dataset and model shapes disagree");
    if (s.model.param_count > 0 && s.model.param_count != shape.param_count())
        throw std::invalid_argument("run_training: scenario model size disagrees with the simulator shape");
    if (!(opts.validation_fraction >= 0.0 && opts.validation_fraction < 1.0))
        throw std::invalid_argument("run_training: validation_fraction must lie in [0, 1)");

    // Held-out pooled validation split; the remainder is sharded across devices.
    std::vector<int> order(static_cast<std::size_t>(ds.size()));
    std::iota(order.begin(), order.end(), 0);
    Rng split_rng(derive_seed(seed, 1));
    split_rng.shuffle(order);
    const int val_n = static_cast<int>(std::llround(opts.validation_fraction * ds.size()));
    std::vector<int> val_idx(order.begin(), order.begin() + val_n);
    std::vector<int> train_idx(order.begin() + val_n, order.end());
    std::sort(val_idx.begin(), val_idx.end());
    std::sort(train_idx.begin(), train_idx.end());
    if (train_idx.empty()) throw std::invalid_argument("run_training: no training examples left");
    const std::vector<int>& eval_idx = val_idx.empty() ? train_idx : val_idx;

    const Dataset train = detail::subset(ds, train_idx);
    const std::vector<Shard> shards = partition(train, fleet, opts.partition, derive_seed(seed, 2));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(fleet));
    for (int k = 0; k < fleet; ++k) counts[static_cast<std::size_t>(k)] = shards[static_cast<std::size_t>(k)].size();

    Shard pooled;
    pooled.indices.resize(static_cast<std::size_t>(train.size()));
    std::iota(pooled.indices.begin(), pooled.indices.end(), 0);

    Rng init_rng(derive_seed(seed, 3));
    Params global{init_params(shape, init_rng), 0};
    std::vector<Params> locals;
    if (policy == Policy::CFA) locals.assign(static_cast<std::size_t>(fleet), global);

    TrainingHyper central = hyper;
    central.proximal_weight = 0.0;   // the pooled baseline is plain SGD

    auto device_rng = [&](int t, int k) { return Rng(derive_seed(seed, 4, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(k))); };

    TrainingOutcome out;
    for (int t = 0; t < hyper.max_rounds; ++t) {
        const std::vector<int> active = schedule_active(t, fleet, s.k_active);
        out.schedule.rounds.push_back(active);
        std::vector<char> is_active(static_cast<std::size_t>(fleet), 0);
        for (int k : active) is_active[static_cast<std::size_t>(k)] = 1;
        global.round = t;

        Params candidate;
        switch (policy) {
            case Policy::CL: {
                Rng rng = device_rng(t, 0);
                global = local_optimize(global, global, train, pooled, shape, central, rng);
                candidate = global;
                break;
            }
            case Policy::FA:
            case Policy::FAD: {
                std::vector<Params> uploads;
                std::vector<std::int64_t> upload_counts;
                for (int k = 0; k < fleet; ++k) {
                    if (policy == Policy::FAD && !is_active[static_cast<std::size_t>(k)]) continue;
                    Rng rng = device_rng(t, k);
                    Params m = shards[static_cast<std::size_t>(k)].indices.empty()
                                   ? Params{global.values, t + 1}
                                   : local_optimize(global, global, train, shards[static_cast<std::size_t>(k)], shape, hyper, rng);
                    if (is_active[static_cast<std::size_t>(k)]) {
                        uploads.push_back(std::move(m));
                        upload_counts.push_back(counts[static_cast<std::size_t>(k)]);
                    }
                }
                std::int64_t uploaded = std::accumulate(upload_counts.begin(), upload_counts.end(), std::int64_t{0});
                if (uploaded > 0) global = fa_aggregate(uploads, upload_counts);
                global.round = t + 1;
                candidate = global;
                break;
            }
            case Policy::CFA: {
                CfaRound log;
                log.publisher = active.front();
                log.subscribers.assign(active.begin() + 1, active.end());
                const std::int64_t pub_count = counts[static_cast<std::size_t>(log.publisher)];
                auto mix = [&]() {
                    if (pub_count == 0) return;
                    const Params snapshot = locals[static_cast<std::size_t>(log.publisher)];
                    for (int sub : log.subscribers)
                        locals[static_cast<std::size_t>(sub)] =
                            consensus_step(sub, locals[static_cast<std::size_t>(sub)], {snapshot}, {pub_count});
                };
                if (opts.cfa_order == CfaOrder::MixThenOptimize) mix();
                for (int k : active) {
                    Params& own = locals[static_cast<std::size_t>(k)];
                    own.round = t;
                    if (shards[static_cast<std::size_t>(k)].indices.empty()) {
                        own.round = t + 1;
                        continue;
                    }
                    Rng rng = device_rng(t, k);
                    own = local_optimize(own, own, train, shards[static_cast<std::size_t>(k)], shape, hyper, rng);
                }
                if (opts.cfa_order == CfaOrder::OptimizeThenMix) mix();
                out.neighbor_history.push_back(std::move(log));
                candidate = fa_aggregate(locals, counts);   // fleet-average view of the gossip state
                break;
            }
        }

        const double loss = mean_loss(shape, candidate.values, ds, eval_idx);
        if (!std::isfinite(loss)) throw DivergedError(t);
        out.loss_trace.push_back(loss);
        if (loss <= hyper.target_loss) {
            out.hit_target = true;
            out.rounds_used = t + 1;
            break;
        }
    }
    if (!out.hit_target) out.rounds_used = hyper.max_rounds;
    return out;
}

}
