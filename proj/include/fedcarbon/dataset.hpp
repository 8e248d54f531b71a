#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fedcarbon/rng.hpp"

// Desk-scale synthetic data: Gaussian class clusters and seeded IID or
// label-skewed partitions of them across a device fleet.

namespace fedcarbon {

struct Dataset {
    int classes = 0;
    int dim = 0;
    std::vector<double> features;   // row-major, size() * dim
    std::vector<int> labels;
    std::uint64_t seed = 0;

    int size() const { return static_cast<int>(labels.size()); }
    const double* example(int i) const { return features.data() + static_cast<std::size_t>(i) * dim; }
};

/// Examples owned by one device, as indices into the parent dataset.
struct Shard {
    std::vector<int> indices;
    int size() const { return static_cast<int>(indices.size()); }
};

/// Unit-variance Gaussian clusters, one per class, `per_class` examples each.
/// `separation` is the distance of each class mean from the origin: means sit
/// on a circle in the first two feature dimensions (on a line for dim == 1),
/// so separation 0 collapses every class onto the same cloud.
inline Dataset make_synthetic_dataset(int classes, int dim, int per_class, double separation,
                                      std::uint64_t seed) {
    if (classes < 2) throw std::invalid_argument("make_synthetic_dataset: classes must be >= 2");
    if (dim < 1) throw std::invalid_argument("make_synthetic_dataset: dim must be >= 1");
    if (per_class < 1) throw std::invalid_argument("make_synthetic_dataset: per_class must be >= 1");
    if (separation < 0.0) throw std::domain_error("make_synthetic_dataset: separation must be >= 0");

    Dataset ds;
    ds.classes = classes;
    ds.dim = dim;
    ds.seed = seed;
    ds.features.resize(static_cast<std::size_t>(classes) * per_class * dim);
    ds.labels.resize(static_cast<std::size_t>(classes) * per_class);

    Rng rng(derive_seed(seed, 0xD5));
    const double two_pi = 2.0 * 3.14159265358979323846;
    std::size_t f = 0;
    for (int c = 0; c < classes; ++c) {
        double mean0, mean1 = 0.0;
        if (dim == 1) {
            mean0 = separation * c;
        } else {
            const double angle = two_pi * c / classes;
            mean0 = separation * std::cos(angle);
            mean1 = separation * std::sin(angle);
        }
        for (int i = 0; i < per_class; ++i) {
            for (int j = 0; j < dim; ++j) {
                double mean = j == 0 ? mean0 : (j == 1 ? mean1 : 0.0);
                ds.features[f++] = mean + rng.normal();
            }
            ds.labels[static_cast<std::size_t>(c) * per_class + i] = c;
        }
    }
    return ds;
}

enum class PartitionMode { IID, LabelSkew };

struct PartitionSpec {
    PartitionMode mode = PartitionMode::IID;
    int classes_per_device = 0;   // LabelSkew only
};

namespace detail {

/// Splits `items` into `parts` contiguous chunks whose sizes differ by at
/// most one (the first size % parts chunks get the extra element).
inline std::vector<std::vector<int>> deal_chunks(const std::vector<int>& items, int parts) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(parts));
    const int base = static_cast<int>(items.size()) / parts;
    const int extra = static_cast<int>(items.size()) % parts;
    std::size_t pos = 0;
    for (int p = 0; p < parts; ++p) {
        const int take = base + (p < extra ? 1 : 0);
        out[static_cast<std::size_t>(p)].assign(items.begin() + pos, items.begin() + pos + take);
        pos += static_cast<std::size_t>(take);
    }
    return out;
}

}  // namespace detail

/// Splits the dataset into K device shards. IID deals a seeded shuffle into
/// near-equal parts; LabelSkew gives each device examples from exactly
/// classes_per_device classes (every class is assigned to at least one
/// device, so the shards still cover the dataset).
inline std::vector<Shard> partition(const Dataset& ds, int k, const PartitionSpec& spec,
                                    std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("partition: K must be >= 1");
    if (k > ds.size()) throw std::invalid_argument("partition: K exceeds the dataset size");

    std::vector<Shard> shards(static_cast<std::size_t>(k));
    Rng rng(derive_seed(seed, 0x9A));

    if (spec.mode == PartitionMode::IID) {
        std::vector<int> order(static_cast<std::size_t>(ds.size()));
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        auto chunks = detail::deal_chunks(order, k);
        for (int d = 0; d < k; ++d)
            shards[static_cast<std::size_t>(d)].indices = std::move(chunks[static_cast<std::size_t>(d)]);
    } else {
        const int cpd = spec.classes_per_device;
        if (cpd < 1 || cpd > ds.classes)
            throw std::domain_error("partition: classes_per_device must lie in [1, classes]");
        if (static_cast<long long>(k) * cpd < ds.classes)
            throw std::domain_error("partition: K * classes_per_device too small to cover every class");

        // Each device draws classes_per_device distinct classes.
        std::vector<std::vector<int>> owned(static_cast<std::size_t>(k));
        std::vector<int> owners_per_class(static_cast<std::size_t>(ds.classes), 0);
        std::vector<int> all_classes(static_cast<std::size_t>(ds.classes));
        std::iota(all_classes.begin(), all_classes.end(), 0);
        for (int d = 0; d < k; ++d) {
            std::vector<int> pool = all_classes;
            rng.shuffle(pool);
            pool.resize(static_cast<std::size_t>(cpd));
            std::sort(pool.begin(), pool.end());
            for (int c : pool) owners_per_class[static_cast<std::size_t>(c)] += 1;
            owned[static_cast<std::size_t>(d)] = std::move(pool);
        }
        // Deterministic fix-up: any unowned class steals a slot whose class
        // has a second owner. Slot budget K * cpd >= classes guarantees one.
        for (int c = 0; c < ds.classes; ++c) {
            if (owners_per_class[static_cast<std::size_t>(c)] > 0) continue;
            bool placed = false;
            for (int d = 0; d < k && !placed; ++d) {
                for (int& slot : owned[static_cast<std::size_t>(d)]) {
                    if (owners_per_class[static_cast<std::size_t>(slot)] < 2) continue;
                    if (std::find(owned[static_cast<std::size_t>(d)].begin(),
                                  owned[static_cast<std::size_t>(d)].end(), c) !=
                        owned[static_cast<std::size_t>(d)].end())
                        break;
                    owners_per_class[static_cast<std::size_t>(slot)] -= 1;
                    slot = c;
                    owners_per_class[static_cast<std::size_t>(c)] += 1;
                    placed = true;
                    break;
                }
            }
            if (!placed) throw std::logic_error("partition: class coverage fix-up failed");
        }
        // Split each class's examples among its owners.
        for (int c = 0; c < ds.classes; ++c) {
            std::vector<int> members;
            for (int i = 0; i < ds.size(); ++i)
                if (ds.labels[static_cast<std::size_t>(i)] == c) members.push_back(i);
            rng.shuffle(members);
            std::vector<int> owner_devices;
            for (int d = 0; d < k; ++d)
                if (std::find(owned[static_cast<std::size_t>(d)].begin(),
                              owned[static_cast<std::size_t>(d)].end(),
                              c) != owned[static_cast<std::size_t>(d)].end())
                    owner_devices.push_back(d);
            auto chunks = detail::deal_chunks(members, static_cast<int>(owner_devices.size()));
            for (std::size_t o = 0; o < owner_devices.size(); ++o)
                for (int idx : chunks[o])
                    shards[static_cast<std::size_t>(owner_devices[o])].indices.push_back(idx);
        }
        for (auto& shard : shards)
            std::sort(shard.indices.begin(), shard.indices.end());
    }
    return shards;
}

}
