#pragma once

#include <stdexcept>
#include <string>
#include <vector>

// Which devices take part in which round. Energy, carbon and the simulator
// all consume the same explicit schedule so their histories cannot drift.

namespace fedcarbon {

struct ActiveSchedule {
    std::vector<std::vector<int>> rounds;   // rounds[t] = active device ids, generation order

    int length() const { return static_cast<int>(rounds.size()); }
};

/// Round-robin active set for round t: k_active consecutive ids starting at
/// (t * k_active) mod fleet. Kept in generation order so the first entry,
/// used as the consensus publisher, rotates through the fleet.
inline std::vector<int> schedule_active(int t, int fleet, int k_active) {
    if (fleet < 1 || k_active < 1 || k_active > fleet)
        throw std::invalid_argument("schedule_active: need 1 <= k_active <= fleet");
    if (t < 0)
        throw std::invalid_argument("schedule_active: round index must be >= 0");
    std::vector<int> out(static_cast<std::size_t>(k_active));
    const long long base = static_cast<long long>(t) * k_active;
    for (int i = 0; i < k_active; ++i)
        out[static_cast<std::size_t>(i)] = static_cast<int>((base + i) % fleet);
    return out;
}

inline ActiveSchedule round_robin_schedule(int n, int fleet, int k_active) {
    if (n < 0)
        throw std::invalid_argument("round_robin_schedule: n must be >= 0");
    ActiveSchedule s;
    s.rounds.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t)
        s.rounds.push_back(schedule_active(t, fleet, k_active));
    return s;
}

/// The same active set every round (useful when a cost should be exactly
/// linear in n, or when a predicate fixes the participating devices).
inline ActiveSchedule stationary_schedule(int n, std::vector<int> active) {
    if (n < 0)
        throw std::invalid_argument("stationary_schedule: n must be >= 0");
    ActiveSchedule s;
    s.rounds.assign(static_cast<std::size_t>(n), active);
    return s;
}

/// Validates a schedule against a scenario: n rounds, k_active distinct
/// in-range devices per round.
inline void check_schedule(const ActiveSchedule& schedule, int fleet, int k_active, int n) {
    if (schedule.length() != n)
        throw std::invalid_argument("schedule covers " + std::to_string(schedule.length()) +
                                    " rounds, expected " + std::to_string(n));
    for (int t = 0; t < n; ++t) {
        const auto& round = schedule.rounds[static_cast<std::size_t>(t)];
        if (static_cast<int>(round.size()) != k_active)
            throw std::invalid_argument("schedule round " + std::to_string(t) + " has " +
                                        std::to_string(round.size()) + " devices, expected " +
                                        std::to_string(k_active));
        std::vector<bool> seen(static_cast<std::size_t>(fleet), false);
        for (int k : round) {
            if (k < 0 || k >= fleet)
                throw std::invalid_argument("schedule round " + std::to_string(t) +
                                            " names device " + std::to_string(k) +
                                            " outside the fleet");
            if (seen[static_cast<std::size_t>(k)])
                throw std::invalid_argument("schedule round " + std::to_string(t) +
                                            " repeats device " + std::to_string(k));
            seen[static_cast<std::size_t>(k)] = true;
        }
    }
}

/// Per-round active-device counts, handy for costs that are sums over the
/// schedule: counts[k] = number of rounds device k is active.
inline std::vector<long long> active_round_counts(const ActiveSchedule& schedule, int fleet) {
    std::vector<long long> counts(static_cast<std::size_t>(fleet), 0);
    for (const auto& round : schedule.rounds)
        for (int k : round)
            counts[static_cast<std::size_t>(k)] += 1;
    return counts;
}

/// Ring fan-out: device k exchanges with the next n_neighbors ids modulo the
/// fleet size. Never contains k itself while n_neighbors <= fleet - 1.
inline std::vector<int> ring_neighbors(int k, int fleet, int n_neighbors) {
    if (n_neighbors < 1 || n_neighbors > fleet - 1)
        throw std::invalid_argument("ring_neighbors: need 1 <= n_neighbors <= fleet - 1");
    std::vector<int> out(static_cast<std::size_t>(n_neighbors));
    for (int j = 1; j <= n_neighbors; ++j)
        out[static_cast<std::size_t>(j - 1)] = (k + j) % fleet;
    return out;
}

}
