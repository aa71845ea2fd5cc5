#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "signet/network.hpp"

namespace signet {

enum class AttractorClass { fixed_point, two_cycle, total_two_cycle, long_cycle };

inline const char* to_string(AttractorClass c) {
    switch (c) {
        case AttractorClass::fixed_point: return "fixed_point";
        case AttractorClass::two_cycle: return "two_cycle";
        case AttractorClass::total_two_cycle: return "total_two_cycle";
        default: return "long_cycle";
    }
}

inline AttractorClass classify_cycle(const std::vector<Configuration>& cycle) {
    if (cycle.size() == 1) return AttractorClass::fixed_point;
    if (cycle.size() == 2)
        return cycle[1] == cycle[0].negated() ? AttractorClass::total_two_cycle
                                              : AttractorClass::two_cycle;
    return AttractorClass::long_cycle;
}

struct OrbitRecord {
    long long transient = 0;  // first t with x^t on the cycle
    long long period = 1;
    std::vector<Configuration> cycle;  // cycle[0] = x^transient
    AttractorClass classification = AttractorClass::fixed_point;
    std::vector<Configuration> substeps;        // filled when requested
    std::vector<Configuration> trajectory;      // x^0 .. x^(transient+period-1)
};

// Budget exhaustion keeps what was simulated so far.
class OrbitBudgetError : public BudgetError {
public:
    OrbitBudgetError(const std::string& message, std::vector<Configuration> partial)
        : BudgetError(message), partial_trajectory(std::move(partial)) {}
    std::vector<Configuration> partial_trajectory;
};

// Iterates F_mu from x0 with a visited map; reports on the first revisit.
inline OrbitRecord orbit(const ThresholdNetwork& net, Configuration x0, const UpdateMode& mode,
                         long long max_steps = 1u << 22, bool record_substeps = false) {
    if (max_steps < 1) throw PreconditionError("orbit needs max_steps >= 1");
    std::unordered_map<std::uint64_t, long long> seen;
    std::vector<Configuration> traj;
    std::vector<Configuration> subs;
    Configuration x = x0;
    long long t = 0;
    while (true) {
        auto [it, fresh] = seen.emplace(x.bits, t);
        if (!fresh) {
            OrbitRecord rec;
            rec.transient = it->second;
            rec.period = t - it->second;
            rec.cycle.assign(traj.begin() + it->second, traj.end());
            rec.classification = classify_cycle(rec.cycle);
            rec.trajectory = std::move(traj);
            rec.substeps = std::move(subs);
            return rec;
        }
        traj.push_back(x);
        if (t >= max_steps)
            throw OrbitBudgetError(
                "orbit did not close within " + std::to_string(max_steps) + " steps",
                std::move(traj));
        x = net.apply_mode(x, mode, record_substeps ? &subs : nullptr);
        ++t;
    }
}

struct Attractor {
    long long period = 1;
    Configuration representative;      // lexicographically smallest cycle member
    std::vector<Configuration> cycle;  // starts at the representative
    long long basin = 0;               // states mapping into this attractor (cycle included)
    AttractorClass classification = AttractorClass::fixed_point;
};

struct AttractorAtlas {
    std::vector<Attractor> attractors;
    long long total_states = 0;
    std::map<long long, long long> period_histogram;  // period -> number of attractors
    std::map<long long, long long> period_basin;      // period -> states drained
};

// Visits all 2^n configurations with a memoised successor table and labels
// every state with its attractor. Deterministic: seeds are processed in
// numeric order and attractors sorted by (period, representative).
inline AttractorAtlas enumerate_attractors(const ThresholdNetwork& net, const UpdateMode& mode,
                                           int enum_guard = 22) {
    const int n = net.n();
    if (n > enum_guard)
        throw GuardError("attractor enumeration guarded at n <= " + std::to_string(enum_guard));
    const std::uint64_t states = std::uint64_t{1} << n;

    std::vector<std::uint32_t> succ(states);
    for (std::uint64_t s = 0; s < states; ++s)
        succ[s] = static_cast<std::uint32_t>(net.apply_mode({s, n}, mode).bits);

    std::vector<std::int32_t> attr(states, -1);
    std::vector<std::vector<std::uint32_t>> cycles;
    std::vector<std::uint32_t> path;

    for (std::uint64_t seed = 0; seed < states; ++seed) {
        if (attr[seed] >= 0) continue;
        path.clear();
        std::uint32_t s = static_cast<std::uint32_t>(seed);
        // -2 marks "on the current path".
        while (attr[s] == -1) {
            attr[s] = -2;
            path.push_back(s);
            s = succ[s];
        }
        std::int32_t id;
        if (attr[s] == -2) {
            // Found a new cycle; collect it from the path tail.
            id = static_cast<std::int32_t>(cycles.size());
            std::size_t start = path.size();
            while (start > 0 && path[start - 1] != s) --start;
            cycles.emplace_back(path.begin() + (start - 1), path.end());
        } else {
            id = attr[s];
        }
        for (auto v : path) attr[v] = id;
    }

    AttractorAtlas atlas;
    atlas.total_states = static_cast<long long>(states);
    std::vector<long long> basin(cycles.size(), 0);
    for (std::uint64_t s = 0; s < states; ++s) ++basin[static_cast<std::size_t>(attr[s])];

    for (std::size_t id = 0; id < cycles.size(); ++id) {
        Attractor a;
        a.period = static_cast<long long>(cycles[id].size());
        a.basin = basin[id];
        // Rotate so the lexicographically smallest member leads.
        std::size_t best = 0;
        for (std::size_t k = 1; k < cycles[id].size(); ++k)
            if (lex_less({cycles[id][k], n}, {cycles[id][best], n})) best = k;
        for (std::size_t k = 0; k < cycles[id].size(); ++k)
            a.cycle.push_back({cycles[id][(best + k) % cycles[id].size()], n});
        a.representative = a.cycle.front();
        a.classification = classify_cycle(a.cycle);
        atlas.attractors.push_back(std::move(a));
    }
    std::sort(atlas.attractors.begin(), atlas.attractors.end(),
              [](const Attractor& a, const Attractor& b) {
                  if (a.period != b.period) return a.period < b.period;
                  return lex_less(a.representative, b.representative);
              });
    for (const auto& a : atlas.attractors) {
        atlas.period_histogram[a.period] += 1;
        atlas.period_basin[a.period] += a.basin;
    }
    return atlas;
}

// 2 L(x) = -x^T W x + 2 b^T x, kept doubled so energies stay integral.
inline long long energy2(const ThresholdNetwork& net, const Configuration& x) {
    long long quad = 0, lin = 0;
    for (int i = 0; i < net.n(); ++i) {
        quad += static_cast<long long>(x.state(i)) * net.raw_field(x.bits, i);
        lin += static_cast<long long>(net.thresholds()[static_cast<std::size_t>(i)]) * x.state(i);
    }
    return -quad + 2 * lin;
}

struct EnergyDelta {
    long long dl2 = 0;                 // 2 (L(x') - L(x))
    std::vector<long long> delta2;     // per-vertex 2 delta_i
    std::uint64_t flip_mask = 0;       // V' = vertices with x_i != x'_i
};

// Exact identity: 2 dL = sum_i 2 delta_i - (x'-x)^T W (x'-x), with
// delta_i = -(x'_i - x_i)(sum_j w_ij x_j - b_i).
inline EnergyDelta energy_delta(const ThresholdNetwork& net, const Configuration& x,
                                const Configuration& y) {
    if (x.n != net.n() || y.n != net.n())
        throw PreconditionError("configuration size does not match network");
    EnergyDelta d;
    d.flip_mask = (x.bits ^ y.bits) & Configuration::full_mask(net.n());
    d.delta2.assign(static_cast<std::size_t>(net.n()), 0);
    for (int i = 0; i < net.n(); ++i) {
        long long yi = y.state(i) - x.state(i);  // in {-2, 0, +2}
        d.delta2[static_cast<std::size_t>(i)] = -2 * yi * net.local_field(x, i);
    }
    d.dl2 = energy2(net, y) - energy2(net, x);
    return d;
}

}  // namespace signet
