#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "signet/dynamics.hpp"
#include "signet/frustration.hpp"
#include "signet/network.hpp"

namespace signet {

// The four neighbour sets of the two-cycle condition: B holds neighbours in
// the same state as i, P those in the opposite state, split by edge sign.
struct FlipSets {
    std::uint64_t b_plus = 0, b_minus = 0, p_plus = 0, p_minus = 0;

    int count_b_plus() const { return std::popcount(b_plus); }
    int count_b_minus() const { return std::popcount(b_minus); }
    int count_p_plus() const { return std::popcount(p_plus); }
    int count_p_minus() const { return std::popcount(p_minus); }
};

inline FlipSets flip_sets(const ThresholdNetwork& net, const Configuration& x, int i) {
    FlipSets fs;
    for (const auto& nb : net.graph().neighbors(i)) {
        std::uint64_t bit = std::uint64_t{1} << nb.vertex;
        bool same = x.state(nb.vertex) == x.state(i);
        if (same)
            (nb.sign > 0 ? fs.b_plus : fs.b_minus) |= bit;
        else
            (nb.sign > 0 ? fs.p_plus : fs.p_minus) |= bit;
    }
    return fs;
}

// x lies on a total two-cycle of the parallel dynamics iff every vertex flips
// at both x and -x, i.e. flip_margin >= 1 twice. Equivalently
// -[w_ii + (|B+| - |B-|) - (|P+| - |P-|)] >= 1 + |b_i| for every i.
inline bool total_two_cycle_condition(const ThresholdNetwork& net, const Configuration& x) {
    Configuration nx = x.negated();
    for (int i = 0; i < net.n(); ++i) {
        if (net.flip_margin(x, i) < 1) return false;
        if (net.flip_margin(nx, i) < 1) return false;
    }
    return true;
}

// Threshold-free form of the condition: a configuration satisfying it is a
// total two-cycle of (G, b = 0). Scans all 2^n states; the witness is the
// lexicographically smallest one.
inline std::optional<Configuration> exists_total_cycle_config(const SignedGraph& g,
                                                              int enum_guard = 22) {
    if (g.n() > enum_guard)
        throw GuardError("total-cycle search guarded at n <= " + std::to_string(enum_guard));
    ThresholdNetwork net(g);
    const std::uint64_t states = std::uint64_t{1} << g.n();
    std::optional<Configuration> best;
    for (std::uint64_t s = 0; s < states; ++s) {
        Configuration x{s, g.n()};
        bool ok = true;
        for (int i = 0; i < g.n() && ok; ++i)
            if (net.flip_margin(x, i) < 1) ok = false;
        if (ok && (!best || lex_less(x, *best))) best = x;
    }
    if (best) {
        auto rec = orbit(net, *best, UpdateMode::parallel(g.n()), 4);
        if (rec.classification != AttractorClass::total_two_cycle || rec.transient != 0)
            throw CertificationError("total-cycle witness failed its simulation check");
    }
    return best;
}

enum class Period2Strategy { pruned_maximizer, negative_loop, pair_search };

inline const char* to_string(Period2Strategy s) {
    switch (s) {
        case Period2Strategy::pruned_maximizer: return "pruned_maximizer";
        case Period2Strategy::negative_loop: return "negative_loop";
        default: return "pair_search";
    }
}

struct Period2Construction {
    std::vector<int> thresholds;
    Configuration x;
    std::uint64_t flip_mask = 0;  // V' = vertices that change state on the cycle
    Period2Strategy strategy = Period2Strategy::pruned_maximizer;
};

namespace detail {

// Margin of i inside the subgraph induced by `mask` at configuration x with
// b = 0: -(w_ii + sum_{j in N(i) & mask} w_ij x_i x_j).
inline int induced_margin(const SignedGraph& g, const Configuration& x, std::uint64_t mask, int i) {
    int c = g.loop(i);
    for (const auto& nb : g.neighbors(i))
        if ((mask >> nb.vertex) & 1) c += nb.sign * x.state(i) * x.state(nb.vertex);
    return -c;
}

inline bool verify_period2(const SignedGraph& g, const std::vector<int>& b,
                           const Configuration& x) {
    ThresholdNetwork net(g, b);
    Configuration y = net.apply_mode(x, UpdateMode::parallel(g.n()));
    if (y == x) return false;
    return net.apply_mode(y, UpdateMode::parallel(g.n())) == x;
}

// Is there an integer b with update(a1, s1 - b) == c1 and
// update(a2, s2 - b) == c2? Candidate thresholds near s1, s2 are decisive:
// each constraint is a half-line or a point in b.
inline std::optional<int> feasible_threshold(int a1, int c1, int s1, int a2, int c2, int s2) {
    auto admits = [](int a, int c, int s, int b) {
        int f = s - b;
        int next = f > 0 ? +1 : (f < 0 ? -1 : a);
        return next == c;
    };
    int candidates[6] = {s1 - 1, s1, s1 + 1, s2 - 1, s2, s2 + 1};
    std::optional<int> best;
    for (int b : candidates)
        if (admits(a1, c1, s1, b) && admits(a2, c2, s2, b))
            if (!best || std::abs(b) < std::abs(*best) || (std::abs(b) == std::abs(*best) && b < *best))
                best = b;
    return best;
}

}  // namespace detail

// Constructive converse of the stability theorem: for S(G) >= 0, produce a
// threshold vector and a configuration forming a period-2 attractor.
//
// Strategy chain, each verified by simulation before returning:
//  1. Take the lexicographically smallest maximizer x* of phi_form, prune
//     V' = "margin inside G[V'] at x* >= 1" to a fixpoint; thresholds
//     neutralise outside neighbours pinned at -1 (b_i = -sum_{j notin V'}
//     w_ij) and pin the rest with b_j = 2 |N(j)|.
//  2. A vertex with a negative loop oscillates alone: b_i = -sum_j w_ij,
//     everything else pinned.
//  3. Bounded exhaustive search over configuration pairs with per-vertex
//     threshold feasibility (complete for "some b admits a two-cycle").
// Returns nullopt only when every strategy fails; the caller reports it as a
// finding, never silently.
inline std::optional<Period2Construction> construct_period2_threshold(const SignedGraph& g,
                                                                      int enum_guard = 22) {
    const int n = g.n();
    if (n > enum_guard)
        throw GuardError("period-2 construction guarded at n <= " + std::to_string(enum_guard));
    if (stability_index(g) < 0)
        throw PreconditionError("construct_period2_threshold requires S(G) >= 0");

    const std::uint64_t states = std::uint64_t{1} << n;
    const std::uint64_t all = Configuration::full_mask(n);

    // 1. Pruned phi_form maximizer.
    {
        long long best_phi = 0;
        std::optional<Configuration> xstar;
        for (std::uint64_t s = 0; s < states; ++s) {
            Configuration x{s, n};
            long long value = phi_form(g, x);
            if (!xstar || value > best_phi || (value == best_phi && lex_less(x, *xstar))) {
                best_phi = value;
                xstar = x;
            }
        }
        std::uint64_t keep = all;
        while (keep) {
            std::uint64_t next = 0;
            for (int i = 0; i < n; ++i)
                if (((keep >> i) & 1) && detail::induced_margin(g, *xstar, keep, i) >= 1)
                    next |= std::uint64_t{1} << i;
            if (next == keep) break;
            keep = next;
        }
        if (keep) {
            std::vector<int> b(static_cast<std::size_t>(n), 0);
            Configuration x = Configuration::all_minus(n);
            for (int i = 0; i < n; ++i) {
                if ((keep >> i) & 1) {
                    int outside = 0;
                    for (const auto& nb : g.neighbors(i))
                        if (!((keep >> nb.vertex) & 1)) outside += nb.sign;
                    b[static_cast<std::size_t>(i)] = -outside;
                    x.set_state(i, xstar->state(i));
                } else {
                    b[static_cast<std::size_t>(i)] = 2 * g.degree(i);
                }
            }
            if (detail::verify_period2(g, b, x))
                return Period2Construction{std::move(b), x, keep,
                                           Period2Strategy::pruned_maximizer};
        }
    }

    // 2. Negative-loop oscillator.
    for (int i = 0; i < n; ++i) {
        if (g.loop(i) >= 0) continue;
        std::vector<int> b(static_cast<std::size_t>(n), 0);
        int signed_degree = 0;
        for (const auto& nb : g.neighbors(i)) signed_degree += nb.sign;
        b[static_cast<std::size_t>(i)] = -signed_degree;
        for (int j = 0; j < n; ++j)
            if (j != i) b[static_cast<std::size_t>(j)] = 2 * g.degree(j);
        Configuration x = Configuration::all_minus(n);
        x.set_state(i, +1);
        if (detail::verify_period2(g, b, x))
            return Period2Construction{std::move(b), x, std::uint64_t{1} << i,
                                       Period2Strategy::negative_loop};
        break;  // one negative loop decides; if it fails, fall through
    }

    // 3. Exhaustive pair search (x, x') with decoupled per-vertex feasibility.
    ThresholdNetwork raw(g);
    for (std::uint64_t sx = 0; sx < states; ++sx) {
        Configuration x{sx, n};
        for (std::uint64_t sy = 0; sy < states; ++sy) {
            if (sy == sx) continue;
            Configuration y{sy, n};
            std::vector<int> b(static_cast<std::size_t>(n), 0);
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                auto bi = detail::feasible_threshold(x.state(i), y.state(i),
                                                     raw.raw_field(x.bits, i), y.state(i),
                                                     x.state(i), raw.raw_field(y.bits, i));
                if (!bi)
                    ok = false;
                else
                    b[static_cast<std::size_t>(i)] = *bi;
            }
            if (ok && detail::verify_period2(g, b, x))
                return Period2Construction{std::move(b), x, (sx ^ sy) & all,
                                           Period2Strategy::pair_search};
        }
    }
    return std::nullopt;
}

struct StabilityVerdict {
    bool sufficient_condition_holds = false;  // every induced subgraph has S < 0
    SubgraphStability worst_subgraph;
    std::optional<bool> validated_by_enumeration;
    // Filled only if validation contradicts the condition (never expected).
    std::optional<OrbitRecord> counterexample;
};

inline StabilityVerdict check_parallel_stability(const SignedGraph& g, const std::vector<int>& b,
                                                 bool validate, int scan_guard = 16,
                                                 int enum_guard = 22) {
    StabilityVerdict v;
    v.worst_subgraph = max_subgraph_stability(g, scan_guard);
    v.sufficient_condition_holds = v.worst_subgraph.value < 0;
    if (validate) {
        ThresholdNetwork net(g, b);
        auto atlas = enumerate_attractors(net, UpdateMode::parallel(g.n()), enum_guard);
        bool fixed_only = true;
        for (const auto& a : atlas.attractors)
            if (a.period != 1) {
                fixed_only = false;
                if (v.sufficient_condition_holds && !v.counterexample) {
                    OrbitRecord rec;
                    rec.transient = 0;
                    rec.period = a.period;
                    rec.cycle = a.cycle;
                    rec.classification = a.classification;
                    v.counterexample = std::move(rec);
                }
            }
        v.validated_by_enumeration = !v.sufficient_condition_holds || fixed_only;
    }
    return v;
}

struct PeriodicVerdict {
    bool condition_holds = false;  // every G(I_k) has all induced S < 0
    std::vector<SubgraphStability> per_step;  // worst subgraph within each I_k
    std::optional<bool> validated_by_enumeration;
    std::optional<OrbitRecord> counterexample;
};

inline PeriodicVerdict check_periodic_stability(const ThresholdNetwork& net, const UpdateMode& mode,
                                                bool validate, int scan_guard = 16,
                                                int enum_guard = 22) {
    PeriodicVerdict v;
    v.condition_holds = true;
    for (auto mask : mode.steps) {
        auto [sub, verts] = net.graph().induced_mask(mask);
        auto worst = max_subgraph_stability(sub, scan_guard);
        // Report in original vertex ids.
        for (auto& w : worst.vertices) w = verts[static_cast<std::size_t>(w)];
        if (worst.value >= 0) v.condition_holds = false;
        v.per_step.push_back(std::move(worst));
    }
    if (validate) {
        auto atlas = enumerate_attractors(net, mode, enum_guard);
        bool fixed_only = true;
        for (const auto& a : atlas.attractors)
            if (a.period != 1) {
                fixed_only = false;
                if (v.condition_holds && !v.counterexample) {
                    OrbitRecord rec;
                    rec.transient = 0;
                    rec.period = a.period;
                    rec.cycle = a.cycle;
                    rec.classification = a.classification;
                    v.counterexample = std::move(rec);
                }
            }
        v.validated_by_enumeration = !v.condition_holds || fixed_only;
    }
    return v;
}

// Per-step audit of the parallel energy laws over a trajectory:
//  (a) every flipped vertex has 2 delta_i <= -4,
//  (b) total-flip steps have dL2 <= 4 S(G),
//  (c) non-empty flip sets have dL2 <= 4 S(G[V']).
// Violations are collected, not asserted.
struct EnergyLawStep {
    std::size_t index = 0;
    long long dl2 = 0;
    std::uint64_t flip_mask = 0;
    bool in_attractor = false;
    bool delta_ok = true;
    bool total_flip = false;
    bool total_bound_ok = true;
    bool subgraph_bound_ok = true;
};

struct EnergyLawReport {
    std::vector<EnergyLawStep> steps;
    long long violations_delta = 0;
    long long violations_total_bound = 0;
    long long violations_subgraph_bound = 0;          // any step
    long long violations_subgraph_bound_attractor = 0;  // steps inside the attractor
};

inline EnergyLawReport verify_energy_laws(const ThresholdNetwork& net,
                                          const std::vector<Configuration>& trajectory,
                                          long long cycle_start = -1) {
    EnergyLawReport report;
    if (trajectory.size() < 2) return report;
    const long long s_whole = stability_index(net.graph());
    for (std::size_t t = 0; t + 1 < trajectory.size(); ++t) {
        auto d = energy_delta(net, trajectory[t], trajectory[t + 1]);
        EnergyLawStep step;
        step.index = t;
        step.dl2 = d.dl2;
        step.flip_mask = d.flip_mask;
        step.in_attractor = cycle_start >= 0 && static_cast<long long>(t) >= cycle_start;
        for (int i = 0; i < net.n(); ++i)
            if (((d.flip_mask >> i) & 1) && d.delta2[static_cast<std::size_t>(i)] > -4)
                step.delta_ok = false;
        step.total_flip = d.flip_mask == Configuration::full_mask(net.n());
        if (step.total_flip) step.total_bound_ok = d.dl2 <= 4 * s_whole;
        if (d.flip_mask != 0) {
            auto [sub, verts] = net.graph().induced_mask(d.flip_mask);
            step.subgraph_bound_ok = d.dl2 <= 4 * stability_index(sub);
        }
        if (!step.delta_ok) ++report.violations_delta;
        if (!step.total_bound_ok) ++report.violations_total_bound;
        if (!step.subgraph_bound_ok) {
            ++report.violations_subgraph_bound;
            if (step.in_attractor) ++report.violations_subgraph_bound_attractor;
        }
        report.steps.push_back(step);
    }
    return report;
}

}  // namespace signet
