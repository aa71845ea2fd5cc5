#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "signet/analysis.hpp"
#include "signet/dynamics.hpp"
#include "signet/frustration.hpp"
#include "signet/graph.hpp"
#include "signet/graph_io.hpp"
#include "signet/parallel.hpp"

// Exhaustive and randomized instance sweeps that turn the stability theorems
// into executable checks. Shared by `signet check --sweep` and the
// acceptance suite.

namespace signet::sweeps {

struct Scale {
    int max_n = 4;             // full-family bound (connected, all signs, all loops)
    int b_range = 2;           // thresholds swept over [-b_range, b_range]^n
    int corollary_b_range = 3;
    int periodic_modes = 1000;
    int periodic_mode_max_len = 6;
    std::uint32_t seed = 0xC0FFEEu;
    int threads = 1;
    bool include_n5_sample = false;  // add the fixed n=5 topology sample
};

struct Outcome {
    std::string name;
    long long graphs = 0;       // graph representatives visited
    long long qualifying = 0;   // instances meeting the hypothesis
    long long checked = 0;      // instance-level checks executed
    long long violations = 0;
    std::vector<std::string> details;
    // Violating instances in the graph file format, ready to write out.
    std::vector<std::string> counterexample_files;

    bool passed() const { return violations == 0; }

    void note_violation(const std::string& text, const std::string& graph_file = {}) {
        ++violations;
        if (details.size() < 20) details.push_back(text);
        if (!graph_file.empty() && counterexample_files.size() < 8)
            counterexample_files.push_back(graph_file);
    }

    void absorb(const Outcome& other) {
        graphs += other.graphs;
        qualifying += other.qualifying;
        checked += other.checked;
        violations += other.violations;
        for (const auto& d : other.details)
            if (details.size() < 20) details.push_back(d);
        for (const auto& f : other.counterexample_files)
            if (counterexample_files.size() < 8) counterexample_files.push_back(f);
    }
};

namespace detail {

inline std::string describe_graph(const SignedGraph& g) {
    std::ostringstream out;
    out << "n=" << g.n() << " edges=";
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const auto& e = g.edges()[i];
        if (i) out << ",";
        out << e.u + 1 << "-" << e.v + 1 << ":" << (e.sign > 0 ? "+" : "-");
    }
    out << " loops=";
    bool first = true;
    for (int i = 0; i < g.n(); ++i)
        if (g.loop(i) != 0) {
            if (!first) out << ",";
            out << i + 1 << ":" << (g.loop(i) > 0 ? "+" : "-");
            first = false;
        }
    return out.str();
}

inline std::string describe_b(const std::vector<int>& b) {
    std::ostringstream out;
    out << "b=(";
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) out << ",";
        out << b[i];
    }
    out << ")";
    return out.str();
}

// All labeled connected edge sets on n vertices (endpoint pairs, no signs).
inline std::vector<std::vector<std::pair<int, int>>> connected_edge_sets(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
    std::vector<std::vector<std::pair<int, int>>> out;
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
        std::array<int, 8> parent{};
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
        auto find = [&](int a) {
            while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)];
            return a;
        };
        std::vector<std::pair<int, int>> edges;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if ((mask >> i) & 1) {
                edges.push_back(pairs[i]);
                parent[static_cast<std::size_t>(find(pairs[i].first))] = find(pairs[i].second);
            }
        bool connected = true;
        for (int i = 1; i < n; ++i)
            if (find(i) != find(0)) connected = false;
        if (connected) out.push_back(std::move(edges));
    }
    return out;
}

// Canonical key of a signed graph with loops under vertex permutations.
inline std::vector<int> canonical_key(int n, const std::vector<SignedEdge>& edges,
                                      const std::vector<int>& loops) {
    std::array<int, 8> perm{};
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::vector<int> best;
    do {
        std::vector<int> key;
        key.reserve(edges.size() * 3 + static_cast<std::size_t>(n));
        std::vector<std::array<int, 3>> mapped;
        for (const auto& e : edges) {
            int u = perm[static_cast<std::size_t>(e.u)], v = perm[static_cast<std::size_t>(e.v)];
            mapped.push_back({std::min(u, v), std::max(u, v), e.sign});
        }
        std::sort(mapped.begin(), mapped.end());
        for (const auto& t : mapped) key.insert(key.end(), {t[0], t[1], t[2]});
        std::array<int, 8> mapped_loops{};
        for (int i = 0; i < n; ++i)
            mapped_loops[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
                loops[static_cast<std::size_t>(i)];
        for (int i = 0; i < n; ++i) key.push_back(mapped_loops[static_cast<std::size_t>(i)]);
        if (best.empty() || key < best) best = std::move(key);
    } while (std::next_permutation(perm.begin(), perm.begin() + n));
    return best;
}

// Stability index of every induced subgraph, indexed by vertex mask.
// Exhaustive switchings are fine at sweep scale (n <= 5).
inline std::vector<int> stability_table(const SignedGraph& g) {
    const int n = g.n();
    const std::uint32_t states = 1u << n;
    std::vector<int> table(states, 0);
    for (std::uint32_t mask = 1; mask < states; ++mask) {
        std::array<int, 8> pos{};
        int k = 0;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) pos[static_cast<std::size_t>(i)] = k++;
        std::vector<SignedEdge> inside;
        for (const auto& e : g.edges())
            if (((mask >> e.u) & 1) && ((mask >> e.v) & 1)) inside.push_back(e);
        int best = static_cast<int>(inside.size()) + 1;
        for (std::uint32_t a = 0; a < (1u << k); ++a) {
            int unsat = 0;
            for (const auto& e : inside) {
                int su = (a >> pos[static_cast<std::size_t>(e.u)]) & 1 ? -1 : 1;
                int sv = (a >> pos[static_cast<std::size_t>(e.v)]) & 1 ? -1 : 1;
                if (-e.sign * su * sv < 0) ++unsat;
            }
            best = std::min(best, unsat);
        }
        int dp = 0, dm = 0;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) {
                if (g.loop(i) > 0) ++dp;
                if (g.loop(i) < 0) ++dm;
            }
        table[mask] = -std::popcount(mask) - dp + dm + 2 * static_cast<int>(inside.size()) -
                      4 * best;
    }
    return table;
}

// safe[mask] <=> every induced subgraph of G[mask] has S < 0.
inline std::vector<char> safe_table(const std::vector<int>& stability) {
    std::vector<char> safe(stability.size(), 1);
    for (std::uint32_t mask = 1; mask < stability.size(); ++mask) {
        bool ok = stability[mask] < 0;
        for (std::uint32_t rest = mask; ok && rest; rest &= rest - 1)
            ok = safe[mask & ~(std::uint32_t{1} << std::countr_zero(rest))];
        safe[mask] = ok ? 1 : 0;
    }
    return safe;
}

// Successor table of f_I under thresholds b, for all 2^n states.
inline void subset_succ(const ThresholdNetwork& raw, const std::vector<int>& b,
                        std::uint32_t subset, std::vector<std::uint32_t>& out) {
    const int n = raw.n();
    const std::uint32_t states = 1u << n;
    out.resize(states);
    for (std::uint32_t s = 0; s < states; ++s) {
        std::uint32_t next = s;
        std::uint32_t rest = subset;
        while (rest) {
            int i = std::countr_zero(rest);
            rest &= rest - 1;
            int f = raw.raw_field(s, i) - b[static_cast<std::size_t>(i)];
            if (f > 0)
                next |= std::uint32_t{1} << i;
            else if (f < 0)
                next &= ~(std::uint32_t{1} << i);
        }
        out[s] = next;
    }
}

// True iff every orbit of the tabulated map reaches a fixed point. Walks
// every state once with visit stamps; a cycle closing within the current
// walk has length (now - stamp of the collision point).
inline bool only_fixed_points(const std::vector<std::uint32_t>& f,
                              std::vector<std::int32_t>& stamp) {
    stamp.assign(f.size(), -1);
    std::int32_t clock = 0;
    for (std::uint32_t s0 = 0; s0 < f.size(); ++s0) {
        if (stamp[s0] >= 0) continue;
        std::uint32_t s = s0;
        std::int32_t start = clock;
        while (stamp[s] < 0) {
            stamp[s] = clock++;
            s = f[s];
        }
        if (stamp[s] >= start && clock - stamp[s] > 1) return false;
    }
    return true;
}

inline bool only_fixed_points(const std::vector<std::uint32_t>& f) {
    std::vector<std::int32_t> stamp;
    return only_fixed_points(f, stamp);
}

// Iterate all thresholds in [-r, r]^n in odometer order.
template <typename Fn>
void for_each_b(int n, int r, Fn&& fn) {
    std::vector<int> b(static_cast<std::size_t>(n), -r);
    while (true) {
        fn(const_cast<const std::vector<int>&>(b));
        int i = 0;
        while (i < n && b[static_cast<std::size_t>(i)] == r) b[static_cast<std::size_t>(i++)] = -r;
        if (i == n) break;
        ++b[static_cast<std::size_t>(i)];
    }
}

}  // namespace detail

// Every connected signed graph (all edge signs, loop patterns in
// {none,+,-}^n) with exactly n vertices, one representative per isomorphism
// class. Deterministic order.
inline std::vector<SignedGraph> connected_signed_family(int n) {
    std::vector<SignedGraph> out;
    std::set<std::vector<int>> seen;
    for (const auto& topo : detail::connected_edge_sets(n)) {
        const int m = static_cast<int>(topo.size());
        for (std::uint32_t signs = 0; signs < (1u << m); ++signs) {
            std::vector<SignedEdge> edges;
            for (int i = 0; i < m; ++i)
                edges.push_back({topo[static_cast<std::size_t>(i)].first,
                                 topo[static_cast<std::size_t>(i)].second,
                                 (signs >> i) & 1 ? -1 : +1});
            std::uint32_t loop_patterns = 1;
            for (int i = 0; i < n; ++i) loop_patterns *= 3;
            for (std::uint32_t lp = 0; lp < loop_patterns; ++lp) {
                std::vector<int> loops(static_cast<std::size_t>(n), 0);
                std::uint32_t rest = lp;
                for (int i = 0; i < n; ++i) {
                    int digit = static_cast<int>(rest % 3);
                    rest /= 3;
                    loops[static_cast<std::size_t>(i)] = digit == 0 ? 0 : (digit == 1 ? +1 : -1);
                }
                if (seen.insert(detail::canonical_key(n, edges, loops)).second)
                    out.emplace_back(n, edges, loops);
            }
        }
    }
    return out;
}

struct SampledTopology {
    std::string name;
    int n = 5;
    std::vector<std::pair<int, int>> edges;
};

// Fixed topology sample used for the n = 5 suites.
inline const std::vector<SampledTopology>& sampled_topologies_n5() {
    static const std::vector<SampledTopology> topologies = {
        {"path5", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}},
        {"cycle5", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}},
        {"star5", 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}},
        {"bull", 5, {{0, 1}, {1, 2}, {2, 0}, {1, 3}, {2, 4}}},
        {"butterfly", 5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}}},
        {"house", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 4}}},
        {"k4_pendant", 5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}}},
        {"k5", 5,
         {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}},
    };
    return topologies;
}

inline long long sampled_instance_count(const SampledTopology& topo) {
    long long loop_patterns = 1;
    for (int i = 0; i < topo.n; ++i) loop_patterns *= 3;
    return (1LL << topo.edges.size()) * loop_patterns;
}

inline SignedGraph sampled_instance(const SampledTopology& topo, long long index) {
    long long loop_patterns = 1;
    for (int i = 0; i < topo.n; ++i) loop_patterns *= 3;
    long long signs = index / loop_patterns;
    long long lp = index % loop_patterns;
    std::vector<SignedEdge> edges;
    for (std::size_t i = 0; i < topo.edges.size(); ++i)
        edges.push_back({topo.edges[i].first, topo.edges[i].second,
                         (signs >> i) & 1 ? -1 : +1});
    std::vector<int> loops(static_cast<std::size_t>(topo.n), 0);
    for (int i = 0; i < topo.n; ++i) {
        int digit = static_cast<int>(lp % 3);
        lp /= 3;
        loops[static_cast<std::size_t>(i)] = digit == 0 ? 0 : (digit == 1 ? +1 : -1);
    }
    return SignedGraph(topo.n, std::move(edges), std::move(loops));
}

// --- Suite: main theorem -----------------------------------------------
// max induced-subgraph S < 0  =>  parallel dynamics has only fixed points,
// for every threshold vector in the grid.
inline Outcome sweep_main_theorem(const Scale& scale) {
    Outcome total;
    total.name = "main_theorem";
    for (int n = 1; n <= scale.max_n; ++n) {
        auto family = connected_signed_family(n);
        std::vector<Outcome> parts(static_cast<std::size_t>(
            std::max(1, scale.threads)));
        parallel_chunks(
            static_cast<long long>(family.size()), scale.threads,
            [&](int chunk, long long begin, long long end) {
                Outcome& out = parts[static_cast<std::size_t>(chunk)];
                std::vector<std::uint32_t> succ;
                for (long long gi = begin; gi < end; ++gi) {
                    const SignedGraph& g = family[static_cast<std::size_t>(gi)];
                    ++out.graphs;
                    auto stab = detail::stability_table(g);
                    bool condition = true;
                    for (std::uint32_t mask = 1; mask < stab.size(); ++mask)
                        if (stab[mask] >= 0) condition = false;
                    if (!condition) continue;
                    ThresholdNetwork raw(g);
                    const std::uint32_t full = (1u << n) - 1;
                    detail::for_each_b(n, scale.b_range, [&](const std::vector<int>& b) {
                        ++out.qualifying;
                        ++out.checked;
                        detail::subset_succ(raw, b, full, succ);
                        if (!detail::only_fixed_points(succ))
                            out.note_violation(detail::describe_graph(g) + " " +
                                               detail::describe_b(b) +
                                               " has a non-fixed-point attractor",
                                               serialize_network(g, b));
                    });
                }
            },
            [&](int chunk) { total.absorb(parts[static_cast<std::size_t>(chunk)]); });
    }
    return total;
}

// --- Suite: periodic-mode theorem ---------------------------------------
// If every G(I_k) has all induced S < 0, the mode admits only fixed points.
inline Outcome sweep_periodic_theorem(const Scale& scale) {
    Outcome total;
    total.name = "periodic_theorem";
    for (int n = 1; n <= scale.max_n; ++n) {
        // One deterministic mode sample per n.
        std::mt19937 rng(scale.seed ^ static_cast<std::uint32_t>(0x9E3779B9u * n));
        const std::uint32_t full = (1u << n) - 1;
        std::vector<std::vector<std::uint32_t>> modes;
        for (int k = 0; k < scale.periodic_modes; ++k) {
            int len = 1 + static_cast<int>(rng() % static_cast<std::uint32_t>(
                                               scale.periodic_mode_max_len));
            std::vector<std::uint32_t> steps;
            for (int j = 0; j < len; ++j) steps.push_back(1 + rng() % full);
            modes.push_back(std::move(steps));
        }
        auto family = connected_signed_family(n);
        std::vector<Outcome> parts(static_cast<std::size_t>(std::max(1, scale.threads)));
        parallel_chunks(
            static_cast<long long>(family.size()), scale.threads,
            [&](int chunk, long long begin, long long end) {
                Outcome& out = parts[static_cast<std::size_t>(chunk)];
                for (long long gi = begin; gi < end; ++gi) {
                    const SignedGraph& g = family[static_cast<std::size_t>(gi)];
                    ++out.graphs;
                    auto safe = detail::safe_table(detail::stability_table(g));
                    std::vector<int> qualifying_modes;
                    for (std::size_t mi = 0; mi < modes.size(); ++mi) {
                        bool ok = true;
                        for (auto step : modes[mi])
                            if (!safe[step]) {
                                ok = false;
                                break;
                            }
                        if (ok) qualifying_modes.push_back(static_cast<int>(mi));
                    }
                    if (qualifying_modes.empty()) continue;
                    ThresholdNetwork raw(g);
                    std::vector<std::vector<std::uint32_t>> tables(1u << n);
                    std::vector<char> built(1u << n, 0);
                    std::vector<std::uint32_t> composed(1u << n);
                    std::vector<std::int32_t> stamp;
                    detail::for_each_b(n, scale.b_range, [&](const std::vector<int>& b) {
                        std::fill(built.begin(), built.end(), 0);
                        for (int mi : qualifying_modes) {
                            ++out.qualifying;
                            ++out.checked;
                            for (auto step : modes[static_cast<std::size_t>(mi)])
                                if (!built[step]) {
                                    detail::subset_succ(raw, b, step, tables[step]);
                                    built[step] = 1;
                                }
                            for (std::uint32_t s = 0; s <= full; ++s) {
                                std::uint32_t y = s;
                                for (auto step : modes[static_cast<std::size_t>(mi)])
                                    y = tables[step][y];
                                composed[s] = y;
                            }
                            if (!detail::only_fixed_points(composed, stamp))
                                out.note_violation(detail::describe_graph(g) + " " +
                                                   detail::describe_b(b) + " mode#" +
                                                   std::to_string(mi) +
                                                   " violates the periodic condition",
                                                   serialize_network(g, b));
                        }
                    });
                }
            },
            [&](int chunk) { total.absorb(parts[static_cast<std::size_t>(chunk)]); });
    }
    return total;
}

// --- Suite: two-cycle condition (margin form) ----------------------------
// For every (network, configuration): the corrected condition holds iff the
// parallel step sends x to -x and back.
inline Outcome sweep_two_cycle_condition(const Scale& scale) {
    Outcome total;
    total.name = "two_cycle_condition";
    for (int n = 1; n <= scale.max_n; ++n) {
        auto family = connected_signed_family(n);
        std::vector<Outcome> parts(static_cast<std::size_t>(std::max(1, scale.threads)));
        parallel_chunks(
            static_cast<long long>(family.size()), scale.threads,
            [&](int chunk, long long begin, long long end) {
                Outcome& out = parts[static_cast<std::size_t>(chunk)];
                std::vector<std::uint32_t> succ;
                const std::uint32_t full = (1u << n) - 1;
                for (long long gi = begin; gi < end; ++gi) {
                    const SignedGraph& g = family[static_cast<std::size_t>(gi)];
                    ++out.graphs;
                    ThresholdNetwork raw(g);
                    detail::for_each_b(n, scale.b_range, [&](const std::vector<int>& b) {
                        detail::subset_succ(raw, b, full, succ);
                        ThresholdNetwork net(g, b);
                        for (std::uint32_t s = 0; s <= full; ++s) {
                            ++out.checked;
                            Configuration x{s, n};
                            bool condition = total_two_cycle_condition(net, x);
                            bool simulated =
                                succ[s] == (~s & full) && succ[~s & full] == s;
                            if (condition != simulated)
                                out.note_violation(detail::describe_graph(g) + " " +
                                                   detail::describe_b(b) + " x=" +
                                                   x.to_string() +
                                                   (condition ? " condition without cycle"
                                                              : " cycle without condition"),
                                                   serialize_network(g, b));
                        }
                    });
                }
            },
            [&](int chunk) { total.absorb(parts[static_cast<std::size_t>(chunk)]); });
        total.qualifying = total.checked;
    }
    return total;
}

// --- Suite: total-cycle corollary ----------------------------------------
// The threshold-free condition has a witness iff some b in [-r, r]^n yields
// a simulated total two-cycle.
inline Outcome sweep_corollary(const Scale& scale) {
    Outcome total;
    total.name = "corollary_total_cycle";
    for (int n = 1; n <= scale.max_n; ++n) {
        auto family = connected_signed_family(n);
        std::vector<Outcome> parts(static_cast<std::size_t>(std::max(1, scale.threads)));
        parallel_chunks(
            static_cast<long long>(family.size()), scale.threads,
            [&](int chunk, long long begin, long long end) {
                Outcome& out = parts[static_cast<std::size_t>(chunk)];
                std::vector<std::uint32_t> succ;
                const std::uint32_t full = (1u << n) - 1;
                for (long long gi = begin; gi < end; ++gi) {
                    const SignedGraph& g = family[static_cast<std::size_t>(gi)];
                    ++out.graphs;
                    ++out.checked;
                    bool lhs = exists_total_cycle_config(g).has_value();
                    ThresholdNetwork raw(g);
                    bool rhs = false;
                    auto scan_b = [&](const std::vector<int>& b) {
                        if (rhs) return;
                        detail::subset_succ(raw, b, full, succ);
                        for (std::uint32_t s = 0; s <= full && !rhs; ++s)
                            if (succ[s] == (~s & full) && succ[~s & full] == s) rhs = true;
                    };
                    scan_b(std::vector<int>(static_cast<std::size_t>(n), 0));
                    if (!rhs)
                        detail::for_each_b(n, scale.corollary_b_range, scan_b);
                    if (lhs != rhs)
                        out.note_violation(detail::describe_graph(g) +
                                           (lhs ? " has witness but no simulated total cycle"
                                                : " has simulated total cycle but no witness"),
                                           serialize_network(g));
                }
            },
            [&](int chunk) { total.absorb(parts[static_cast<std::size_t>(chunk)]); });
        total.qualifying = total.checked;
    }
    return total;
}

// --- Suite: stability theorem, both directions ---------------------------
// Forward: a threshold-free total-cycle witness forces S(G) >= 0.
// Converse: S(G) >= 0 admits a constructed, simulation-verified period-2
// attractor.
inline Outcome sweep_stability_theorem(const Scale& scale) {
    Outcome total;
    total.name = "stability_theorem";
    auto run_instance = [](Outcome& out, const SignedGraph& g) {
        ++out.graphs;
        long long s_full = stability_index(g);
        auto witness = exists_total_cycle_config(g);
        ++out.checked;
        if (witness && s_full < 0)
            out.note_violation(detail::describe_graph(g) + " has total-cycle witness " +
                                   witness->to_string() + " but S = " + std::to_string(s_full),
                               serialize_network(g));
        if (s_full >= 0) {
            ++out.qualifying;
            try {
                auto built = construct_period2_threshold(g);
                if (!built)
                    out.note_violation(detail::describe_graph(g) + " S = " +
                                           std::to_string(s_full) +
                                           " but no period-2 construction succeeded",
                                       serialize_network(g));
            } catch (const std::exception& e) {
                out.note_violation(detail::describe_graph(g) + " construction error: " +
                                       e.what(),
                                   serialize_network(g));
            }
        }
    };
    for (int n = 1; n <= scale.max_n; ++n) {
        auto family = connected_signed_family(n);
        std::vector<Outcome> parts(static_cast<std::size_t>(std::max(1, scale.threads)));
        parallel_chunks(
            static_cast<long long>(family.size()), scale.threads,
            [&](int chunk, long long begin, long long end) {
                for (long long gi = begin; gi < end; ++gi)
                    run_instance(parts[static_cast<std::size_t>(chunk)],
                                 family[static_cast<std::size_t>(gi)]);
            },
            [&](int chunk) { total.absorb(parts[static_cast<std::size_t>(chunk)]); });
    }
    if (scale.include_n5_sample) {
        for (const auto& topo : sampled_topologies_n5()) {
            std::vector<Outcome> parts(static_cast<std::size_t>(std::max(1, scale.threads)));
            parallel_chunks(
                sampled_instance_count(topo), scale.threads,
                [&](int chunk, long long begin, long long end) {
                    for (long long idx = begin; idx < end; ++idx)
                        run_instance(parts[static_cast<std::size_t>(chunk)],
                                     sampled_instance(topo, idx));
                },
                [&](int chunk) { total.absorb(parts[static_cast<std::size_t>(chunk)]); });
        }
    }
    return total;
}

// --- Suite: energy laws ---------------------------------------------------
// On every parallel step: flipped vertices have 2 delta_i <= -4 and
// total-flip steps have dL2 <= 4 S(G). Steps inside an attractor also obey
// dL2 <= 4 S(G[V']); that bound is additionally recorded for transient
// steps.
inline Outcome sweep_energy_laws(const Scale& scale) {
    Outcome total;
    total.name = "energy_laws";
    long long transient_subgraph_bound_misses = 0;
    auto run_instance = [&scale](Outcome& out, const SignedGraph& g, long long& transient_misses) {
        const int n = g.n();
        const std::uint32_t full = (1u << n) - 1;
        ++out.graphs;
        auto stab = detail::stability_table(g);
        ThresholdNetwork raw(g);
        std::vector<std::uint32_t> succ;
        detail::for_each_b(n, scale.b_range, [&](const std::vector<int>& b) {
            ThresholdNetwork net(g, b);
            detail::subset_succ(raw, b, full, succ);
            for (std::uint32_t s = 0; s <= full; ++s) {
                ++out.checked;
                Configuration x{s, n};
                Configuration y{succ[s], n};
                auto d = energy_delta(net, x, y);
                for (int i = 0; i < n; ++i)
                    if (((d.flip_mask >> i) & 1) &&
                        d.delta2[static_cast<std::size_t>(i)] > -4)
                        out.note_violation(detail::describe_graph(g) + " " +
                                               detail::describe_b(b) + " x=" + x.to_string() +
                                               " flipped vertex " + std::to_string(i + 1) +
                                               " has 2*delta = " +
                                               std::to_string(
                                                   d.delta2[static_cast<std::size_t>(i)]),
                                           serialize_network(g, b));
                if (d.flip_mask == full && d.dl2 > 4LL * stab[full])
                    out.note_violation(detail::describe_graph(g) + " " + detail::describe_b(b) +
                                           " x=" + x.to_string() + " total flip dL2 = " +
                                           std::to_string(d.dl2) + " > 4 S(G)",
                                       serialize_network(g, b));
                if (d.flip_mask != 0 &&
                    d.dl2 > 4LL * stab[static_cast<std::uint32_t>(d.flip_mask)]) {
                    bool in_attractor = succ[succ[s]] == s;
                    if (in_attractor)
                        out.note_violation(detail::describe_graph(g) + " " +
                                               detail::describe_b(b) + " x=" + x.to_string() +
                                               " attractor step dL2 > 4 S(G[V'])",
                                           serialize_network(g, b));
                    else
                        ++transient_misses;
                }
            }
        });
    };
    for (int n = 1; n <= scale.max_n; ++n) {
        auto family = connected_signed_family(n);
        std::vector<Outcome> parts(static_cast<std::size_t>(std::max(1, scale.threads)));
        std::vector<long long> misses(parts.size(), 0);
        parallel_chunks(
            static_cast<long long>(family.size()), scale.threads,
            [&](int chunk, long long begin, long long end) {
                for (long long gi = begin; gi < end; ++gi)
                    run_instance(parts[static_cast<std::size_t>(chunk)],
                                 family[static_cast<std::size_t>(gi)],
                                 misses[static_cast<std::size_t>(chunk)]);
            },
            [&](int chunk) {
                total.absorb(parts[static_cast<std::size_t>(chunk)]);
                transient_subgraph_bound_misses += misses[static_cast<std::size_t>(chunk)];
            });
    }
    if (scale.include_n5_sample) {
        // n = 5 instances checked at b = 0 and two seeded threshold samples.
        auto run_n5 = [&scale](Outcome& out, const SignedGraph& g, long long index,
                               long long& transient_misses) {
            const int n = g.n();
            const std::uint32_t full = (1u << n) - 1;
            ++out.graphs;
            auto stab = detail::stability_table(g);
            ThresholdNetwork raw(g);
            std::vector<std::uint32_t> succ;
            std::mt19937 rng(scale.seed ^ (0x7F4A7C15u + static_cast<std::uint32_t>(index)));
            for (int bs = 0; bs < 3; ++bs) {
                std::vector<int> b(static_cast<std::size_t>(n), 0);
                if (bs > 0)
                    for (auto& t : b)
                        t = static_cast<int>(rng() % (2u * scale.b_range + 1)) - scale.b_range;
                ThresholdNetwork net(g, b);
                detail::subset_succ(raw, b, full, succ);
                for (std::uint32_t s = 0; s <= full; ++s) {
                    ++out.checked;
                    Configuration x{s, n};
                    Configuration y{succ[s], n};
                    auto d = energy_delta(net, x, y);
                    for (int i = 0; i < n; ++i)
                        if (((d.flip_mask >> i) & 1) &&
                            d.delta2[static_cast<std::size_t>(i)] > -4)
                            out.note_violation(detail::describe_graph(g) +
                                               " n5 sample delta violation");
                    if (d.flip_mask == full && d.dl2 > 4LL * stab[full])
                        out.note_violation(detail::describe_graph(g) +
                                           " n5 sample total-flip bound violation");
                    if (d.flip_mask != 0 &&
                        d.dl2 > 4LL * stab[static_cast<std::uint32_t>(d.flip_mask)]) {
                        if (succ[succ[s]] == s)
                            out.note_violation(detail::describe_graph(g) +
                                               " n5 sample attractor-step subgraph bound");
                        else
                            ++transient_misses;
                    }
                }
            }
        };
        for (const auto& topo : sampled_topologies_n5()) {
            std::vector<Outcome> parts(static_cast<std::size_t>(std::max(1, scale.threads)));
            std::vector<long long> misses(parts.size(), 0);
            parallel_chunks(
                sampled_instance_count(topo), scale.threads,
                [&](int chunk, long long begin, long long end) {
                    for (long long idx = begin; idx < end; ++idx)
                        run_n5(parts[static_cast<std::size_t>(chunk)],
                               sampled_instance(topo, idx), idx,
                               misses[static_cast<std::size_t>(chunk)]);
                },
                [&](int chunk) {
                    total.absorb(parts[static_cast<std::size_t>(chunk)]);
                    transient_subgraph_bound_misses += misses[static_cast<std::size_t>(chunk)];
                });
        }
    }
    total.qualifying = total.checked;
    if (transient_subgraph_bound_misses > 0)
        total.details.push_back("note: " + std::to_string(transient_subgraph_bound_misses) +
                                " transient steps exceeded 4 S(G[V']) (logged, not asserted)");
    return total;
}

// --- Suite: classical parallel results ------------------------------------
// Theorem of eventual period <= 2 on random instances.
inline Outcome sweep_parallel_period(int samples, int max_n, std::uint32_t seed, int threads) {
    Outcome total;
    total.name = "parallel_period_le_2";
    std::vector<Outcome> parts(static_cast<std::size_t>(std::max(1, threads)));
    parallel_chunks(
        samples, threads,
        [&](int chunk, long long begin, long long end) {
            Outcome& out = parts[static_cast<std::size_t>(chunk)];
            for (long long k = begin; k < end; ++k) {
                std::mt19937 rng(seed + static_cast<std::uint32_t>(k) * 2654435761u);
                int n = 1 + static_cast<int>(rng() % static_cast<std::uint32_t>(max_n));
                std::vector<SignedEdge> edges;
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v)
                        if (rng() & 1) edges.push_back({u, v, (rng() & 1) ? +1 : -1});
                std::vector<int> loops(static_cast<std::size_t>(n), 0);
                for (auto& l : loops) {
                    std::uint32_t r = rng() % 3;
                    l = r == 0 ? 0 : (r == 1 ? +1 : -1);
                }
                std::vector<int> b(static_cast<std::size_t>(n), 0);
                for (auto& t : b) t = static_cast<int>(rng() % 7) - 3;
                ThresholdNetwork net(SignedGraph(n, std::move(edges), std::move(loops)), b);
                Configuration x0{rng() & Configuration::full_mask(n), n};
                auto rec = orbit(net, x0, UpdateMode::parallel(n), 1 << 16);
                ++out.checked;
                if (rec.period > 2)
                    out.note_violation("random network sample " + std::to_string(k) +
                                       " reached period " + std::to_string(rec.period));
            }
        },
        [&](int chunk) { total.absorb(parts[static_cast<std::size_t>(chunk)]); });
    total.graphs = total.checked;
    total.qualifying = total.checked;
    return total;
}

// Exhaustive check that the quadratic form is non-negative on every
// direction a parallel step can move along: x^T W x >= 0 for all
// x in {-1,0,1}^n. Restricting to {-1,1}^n would be strictly weaker (a
// negative edge padded with positive loops elsewhere passes it yet
// oscillates); the difference vectors of a step live in {-2,0,2}^n.
inline bool form_nonnegative_on_steps(const SignedGraph& g) {
    const int n = g.n();
    std::vector<int> y(static_cast<std::size_t>(n), -1);
    while (true) {
        long long quad = 0;
        for (int i = 0; i < n; ++i)
            if (g.loop(i) != 0)
                quad += static_cast<long long>(g.loop(i)) * y[static_cast<std::size_t>(i)] *
                        y[static_cast<std::size_t>(i)];
        for (const auto& e : g.edges())
            quad += 2LL * e.sign * y[static_cast<std::size_t>(e.u)] *
                    y[static_cast<std::size_t>(e.v)];
        if (quad < 0) return false;
        int i = 0;
        while (i < n && y[static_cast<std::size_t>(i)] == 1) y[static_cast<std::size_t>(i++)] = -1;
        if (i == n) return true;
        ++y[static_cast<std::size_t>(i)];
    }
}

// Non-negative quadratic form forces fixed points. The instance family mixes
// structured PSD networks with randomly sampled graphs that pass the
// exhaustive form check.
inline Outcome sweep_psd_fixed_points(int max_n, int random_samples, int b_samples,
                                      std::uint32_t seed, int threads) {
    Outcome total;
    total.name = "psd_fixed_points";
    std::vector<SignedGraph> instances;

    // Complete all-positive graphs with positive loops: W is the all-ones
    // matrix, x^T W x = (sum x)^2.
    for (int k = 2; k <= max_n; ++k) {
        std::vector<SignedEdge> edges;
        for (int u = 0; u < k; ++u)
            for (int v = u + 1; v < k; ++v) edges.push_back({u, v, +1});
        instances.emplace_back(k, std::move(edges), std::vector<int>(static_cast<std::size_t>(k), +1));
    }
    // Positive matchings with positive loops: blockwise (x_u + x_v)^2.
    for (int k = 2; k <= max_n; k += 2) {
        std::vector<SignedEdge> edges;
        for (int u = 0; u + 1 < k; u += 2) edges.push_back({u, u + 1, +1});
        instances.emplace_back(k, std::move(edges), std::vector<int>(static_cast<std::size_t>(k), +1));
    }
    // Random graphs kept only when the exhaustive form check passes.
    std::mt19937 rng(seed);
    for (int t = 0; t < random_samples; ++t) {
        int n = 2 + static_cast<int>(rng() % static_cast<std::uint32_t>(max_n - 1));
        std::vector<SignedEdge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 3 == 0) edges.push_back({u, v, (rng() & 1) ? +1 : -1});
        std::vector<int> loops(static_cast<std::size_t>(n), 0);
        for (auto& l : loops) l = (rng() & 1) ? +1 : 0;
        instances.emplace_back(n, std::move(edges), std::move(loops));
    }

    std::vector<Outcome> parts(static_cast<std::size_t>(std::max(1, threads)));
    parallel_chunks(
        static_cast<long long>(instances.size()), threads,
        [&](int chunk, long long begin, long long end) {
            Outcome& out = parts[static_cast<std::size_t>(chunk)];
            for (long long gi = begin; gi < end; ++gi) {
                const SignedGraph& g = instances[static_cast<std::size_t>(gi)];
                const int n = g.n();
                ++out.graphs;
                if (!form_nonnegative_on_steps(g)) continue;
                ++out.qualifying;
                std::mt19937 brng(seed ^ (0x85EBCA6Bu + static_cast<std::uint32_t>(gi)));
                for (int bs = 0; bs <= b_samples; ++bs) {
                    std::vector<int> b(static_cast<std::size_t>(n), 0);
                    if (bs > 0)
                        for (auto& t : b) t = static_cast<int>(brng() % 5) - 2;
                    ThresholdNetwork net(g, b);
                    auto atlas = enumerate_attractors(net, UpdateMode::parallel(n));
                    ++out.checked;
                    for (const auto& a : atlas.attractors)
                        if (a.period != 1)
                            out.note_violation(detail::describe_graph(g) + " " +
                                                   detail::describe_b(b) +
                                                   " PSD instance reached period " +
                                                   std::to_string(a.period),
                                               serialize_network(g, b));
                }
            }
        },
        [&](int chunk) { total.absorb(parts[static_cast<std::size_t>(chunk)]); });
    return total;
}

}  // namespace signet::sweeps
