#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "signet/balance.hpp"
#include "signet/configuration.hpp"
#include "signet/graph.hpp"

namespace signet {

enum class FrustrationMode { balance, antibalance };

struct FrustrationOptions {
    int exact_max_n = 30;       // guard for the exhaustive switching search
    bool heuristic_ok = false;  // above the guard, fall back to local search
    int heuristic_restarts = 32;
};

struct FrustrationResult {
    long long count = 0;
    bool exact = true;
    std::vector<SignedEdge> witness_edges;  // deleting these yields balance/antibalance
    std::vector<int> switching;             // per-vertex +1/-1 attaining the minimum
};

namespace detail {

// Exhaustive minimum over switchings of one connected component, with
// branch-and-bound on the running unsatisfied count. The component's lowest
// vertex is pinned to +1 (negating a switching preserves the unsatisfied
// set). Ties pick the lexicographically smallest switching, '+' first.
class ComponentSearch {
public:
    ComponentSearch(const std::vector<int>& vertices,
                    const std::vector<std::vector<std::pair<int, int>>>& adj)
        : vertices_(vertices) {
        const std::size_t k = vertices.size();
        order_.reserve(k);
        local_.assign(adj.size(), -1);
        // BFS from the smallest vertex so every later vertex closes edges
        // against already-assigned ones.
        std::vector<char> seen(adj.size(), 0);
        std::vector<int> queue{vertices.front()};
        seen[static_cast<std::size_t>(vertices.front())] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            local_[static_cast<std::size_t>(u)] = static_cast<int>(order_.size());
            order_.push_back(u);
            for (const auto& nb : adj[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(nb.first)]) {
                    seen[static_cast<std::size_t>(nb.first)] = 1;
                    queue.push_back(nb.first);
                }
            }
        }
        back_edges_.assign(k, {});
        for (std::size_t p = 0; p < order_.size(); ++p) {
            int u = order_[p];
            for (auto [v, sign] : adj[static_cast<std::size_t>(u)]) {
                int q = local_[static_cast<std::size_t>(v)];
                if (q >= 0 && static_cast<std::size_t>(q) < p)
                    back_edges_[p].push_back({q, sign});
            }
        }
        assign_.assign(k, +1);
        best_assign_.assign(k, +1);
    }

    long long run() {
        best_ = count_full(best_assign_);
        dfs(1, 0);
        return best_;
    }

    // Switching indexed by original vertex id.
    void write_switching(std::vector<int>& out) const {
        for (std::size_t p = 0; p < order_.size(); ++p)
            out[static_cast<std::size_t>(order_[p])] = best_assign_[p];
    }

private:
    long long count_full(const std::vector<int>& a) const {
        long long c = 0;
        for (std::size_t p = 0; p < back_edges_.size(); ++p)
            for (auto [q, sign] : back_edges_[p])
                if (sign * a[p] * a[static_cast<std::size_t>(q)] < 0) ++c;
        return c;
    }

    // Lexicographic order over the original vertex ids, '+' before '-'.
    bool lex_smaller(const std::vector<int>& a, const std::vector<int>& b) const {
        for (int v : vertices_) {
            int p = local_[static_cast<std::size_t>(v)];
            int av = a[static_cast<std::size_t>(p)];
            int bv = b[static_cast<std::size_t>(p)];
            if (av != bv) return av > bv;
        }
        return false;
    }

    void dfs(std::size_t pos, long long unsat) {
        if (unsat > best_) return;
        if (pos == order_.size()) {
            if (unsat < best_ || (unsat == best_ && lex_smaller(assign_, best_assign_))) {
                best_ = unsat;
                best_assign_ = assign_;
            }
            return;
        }
        for (int value : {+1, -1}) {
            assign_[pos] = value;
            long long added = 0;
            for (auto [q, sign] : back_edges_[pos])
                if (sign * value * assign_[static_cast<std::size_t>(q)] < 0) ++added;
            dfs(pos + 1, unsat + added);
        }
        assign_[pos] = +1;
    }

    const std::vector<int>& vertices_;
    std::vector<int> order_;
    std::vector<int> local_;
    std::vector<std::vector<std::pair<int, int>>> back_edges_;
    std::vector<int> assign_, best_assign_;
    long long best_ = 0;
};

inline long long count_unsatisfied(const std::vector<SignedEdge>& edges, const std::vector<int>& s) {
    long long c = 0;
    for (const auto& e : edges)
        if (e.sign * s[static_cast<std::size_t>(e.u)] * s[static_cast<std::size_t>(e.v)] < 0) ++c;
    return c;
}

// Steepest-descent local search with deterministic multistart. Results are
// not certified optimal.
inline std::vector<int> heuristic_switching(int n, const std::vector<SignedEdge>& edges,
                                            int restarts) {
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
    for (const auto& e : edges) {
        adj[static_cast<std::size_t>(e.u)].push_back({e.v, e.sign});
        adj[static_cast<std::size_t>(e.v)].push_back({e.u, e.sign});
    }
    std::vector<int> best(static_cast<std::size_t>(n), +1);
    long long best_count = count_unsatisfied(edges, best);
    std::mt19937 rng(0x51637u);
    for (int attempt = 0; attempt < restarts; ++attempt) {
        std::vector<int> s(static_cast<std::size_t>(n), +1);
        if (attempt > 0)
            for (auto& v : s) v = (rng() & 1) ? +1 : -1;
        // Net gain of flipping u = (unsat incident) - (sat incident).
        while (true) {
            int flip = -1;
            long long gain = 0;
            for (int u = 0; u < n; ++u) {
                long long g = 0;
                for (auto [v, sign] : adj[static_cast<std::size_t>(u)])
                    g += (sign * s[static_cast<std::size_t>(u)] * s[static_cast<std::size_t>(v)] < 0)
                             ? 1
                             : -1;
                if (g > gain) {
                    gain = g;
                    flip = u;
                }
            }
            if (flip < 0) break;
            s[static_cast<std::size_t>(flip)] = -s[static_cast<std::size_t>(flip)];
        }
        long long c = count_unsatisfied(edges, s);
        if (c < best_count) {
            best_count = c;
            best = std::move(s);
        }
    }
    return best;
}

}  // namespace detail

// phi(G) for mode balance, rho(G) = phi(-G) for mode antibalance. Loops
// never count: a loop's sign is switching-invariant and both indices are
// defined over edge sets only.
inline FrustrationResult frustration_index(const SignedGraph& g, FrustrationMode mode,
                                           const FrustrationOptions& opt = {}) {
    const int n = g.n();
    std::vector<SignedEdge> search_edges = g.edges();
    if (mode == FrustrationMode::antibalance)
        for (auto& e : search_edges) e.sign = -e.sign;

    FrustrationResult out;
    out.switching.assign(static_cast<std::size_t>(n), +1);

    if (n > opt.exact_max_n) {
        if (!opt.heuristic_ok)
            throw GuardError("exact frustration search guarded at n <= " +
                             std::to_string(opt.exact_max_n) +
                             " (pass heuristic_ok for an uncertified bound)");
        out.switching = detail::heuristic_switching(n, search_edges, opt.heuristic_restarts);
        out.exact = false;
    } else {
        std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
        for (const auto& e : search_edges) {
            adj[static_cast<std::size_t>(e.u)].push_back({e.v, e.sign});
            adj[static_cast<std::size_t>(e.v)].push_back({e.u, e.sign});
        }
        for (const auto& comp : g.components()) {
            detail::ComponentSearch search(comp, adj);
            search.run();
            search.write_switching(out.switching);
        }
        out.exact = true;
    }

    for (std::size_t i = 0; i < search_edges.size(); ++i) {
        const auto& e = search_edges[i];
        if (e.sign * out.switching[static_cast<std::size_t>(e.u)] *
                out.switching[static_cast<std::size_t>(e.v)] <
            0)
            out.witness_edges.push_back(g.edges()[i]);
    }
    out.count = static_cast<long long>(out.witness_edges.size());
    return out;
}

// S(G) = -n - d+ + d- + 2m - 4*rho, rho exact.
inline long long stability_index(const SignedGraph& g, const FrustrationOptions& opt = {}) {
    auto rho = frustration_index(g, FrustrationMode::antibalance, opt);
    return -static_cast<long long>(g.n()) - g.d_plus() + g.d_minus() +
           2LL * g.m() - 4LL * rho.count;
}

struct SubgraphStability {
    long long value = 0;
    std::vector<int> vertices;  // 0-based attaining set
};

// Maximum of the stability index over all non-empty induced subgraphs. The
// first attaining vertex set in mask order (vertex 1 = lowest bit) is kept.
inline SubgraphStability max_subgraph_stability(const SignedGraph& g, int scan_guard = 16) {
    if (g.n() > scan_guard)
        throw GuardError("induced-subgraph scan guarded at n <= " + std::to_string(scan_guard));
    SubgraphStability best;
    bool have = false;
    const std::uint64_t all = Configuration::full_mask(g.n());
    for (std::uint64_t mask = 1; mask <= all; ++mask) {
        auto [sub, verts] = g.induced_mask(mask);
        long long s = stability_index(sub);
        if (!have || s > best.value) {
            have = true;
            best.value = s;
            best.vertices = verts;
        }
    }
    return best;
}

// phi(x) = sum over edges of (-z_uv) x_u x_v; loops excluded.
inline long long phi_form(const SignedGraph& g, const Configuration& x) {
    if (x.n != g.n()) throw PreconditionError("configuration size does not match graph");
    long long total = 0;
    for (const auto& e : g.edges()) total += -e.sign * x.state(e.u) * x.state(e.v);
    return total;
}

// Edge partition from the energy-bound proof: same-state vs differing-state
// endpoints crossed with the sign of w-bar = -w.
struct AlignmentCounts {
    long long e_pp = 0;  // x_u = x_v = +1, w-bar = +1
    long long e_pm = 0;  // x_u = x_v = +1, w-bar = -1
    long long e_mp = 0;  // x_u = x_v = -1, w-bar = +1
    long long e_mm = 0;  // x_u = x_v = -1, w-bar = -1
    long long delta_p = 0;  // x_u != x_v, w-bar = +1
    long long delta_m = 0;  // x_u != x_v, w-bar = -1

    long long total() const { return e_pp + e_pm + e_mp + e_mm + delta_p + delta_m; }
    long long phi() const { return (e_pp + e_mp + delta_m) - (e_pm + e_mm + delta_p); }
};

inline AlignmentCounts alignment_partition(const SignedGraph& g, const Configuration& x) {
    if (x.n != g.n()) throw PreconditionError("configuration size does not match graph");
    AlignmentCounts c;
    for (const auto& e : g.edges()) {
        int wbar = -e.sign;
        if (x.state(e.u) == x.state(e.v)) {
            if (x.state(e.u) > 0)
                (wbar > 0 ? c.e_pp : c.e_pm)++;
            else
                (wbar > 0 ? c.e_mp : c.e_mm)++;
        } else {
            (wbar > 0 ? c.delta_p : c.delta_m)++;
        }
    }
    return c;
}

struct StructureReport {
    int n = 0, m = 0, d_plus = 0, d_minus = 0;
    long long phi = 0;
    long long rho = 0;
    long long stability = 0;
    bool balanced = false;
    bool antibalanced = false;
    bool exact = true;
    std::vector<int> witness_switching;      // optimal antibalance switching
    std::vector<SignedEdge> witness_edges;   // removal makes the graph antibalanced
};

inline StructureReport structure_report(const SignedGraph& g, const FrustrationOptions& opt = {}) {
    StructureReport r;
    r.n = g.n();
    r.m = g.m();
    r.d_plus = g.d_plus();
    r.d_minus = g.d_minus();
    auto phi = frustration_index(g, FrustrationMode::balance, opt);
    auto rho = frustration_index(g, FrustrationMode::antibalance, opt);
    r.phi = phi.count;
    r.rho = rho.count;
    r.exact = phi.exact && rho.exact;
    r.stability = -static_cast<long long>(r.n) - r.d_plus + r.d_minus + 2LL * r.m - 4LL * r.rho;
    r.balanced = (r.phi == 0);
    r.antibalanced = (r.rho == 0);
    r.witness_switching = rho.switching;
    r.witness_edges = rho.witness_edges;
    return r;
}

}  // namespace signet
