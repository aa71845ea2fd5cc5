#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "signet/graph.hpp"

namespace signet {

// Witness for a balance verdict: a consistent switching when balanced, one
// negative cycle (as a vertex sequence) when not. Self-loops are ignored by
// balance and antibalance; they only enter the stability index through
// d+/d-.
struct BalanceResult {
    bool balanced = false;
    std::vector<int> switching;           // per-vertex +1/-1 when balanced
    std::vector<int> negative_cycle;      // closed walk v0..vk (v0 repeated) when not
};

// Spanning-tree switching propagation per component, then a consistency check
// on the non-tree edges. Each component's lowest vertex is pinned to +1,
// which is the lexicographically smallest consistent switching ('+' < '-').
inline BalanceResult is_balanced(const SignedGraph& g) {
    const int n = g.n();
    std::vector<int> s(static_cast<std::size_t>(n), 0);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);

    BalanceResult out;
    for (int root = 0; root < n; ++root) {
        if (s[static_cast<std::size_t>(root)] != 0) continue;
        s[static_cast<std::size_t>(root)] = +1;
        std::vector<int> queue{root};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            for (const auto& nb : g.neighbors(u)) {
                int v = nb.vertex;
                if (s[static_cast<std::size_t>(v)] == 0) {
                    s[static_cast<std::size_t>(v)] = s[static_cast<std::size_t>(u)] * nb.sign;
                    parent[static_cast<std::size_t>(v)] = u;
                    queue.push_back(v);
                } else if (nb.sign * s[static_cast<std::size_t>(u)] * s[static_cast<std::size_t>(v)] < 0) {
                    // Negative cycle: tree path u -> lca <- v plus edge (v, u).
                    std::vector<int> up, vp;
                    std::vector<char> on_u(static_cast<std::size_t>(n), 0);
                    for (int a = u; a != -1; a = parent[static_cast<std::size_t>(a)]) {
                        up.push_back(a);
                        on_u[static_cast<std::size_t>(a)] = 1;
                    }
                    int meet = v;
                    while (!on_u[static_cast<std::size_t>(meet)])
                        meet = parent[static_cast<std::size_t>(meet)];
                    for (int a = v; a != meet; a = parent[static_cast<std::size_t>(a)]) vp.push_back(a);
                    out.balanced = false;
                    out.negative_cycle.clear();
                    for (int a : up) {
                        out.negative_cycle.push_back(a);
                        if (a == meet) break;
                    }
                    std::reverse(vp.begin(), vp.end());
                    for (int a : vp) out.negative_cycle.push_back(a);
                    out.negative_cycle.push_back(u);
                    return out;
                }
            }
        }
    }
    out.balanced = true;
    out.switching = std::move(s);
    return out;
}

inline bool is_antibalanced(const SignedGraph& g) { return is_balanced(g.negated()).balanced; }

}  // namespace signet
