#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "signet/errors.hpp"

namespace signet {

// Undirected edge with endpoints normalised to u < v. Vertices are 0-based
// internally; every file format and report uses 1-based ids.
struct SignedEdge {
    int u = 0;
    int v = 0;
    int sign = +1;

    friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
    friend bool operator<(const SignedEdge& a, const SignedEdge& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.sign < b.sign;
    }
};

struct Neighbor {
    int vertex;
    int sign;
};

// Undirected signed graph with optional signed self-loops. Immutable after
// construction; safe to share across threads.
class SignedGraph {
public:
    SignedGraph() = default;

    SignedGraph(int n, std::vector<SignedEdge> edges, std::vector<int> loops = {})
        : n_(n), edges_(std::move(edges)), loop_(std::move(loops)) {
        if (n_ < 1) throw ParseError("node count must be at least 1");
        loop_.resize(static_cast<std::size_t>(n_), 0);
        for (auto& e : edges_) {
            if (e.u == e.v) throw ParseError("self-edge must be declared as a loop");
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u < 0 || e.v >= n_) throw ParseError("edge endpoint out of range");
            if (e.sign != 1 && e.sign != -1) throw ParseError("edge sign must be +1 or -1");
        }
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
                throw ParseError("duplicate edge");
        for (int s : loop_)
            if (s != -1 && s != 0 && s != 1) throw ParseError("loop sign must be +1 or -1");
        build_adjacency();
    }

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }

    int d_plus() const { return d_plus_; }
    int d_minus() const { return d_minus_; }

    const std::vector<SignedEdge>& edges() const { return edges_; }

    // 0 when vertex i has no self-loop.
    int loop(int i) const { return loop_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& loops() const { return loop_; }

    std::span<const Neighbor> neighbors(int i) const {
        auto begin = adj_index_[static_cast<std::size_t>(i)];
        auto end = adj_index_[static_cast<std::size_t>(i) + 1];
        return {adj_.data() + begin, adj_.data() + end};
    }

    int degree(int i) const {
        return static_cast<int>(adj_index_[static_cast<std::size_t>(i) + 1] -
                                adj_index_[static_cast<std::size_t>(i)]);
    }

    // Interaction-matrix entry w_ij; the diagonal carries the loop sign.
    int w(int i, int j) const {
        if (i == j) return loop(i);
        for (const auto& nb : neighbors(i))
            if (nb.vertex == j) return nb.sign;
        return 0;
    }

    // The full symmetric interaction matrix W(G) with entries in {-1,0,+1}.
    std::vector<std::vector<int>> interaction_matrix() const {
        std::vector<std::vector<int>> w(static_cast<std::size_t>(n_),
                                        std::vector<int>(static_cast<std::size_t>(n_), 0));
        for (const auto& e : edges_) {
            w[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = e.sign;
            w[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = e.sign;
        }
        for (int i = 0; i < n_; ++i)
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
                loop_[static_cast<std::size_t>(i)];
        return w;
    }

    SignedGraph negated() const {
        std::vector<SignedEdge> flipped = edges_;
        for (auto& e : flipped) e.sign = -e.sign;
        std::vector<int> loops = loop_;
        for (auto& s : loops) s = -s;
        return {n_, std::move(flipped), std::move(loops)};
    }

    // Subgraph induced by `vertices` (0-based, non-empty, in range). Vertices
    // are renumbered in the order given; the mapping new -> old is returned.
    std::pair<SignedGraph, std::vector<int>> induced(std::vector<int> vertices) const {
        if (vertices.empty()) throw PreconditionError("induced subgraph needs a non-empty vertex set");
        std::sort(vertices.begin(), vertices.end());
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
        std::vector<int> position(static_cast<std::size_t>(n_), -1);
        for (std::size_t k = 0; k < vertices.size(); ++k) {
            int v = vertices[k];
            if (v < 0 || v >= n_) throw PreconditionError("induced subgraph vertex out of range");
            position[static_cast<std::size_t>(v)] = static_cast<int>(k);
        }
        std::vector<SignedEdge> kept;
        for (const auto& e : edges_) {
            int pu = position[static_cast<std::size_t>(e.u)];
            int pv = position[static_cast<std::size_t>(e.v)];
            if (pu >= 0 && pv >= 0) kept.push_back({pu, pv, e.sign});
        }
        std::vector<int> loops(vertices.size(), 0);
        for (std::size_t k = 0; k < vertices.size(); ++k)
            loops[k] = loop_[static_cast<std::size_t>(vertices[k])];
        return {SignedGraph(static_cast<int>(vertices.size()), std::move(kept), std::move(loops)),
                std::move(vertices)};
    }

    std::pair<SignedGraph, std::vector<int>> induced_mask(std::uint64_t mask) const {
        std::vector<int> vs;
        for (int i = 0; i < n_ && i < 64; ++i)
            if ((mask >> i) & 1) vs.push_back(i);
        return induced(std::move(vs));
    }

    // Connected components over edges (loops do not connect anything).
    std::vector<std::vector<int>> components() const {
        std::vector<int> comp(static_cast<std::size_t>(n_), -1);
        std::vector<std::vector<int>> out;
        std::vector<int> stack;
        for (int s = 0; s < n_; ++s) {
            if (comp[static_cast<std::size_t>(s)] >= 0) continue;
            int id = static_cast<int>(out.size());
            out.emplace_back();
            stack.push_back(s);
            comp[static_cast<std::size_t>(s)] = id;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                out[static_cast<std::size_t>(id)].push_back(u);
                for (const auto& nb : neighbors(u)) {
                    if (comp[static_cast<std::size_t>(nb.vertex)] < 0) {
                        comp[static_cast<std::size_t>(nb.vertex)] = id;
                        stack.push_back(nb.vertex);
                    }
                }
            }
            std::sort(out.back().begin(), out.back().end());
        }
        return out;
    }

    friend bool operator==(const SignedGraph& a, const SignedGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.loop_ == b.loop_;
    }

private:
    void build_adjacency() {
        d_plus_ = d_minus_ = 0;
        for (int s : loop_) {
            if (s > 0) ++d_plus_;
            if (s < 0) ++d_minus_;
        }
        std::vector<int> count(static_cast<std::size_t>(n_), 0);
        for (const auto& e : edges_) {
            ++count[static_cast<std::size_t>(e.u)];
            ++count[static_cast<std::size_t>(e.v)];
        }
        adj_index_.assign(static_cast<std::size_t>(n_) + 1, 0);
        for (int i = 0; i < n_; ++i)
            adj_index_[static_cast<std::size_t>(i) + 1] =
                adj_index_[static_cast<std::size_t>(i)] + count[static_cast<std::size_t>(i)];
        adj_.resize(static_cast<std::size_t>(adj_index_.back()));
        std::vector<std::size_t> cursor(adj_index_.begin(), adj_index_.end() - 1);
        for (const auto& e : edges_) {
            adj_[cursor[static_cast<std::size_t>(e.u)]++] = {e.v, e.sign};
            adj_[cursor[static_cast<std::size_t>(e.v)]++] = {e.u, e.sign};
        }
    }

    int n_ = 0;
    std::vector<SignedEdge> edges_;
    std::vector<int> loop_;
    int d_plus_ = 0;
    int d_minus_ = 0;
    std::vector<Neighbor> adj_;
    std::vector<std::size_t> adj_index_;
};

}  // namespace signet
