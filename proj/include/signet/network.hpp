#pragma once

#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "signet/configuration.hpp"
#include "signet/graph.hpp"

namespace signet {

// Ordered sequence of vertex subsets (I_1, ..., I_l); F_mu applies them left
// to right, parallel within each subset. Subsets are stored as bit masks.
struct UpdateMode {
    std::vector<std::uint64_t> steps;
    int n = 0;

    int length() const { return static_cast<int>(steps.size()); }

    // The mode's size r = max |I_k|.
    int size_r() const {
        int r = 0;
        for (auto m : steps) r = std::max(r, std::popcount(m));
        return r;
    }

    bool is_parallel() const {
        return steps.size() == 1 && steps[0] == Configuration::full_mask(n);
    }

    static UpdateMode parallel(int n) { return {{Configuration::full_mask(n)}, n}; }

    // Accepted spellings (1-based vertex ids):
    //   parallel
    //   seq:1,2,4,3
    //   {3,5};{1,2,7,8};{4,6};{1,2,7,8}
    static UpdateMode parse(const std::string& text, int n);

    std::string format() const {
        if (is_parallel()) return "parallel";
        std::ostringstream out;
        bool all_singletons = true;
        for (auto m : steps)
            if (std::popcount(m) != 1) all_singletons = false;
        if (all_singletons) {
            out << "seq:";
            for (std::size_t k = 0; k < steps.size(); ++k) {
                if (k) out << ",";
                out << std::countr_zero(steps[k]) + 1;
            }
            return out.str();
        }
        for (std::size_t k = 0; k < steps.size(); ++k) {
            if (k) out << ";";
            out << "{";
            bool first = true;
            for (int i = 0; i < n; ++i)
                if ((steps[k] >> i) & 1) {
                    if (!first) out << ",";
                    out << i + 1;
                    first = false;
                }
            out << "}";
        }
        return out.str();
    }
};

inline UpdateMode UpdateMode::parse(const std::string& text, int n) {
    if (n < 1 || n > 64) throw ParseError("update modes support 1 to 64 vertices");
    UpdateMode mode;
    mode.n = n;
    if (text == "parallel") {
        mode.steps.push_back(Configuration::full_mask(n));
        return mode;
    }
    auto vertex = [&](const std::string& tok) {
        int v;
        try {
            std::size_t pos = 0;
            v = std::stoi(tok, &pos);
            if (pos != tok.size()) throw ParseError("");
        } catch (const std::exception&) {
            throw ParseError("malformed vertex id '" + tok + "' in update mode");
        }
        if (v < 1 || v > n)
            throw ParseError("update-mode vertex " + std::to_string(v) + " out of range [1, " +
                             std::to_string(n) + "]");
        return v - 1;
    };
    if (text.rfind("seq:", 0) == 0) {
        std::istringstream ss(text.substr(4));
        std::string tok;
        while (std::getline(ss, tok, ','))
            mode.steps.push_back(std::uint64_t{1} << vertex(tok));
        if (mode.steps.empty()) throw ParseError("empty sequential update mode");
        return mode;
    }
    std::istringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        if (group.size() < 2 || group.front() != '{' || group.back() != '}')
            throw ParseError("update-mode set must be written {v,v,...}");
        std::uint64_t mask = 0;
        std::istringstream ss(group.substr(1, group.size() - 2));
        std::string tok;
        while (std::getline(ss, tok, ',')) mask |= std::uint64_t{1} << vertex(tok);
        if (mask == 0) throw ParseError("update-mode sets must be non-empty");
        mode.steps.push_back(mask);
    }
    if (mode.steps.empty()) throw ParseError("empty update mode");
    return mode;
}

// A signed graph together with an integer threshold per vertex. Local rule:
// sign of (sum_j w_ij x_j - b_i), keeping the current state on a tie.
// Requires n <= 64 so configurations pack into one word.
class ThresholdNetwork {
public:
    ThresholdNetwork() = default;

    explicit ThresholdNetwork(SignedGraph graph, std::vector<int> thresholds = {})
        : g_(std::move(graph)), b_(std::move(thresholds)) {
        if (g_.n() > 64) throw PreconditionError("threshold networks support at most 64 vertices");
        b_.resize(static_cast<std::size_t>(g_.n()), 0);
        const int n = g_.n();
        pos_.assign(static_cast<std::size_t>(n), 0);
        neg_.assign(static_cast<std::size_t>(n), 0);
        for (const auto& e : g_.edges()) {
            auto& mu = e.sign > 0 ? pos_ : neg_;
            mu[static_cast<std::size_t>(e.u)] |= std::uint64_t{1} << e.v;
            mu[static_cast<std::size_t>(e.v)] |= std::uint64_t{1} << e.u;
        }
        for (int i = 0; i < n; ++i) {
            if (g_.loop(i) > 0) pos_[static_cast<std::size_t>(i)] |= std::uint64_t{1} << i;
            if (g_.loop(i) < 0) neg_[static_cast<std::size_t>(i)] |= std::uint64_t{1} << i;
        }
        base_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            base_[static_cast<std::size_t>(i)] =
                std::popcount(neg_[static_cast<std::size_t>(i)]) -
                std::popcount(pos_[static_cast<std::size_t>(i)]);
    }

    const SignedGraph& graph() const { return g_; }
    const std::vector<int>& thresholds() const { return b_; }
    int n() const { return g_.n(); }

    // sum_j w_ij x_j, including the self-loop term.
    int raw_field(std::uint64_t bits, int i) const {
        return 2 * (std::popcount(pos_[static_cast<std::size_t>(i)] & bits) -
                    std::popcount(neg_[static_cast<std::size_t>(i)] & bits)) +
               base_[static_cast<std::size_t>(i)];
    }

    int local_field(const Configuration& x, int i) const {
        return raw_field(x.bits, i) - b_[static_cast<std::size_t>(i)];
    }

    int local_update(const Configuration& x, int i) const {
        int f = local_field(x, i);
        if (f > 0) return +1;
        if (f < 0) return -1;
        return x.state(i);
    }

    // -x_i * local_field; vertex i flips under its local rule iff >= 1.
    int flip_margin(const Configuration& x, int i) const {
        return -x.state(i) * local_field(x, i);
    }

    // Update the vertices in `mask` simultaneously against the incoming x.
    Configuration apply_set(const Configuration& x, std::uint64_t mask) const {
        Configuration out = x;
        std::uint64_t rest = mask;
        while (rest) {
            int i = std::countr_zero(rest);
            rest &= rest - 1;
            int f = raw_field(x.bits, i) - b_[static_cast<std::size_t>(i)];
            if (f > 0)
                out.bits |= std::uint64_t{1} << i;
            else if (f < 0)
                out.bits &= ~(std::uint64_t{1} << i);
        }
        return out;
    }

    // One application of F_mu; when `substeps` is given, the configuration
    // after every f_{I_k} is appended to it.
    Configuration apply_mode(Configuration x, const UpdateMode& mode,
                             std::vector<Configuration>* substeps = nullptr) const {
        for (auto mask : mode.steps) {
            x = apply_set(x, mask);
            if (substeps) substeps->push_back(x);
        }
        return x;
    }

private:
    SignedGraph g_;
    std::vector<int> b_;
    std::vector<std::uint64_t> pos_, neg_;
    std::vector<int> base_;
};

}  // namespace signet
