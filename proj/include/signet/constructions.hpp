#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "signet/dynamics.hpp"
#include "signet/network.hpp"

namespace signet {

namespace detail {

// Just enough unsigned bignum for exact prime products: base-1e9 limbs,
// multiply by a machine word, decimal printing.
class BigUint {
public:
    BigUint() : limbs_{0} {}
    explicit BigUint(std::uint64_t v) {
        do {
            limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
            v /= kBase;
        } while (v);
    }

    BigUint& operator*=(std::uint64_t factor) {
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * factor + carry;
            limb = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
        }
        while (carry) {
            limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
            carry /= kBase;
        }
        return *this;
    }

    bool fits_u64() const {
        if (limbs_.size() > 3) return false;
        unsigned __int128 v = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
        return v <= ~std::uint64_t{0};
    }

    std::uint64_t as_u64() const {
        std::uint64_t v = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
        return v;
    }

    std::string to_string() const {
        std::string out = std::to_string(limbs_.back());
        for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
            std::string part = std::to_string(limbs_[i]);
            out += std::string(9 - part.size(), '0') + part;
        }
        return out;
    }

private:
    static constexpr std::uint64_t kBase = 1000000000;
    std::vector<std::uint32_t> limbs_;  // little-endian
};

}  // namespace detail

struct PrimeSummary {
    std::vector<int> primes;       // all primes <= m
    int pi = 0;                    // pi(m)
    detail::BigUint product;       // exact product of the primes
    double theta = 0.0;            // sum of log(k), the log of the product
};

inline PrimeSummary primes_up_to(int m) {
    if (m < 2) throw PreconditionError("primes_up_to requires m >= 2");
    std::vector<bool> composite(static_cast<std::size_t>(m) + 1, false);
    PrimeSummary out;
    out.product = detail::BigUint(1);
    for (int k = 2; k <= m; ++k) {
        if (composite[static_cast<std::size_t>(k)]) continue;
        out.primes.push_back(k);
        out.product *= static_cast<std::uint64_t>(k);
        out.theta += std::log(static_cast<double>(k));
        for (long long j = static_cast<long long>(k) * k; j <= m; j += k)
            composite[static_cast<std::size_t>(j)] = true;
    }
    out.pi = static_cast<int>(out.primes.size());
    return out;
}

// Cycle C_n, all edges positive, a negative loop on every vertex, b = 0.
// This realises the unstable-majority tie rule structurally.
inline ThresholdNetwork unstable_majority_cycle(int n) {
    if (n < 3) throw PreconditionError("unstable_majority_cycle requires n >= 3");
    std::vector<SignedEdge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, +1});
    std::vector<int> loops(static_cast<std::size_t>(n), -1);
    return ThresholdNetwork(SignedGraph(n, std::move(edges), std::move(loops)));
}

struct LongCycleSchedule {
    UpdateMode mode;
    Configuration seed;
};

namespace detail {

// The n = 8 schedule generalised: odd interior vertices, the flank
// {1, 2, n-1, n}, even interior vertices, the flank again; seed +1 at
// vertices 2 and n-1. Offsets shift the vertex ids for block embeddings.
inline LongCycleSchedule long_cycle_candidate(int n, int offset, int total) {
    std::uint64_t odd = 0, even = 0, flank = 0;
    for (int v = 3; v <= n - 3; v += 2) odd |= std::uint64_t{1} << (offset + v - 1);
    for (int v = 4; v <= n - 2; v += 2) even |= std::uint64_t{1} << (offset + v - 1);
    for (int v : {1, 2, n - 1, n}) flank |= std::uint64_t{1} << (offset + v - 1);
    LongCycleSchedule out;
    out.mode = UpdateMode{{odd, flank, even, flank}, total};
    out.seed = Configuration::all_minus(total);
    out.seed.set_state(offset + 1, +1);      // vertex 2 of the block
    out.seed.set_state(offset + n - 2, +1);  // vertex n-1 of the block
    return out;
}

}  // namespace detail

// Certified schedule with attractor period n - 3 on the unstable-majority
// cycle. n = 8 is the reference schedule ({3,5},{1,2,7,8},{4,6},{1,2,7,8})
// with seed -+----+-; larger even n extend the interior blocks along the
// added vertices. Certification failure is a hard error.
inline LongCycleSchedule long_cycle_schedule(int n) {
    if (n < 8 || n % 2 != 0)
        throw PreconditionError("long-cycle schedules exist for even n >= 8");
    auto candidate = detail::long_cycle_candidate(n, 0, n);
    ThresholdNetwork net = unstable_majority_cycle(n);
    auto rec = orbit(net, candidate.seed, candidate.mode, 4LL * n + 64);
    if (rec.transient != 0 || rec.period != n - 3)
        throw CertificationError("long-cycle schedule for n = " + std::to_string(n) +
                                 " certified period " + std::to_string(rec.period) +
                                 ", expected " + std::to_string(n - 3));
    return candidate;
}

struct CycleNetworkSpec {
    int n = 0;
    ThresholdNetwork network;
    UpdateMode schedule;
    Configuration seed;
    long long expected_period = 0;  // n - 3, enforced at construction
};

inline CycleNetworkSpec make_cycle_spec(int n) {
    CycleNetworkSpec spec;
    spec.n = n;
    spec.network = unstable_majority_cycle(n);
    auto sched = long_cycle_schedule(n);
    spec.schedule = sched.mode;
    spec.seed = sched.seed;
    spec.expected_period = n - 3;
    return spec;
}

enum class SuperPolyLayout { disjoint, concatenated };

inline const char* to_string(SuperPolyLayout layout) {
    return layout == SuperPolyLayout::disjoint ? "disjoint" : "concatenated";
}

struct SuperPolySpec {
    int m = 0;
    SuperPolyLayout layout = SuperPolyLayout::disjoint;
    std::vector<int> prime_list;   // primes in [5, m]
    std::vector<int> block_sizes;  // k + 3 per prime
    int total_nodes = 0;
    ThresholdNetwork network;
    UpdateMode schedule;
    Configuration seed;
    long long predicted_period = 0;  // product of the primes
    long long measured_period = -1;  // filled by certification
    std::string finding;             // non-empty when concatenated certification disagrees
};

// Runs a construction's seed under its schedule and returns the measured
// period.
// The step budget is in applications of F_mu.
inline long long certify_period(const ThresholdNetwork& net, const UpdateMode& mode,
                                const Configuration& seed, long long step_budget) {
    auto rec = orbit(net, seed, mode, step_budget);
    return rec.period;
}

inline long long certify_cycle_spec(const CycleNetworkSpec& spec, long long step_budget) {
    long long measured = certify_period(spec.network, spec.schedule, spec.seed, step_budget);
    if (measured != spec.expected_period)
        throw CertificationError("cycle spec measured period " + std::to_string(measured) +
                                 ", expected " + std::to_string(spec.expected_period));
    return measured;
}

// One unstable-majority block of size k + 3 per prime k in [5, m] (k >= 5
// keeps every block at the even size >= 8 the schedule family needs).
// disjoint: blocks stay separate cycle components. concatenated: every block
// cycle is cut open and the chains are spliced into one big cycle. The
// schedule is the substep-wise union of the block schedules (every block
// schedule has length 4).
inline SuperPolySpec build_superpolynomial(int m, SuperPolyLayout layout,
                                           long long step_budget = 1 << 20) {
    SuperPolySpec spec;
    spec.m = m;
    spec.layout = layout;
    if (m < 5) throw PreconditionError("build_superpolynomial requires m >= 5");
    for (int k : primes_up_to(m).primes)
        if (k >= 5) spec.prime_list.push_back(k);
    if (spec.prime_list.empty()) throw PreconditionError("no primes in [5, m]");

    spec.predicted_period = 1;
    for (int k : spec.prime_list) {
        spec.block_sizes.push_back(k + 3);
        spec.total_nodes += k + 3;
        spec.predicted_period *= k;
    }

    const int total = spec.total_nodes;
    if (total > 64)
        throw GuardError("superpolynomial construction exceeds the 64-vertex dynamics limit");

    std::vector<SignedEdge> edges;
    std::vector<int> loops(static_cast<std::size_t>(total), -1);
    std::vector<std::uint64_t> union_steps(4, 0);
    Configuration seed = Configuration::all_minus(total);

    int offset = 0;
    std::vector<std::pair<int, int>> chain_ends;  // first/last vertex per block
    for (int bs : spec.block_sizes) {
        // Certify the block schedule standalone before embedding it.
        long_cycle_schedule(bs);
        auto embedded = detail::long_cycle_candidate(bs, offset, total);
        for (int k = 0; k < 4; ++k) union_steps[static_cast<std::size_t>(k)] |=
            embedded.mode.steps[static_cast<std::size_t>(k)];
        seed.bits |= embedded.seed.bits;
        for (int i = 0; i + 1 < bs; ++i) edges.push_back({offset + i, offset + i + 1, +1});
        if (layout == SuperPolyLayout::disjoint)
            edges.push_back({offset, offset + bs - 1, +1});
        chain_ends.push_back({offset, offset + bs - 1});
        offset += bs;
    }
    if (layout == SuperPolyLayout::concatenated) {
        for (std::size_t i = 0; i < chain_ends.size(); ++i) {
            int u = chain_ends[i].second;
            int v = chain_ends[(i + 1) % chain_ends.size()].first;
            if (u != v) edges.push_back({std::min(u, v), std::max(u, v), +1});
        }
    }

    spec.network = ThresholdNetwork(SignedGraph(total, std::move(edges), std::move(loops)));
    spec.schedule = UpdateMode{std::move(union_steps), total};
    spec.seed = seed;

    spec.measured_period = certify_period(spec.network, spec.schedule, spec.seed, step_budget);
    if (spec.measured_period != spec.predicted_period) {
        std::string message = "superpolynomial construction measured period " +
                              std::to_string(spec.measured_period) + ", predicted " +
                              std::to_string(spec.predicted_period);
        // The block-independence claim is only proven for disjoint blocks;
        // for the spliced cycle a disagreement is reported, not fatal.
        if (layout == SuperPolyLayout::disjoint) throw CertificationError(message);
        spec.finding = message;
    }
    return spec;
}

}  // namespace signet
