#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "signet/errors.hpp"

namespace signet {

// A +/-1 state per vertex, packed into a 64-bit word (bit set <=> state +1).
// Vertex 1 of the file formats is bit 0; configuration strings put it leftmost.
struct Configuration {
    std::uint64_t bits = 0;
    int n = 0;

    Configuration() = default;
    Configuration(std::uint64_t b, int size) : bits(b), n(size) {}

    static std::uint64_t full_mask(int n) {
        return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    }

    static Configuration all_plus(int n) { return {full_mask(n), n}; }
    static Configuration all_minus(int n) { return {0, n}; }

    int state(int i) const { return (bits >> i) & 1 ? +1 : -1; }

    void set_state(int i, int s) {
        if (s > 0)
            bits |= std::uint64_t{1} << i;
        else
            bits &= ~(std::uint64_t{1} << i);
    }

    Configuration negated() const { return {bits ^ full_mask(n), n}; }

    std::string to_string() const {
        std::string out(static_cast<std::size_t>(n), '-');
        for (int i = 0; i < n; ++i)
            if ((bits >> i) & 1) out[static_cast<std::size_t>(i)] = '+';
        return out;
    }

    static Configuration from_string(const std::string& text) {
        if (text.empty() || text.size() > 64)
            throw ParseError("configuration string must have between 1 and 64 states");
        Configuration c(0, static_cast<int>(text.size()));
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '+')
                c.bits |= std::uint64_t{1} << i;
            else if (text[i] != '-')
                throw ParseError("configuration string may only contain '+' and '-'");
        }
        return c;
    }

    friend bool operator==(const Configuration& a, const Configuration& b) {
        return a.n == b.n && a.bits == b.bits;
    }
    friend bool operator!=(const Configuration& a, const Configuration& b) { return !(a == b); }
};

// String order over {+,-} with vertex 1 most significant; '+' sorts first.
inline bool lex_less(const Configuration& a, const Configuration& b) {
    std::uint64_t d = a.bits ^ b.bits;
    if (d == 0) return false;
    int k = std::countr_zero(d);
    return (a.bits >> k) & 1;
}

}  // namespace signet
