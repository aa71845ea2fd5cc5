#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "signet/graph.hpp"

namespace signet {

// A parsed graph file: the structural graph plus any threshold lines found
// alongside it (defaulting to 0).
struct ParsedNetwork {
    SignedGraph graph;
    std::vector<int> thresholds;
};

namespace detail {

inline int parse_sign_token(const std::string& tok, int line) {
    if (tok == "+1") return +1;
    if (tok == "-1") return -1;
    throw ParseError("malformed sign '" + tok + "' (expected +1 or -1)", line);
}

inline int parse_int_token(const std::string& tok, const char* what, int line) {
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(std::string("malformed ") + what + " '" + tok + "'", line);
    }
    if (pos != tok.size())
        throw ParseError(std::string("malformed ") + what + " '" + tok + "'", line);
    return value;
}

}  // namespace detail

// Line format (UTF-8, '#' starts a comment):
//   nodes <n>
//   edge <u> <v> <+1|-1>
//   loop <u> <+1|-1>
//   threshold <u> <integer>       (default 0)
// Vertex ids are 1-based in files.
inline ParsedNetwork parse_network(std::istream& in) {
    int n = -1;
    std::vector<SignedEdge> edges;
    std::vector<int> loops;
    std::vector<int> thresholds;
    std::vector<bool> loop_seen, threshold_seen;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ss(raw);
        std::string kind;
        if (!(ss >> kind)) continue;

        std::vector<std::string> args;
        for (std::string tok; ss >> tok;) args.push_back(tok);

        if (kind == "nodes") {
            if (n >= 0) throw ParseError("duplicate nodes line", line_no);
            if (args.size() != 1) throw ParseError("expected: nodes <n>", line_no);
            n = detail::parse_int_token(args[0], "node count", line_no);
            if (n < 1) throw ParseError("node count must be at least 1", line_no);
            if (n > 1000000) throw ParseError("node count too large", line_no);
            loops.assign(static_cast<std::size_t>(n), 0);
            thresholds.assign(static_cast<std::size_t>(n), 0);
            loop_seen.assign(static_cast<std::size_t>(n), false);
            threshold_seen.assign(static_cast<std::size_t>(n), false);
            continue;
        }
        if (n < 0) throw ParseError("'" + kind + "' before nodes line", line_no);

        auto vertex_arg = [&](const std::string& tok) {
            int v = detail::parse_int_token(tok, "vertex id", line_no);
            if (v < 1 || v > n)
                throw ParseError("vertex id " + std::to_string(v) + " out of range [1, " +
                                     std::to_string(n) + "]",
                                 line_no);
            return v - 1;
        };

        if (kind == "edge") {
            if (args.size() != 3) throw ParseError("expected: edge <u> <v> <+1|-1>", line_no);
            int u = vertex_arg(args[0]);
            int v = vertex_arg(args[1]);
            int sign = detail::parse_sign_token(args[2], line_no);
            if (u == v) throw ParseError("self-edge must use 'loop'", line_no);
            if (u > v) std::swap(u, v);
            for (const auto& e : edges)
                if (e.u == u && e.v == v)
                    throw ParseError("duplicate edge " + std::to_string(u + 1) + " " +
                                         std::to_string(v + 1),
                                     line_no);
            edges.push_back({u, v, sign});
        } else if (kind == "loop") {
            if (args.size() != 2) throw ParseError("expected: loop <u> <+1|-1>", line_no);
            int u = vertex_arg(args[0]);
            int sign = detail::parse_sign_token(args[1], line_no);
            if (loop_seen[static_cast<std::size_t>(u)])
                throw ParseError("duplicate loop on vertex " + std::to_string(u + 1), line_no);
            loop_seen[static_cast<std::size_t>(u)] = true;
            loops[static_cast<std::size_t>(u)] = sign;
        } else if (kind == "threshold") {
            if (args.size() != 2) throw ParseError("expected: threshold <u> <integer>", line_no);
            int u = vertex_arg(args[0]);
            int value = detail::parse_int_token(args[1], "threshold", line_no);
            if (threshold_seen[static_cast<std::size_t>(u)])
                throw ParseError("duplicate threshold on vertex " + std::to_string(u + 1), line_no);
            threshold_seen[static_cast<std::size_t>(u)] = true;
            thresholds[static_cast<std::size_t>(u)] = value;
        } else {
            throw ParseError("unknown directive '" + kind + "'", line_no);
        }
    }
    if (n < 0) throw ParseError("missing nodes line");
    return {SignedGraph(n, std::move(edges), std::move(loops)), std::move(thresholds)};
}

inline ParsedNetwork parse_network(const std::string& text) {
    std::istringstream in(text);
    return parse_network(in);
}

inline SignedGraph parse_graph(const std::string& text) { return parse_network(text).graph; }

// Canonical form: header, edges sorted by (u, v), loops sorted by vertex,
// nonzero thresholds sorted by vertex.
inline std::string serialize_network(const SignedGraph& g, const std::vector<int>& thresholds = {}) {
    std::ostringstream out;
    out << "nodes " << g.n() << "\n";
    for (const auto& e : g.edges())
        out << "edge " << e.u + 1 << " " << e.v + 1 << " " << (e.sign > 0 ? "+1" : "-1") << "\n";
    for (int i = 0; i < g.n(); ++i)
        if (g.loop(i) != 0)
            out << "loop " << i + 1 << " " << (g.loop(i) > 0 ? "+1" : "-1") << "\n";
    for (std::size_t i = 0; i < thresholds.size(); ++i)
        if (thresholds[i] != 0) out << "threshold " << i + 1 << " " << thresholds[i] << "\n";
    return out.str();
}

}  // namespace signet
