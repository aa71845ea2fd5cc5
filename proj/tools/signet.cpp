// signet: structural analysis and dynamics of threshold networks over
// undirected signed graphs.
//
// Verbs: analyze, simulate, attractors, check, construct.
// Exit codes: 0 success/consistent, 1 usage, 2 parse error, 3 guard
// exceeded, 4 step budget exhausted, 5 certification mismatch.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "signet/analysis.hpp"
#include "signet/constructions.hpp"
#include "signet/dynamics.hpp"
#include "signet/frustration.hpp"
#include "signet/graph_io.hpp"
#include "signet/parallel.hpp"
#include "signet/sweeps.hpp"

namespace {

struct Output {
    char sep = ' ';
    std::ostream* os = &std::cout;

    void line(const std::vector<std::string>& tokens) {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (i) *os << sep;
            *os << tokens[i];
        }
        *os << "\n";
    }
};

std::string kv(const std::string& key, const std::string& value) { return key + "=" + value; }
std::string kv(const std::string& key, const char* value) { return key + "=" + value; }
std::string kv(const std::string& key, long long value) { return key + "=" + std::to_string(value); }
std::string kv(const std::string& key, int value) { return key + "=" + std::to_string(value); }
std::string kv(const std::string& key, bool value) { return key + "=" + (value ? "true" : "false"); }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw signet::ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --mode / --init values starting with '@' are read from a file (first
// non-empty line).
std::string inline_or_file(const std::string& value) {
    if (value.empty() || value[0] != '@') return value;
    std::istringstream ss(read_file(value.substr(1)));
    std::string line;
    while (std::getline(ss, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) return line;
    }
    throw signet::ParseError("file " + value.substr(1) + " holds no value");
}

std::string edges_to_string(const std::vector<signet::SignedEdge>& edges) {
    if (edges.empty()) return "none";
    std::ostringstream out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) out << ",";
        out << edges[i].u + 1 << "-" << edges[i].v + 1;
    }
    return out.str();
}

std::string vertices_to_string(const std::vector<int>& vs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out << ",";
        out << vs[i] + 1;
    }
    return out.str();
}

std::string switching_to_string(const std::vector<int>& s) {
    std::string out;
    for (int v : s) out += v > 0 ? '+' : '-';
    return out;
}

struct Guards {
    int exact_rho_max_n = 30;
    int subgraph_scan_max_n = 16;
    int enum_max_n = 22;
    long long step_budget = 1 << 20;
    bool heuristic_ok = false;
    int threads = 0;  // 0 = SIGNET_THREADS or hardware
};

signet::Configuration parse_init(const std::string& raw, int n) {
    std::string value = inline_or_file(raw);
    if (value == "all:+") return signet::Configuration::all_plus(n);
    if (value == "all:-") return signet::Configuration::all_minus(n);
    auto c = signet::Configuration::from_string(value);
    if (c.n != n)
        throw signet::ParseError("initial configuration has " + std::to_string(c.n) +
                                 " states, graph has " + std::to_string(n));
    return c;
}

int cmd_analyze(const std::string& path, bool subgraphs, const Guards& guards, Output& out) {
    auto parsed = signet::parse_network(read_file(path));
    const auto& g = parsed.graph;
    signet::FrustrationOptions opt;
    opt.exact_max_n = guards.exact_rho_max_n;
    opt.heuristic_ok = guards.heuristic_ok;
    auto report = signet::structure_report(g, opt);
    out.line({kv("graph", path)});
    out.line({kv("n", report.n), kv("m", report.m), kv("d_plus", report.d_plus),
              kv("d_minus", report.d_minus)});
    out.line({kv("balanced", report.balanced), kv("antibalanced", report.antibalanced)});
    out.line({kv("phi", report.phi), kv("rho", report.rho), kv("S", report.stability),
              kv("exact", report.exact)});
    out.line({kv("witness_edges", edges_to_string(report.witness_edges))});
    out.line({kv("witness_switching", switching_to_string(report.witness_switching))});
    if (subgraphs) {
        auto best = signet::max_subgraph_stability(g, guards.subgraph_scan_max_n);
        out.line({kv("max_subgraph_S", best.value),
                  kv("vertices", vertices_to_string(best.vertices))});
    }
    return 0;
}

int cmd_simulate(const std::string& path, const std::string& mode_spec, const std::string& init,
                 bool substeps, const Guards& guards, Output& out) {
    auto parsed = signet::parse_network(read_file(path));
    signet::ThresholdNetwork net(parsed.graph, parsed.thresholds);
    auto mode = signet::UpdateMode::parse(inline_or_file(mode_spec), net.n());
    auto x0 = parse_init(init, net.n());
    try {
        auto rec = signet::orbit(net, x0, mode, guards.step_budget, substeps);
        for (std::size_t t = 0; t < rec.trajectory.size(); ++t) {
            out.line({"t=" + std::to_string(t), rec.trajectory[t].to_string(),
                      kv("2L", signet::energy2(net, rec.trajectory[t]))});
            if (substeps) {
                for (int j = 0; j < mode.length(); ++j) {
                    std::size_t idx = t * static_cast<std::size_t>(mode.length()) +
                                      static_cast<std::size_t>(j);
                    if (idx < rec.substeps.size())
                        out.line({"s=" + std::to_string(t) + "." + std::to_string(j + 1),
                                  rec.substeps[idx].to_string()});
                }
            }
        }
        std::string cycle;
        for (std::size_t i = 0; i < rec.cycle.size(); ++i) {
            if (i) cycle += "|";
            cycle += rec.cycle[i].to_string();
        }
        out.line({kv("period", rec.period), kv("transient", rec.transient),
                  kv("classification", signet::to_string(rec.classification)),
                  kv("cycle", cycle)});
        return 0;
    } catch (const signet::OrbitBudgetError& e) {
        for (std::size_t t = 0; t < e.partial_trajectory.size(); ++t)
            out.line({"t=" + std::to_string(t), e.partial_trajectory[t].to_string(),
                      kv("2L", signet::energy2(net, e.partial_trajectory[t]))});
        throw;
    }
}

int cmd_attractors(const std::string& path, const std::string& mode_spec, const Guards& guards,
                   Output& out) {
    auto parsed = signet::parse_network(read_file(path));
    signet::ThresholdNetwork net(parsed.graph, parsed.thresholds);
    auto mode = signet::UpdateMode::parse(inline_or_file(mode_spec), net.n());
    auto atlas = signet::enumerate_attractors(net, mode, guards.enum_max_n);
    long long basin_sum = 0;
    for (const auto& a : atlas.attractors) {
        std::string cycle;
        for (std::size_t i = 0; i < a.cycle.size(); ++i) {
            if (i) cycle += "|";
            cycle += a.cycle[i].to_string();
        }
        out.line({"attractor", kv("period", a.period), kv("basin", a.basin),
                  kv("classification", signet::to_string(a.classification)), kv("cycle", cycle)});
        basin_sum += a.basin;
    }
    for (const auto& [period, count] : atlas.period_histogram)
        out.line({kv("period", period), kv("count", count),
                  kv("basin", atlas.period_basin.at(period))});
    out.line({kv("total_states", atlas.total_states),
              kv("attractors", static_cast<long long>(atlas.attractors.size())),
              kv("basin_check", basin_sum == atlas.total_states ? "ok" : "FAIL")});
    return basin_sum == atlas.total_states ? 0 : 1;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream outfile(path);
    if (!outfile) throw std::runtime_error("cannot write file: " + path);
    outfile << content;
}

int cmd_check_graph(const std::string& path, const std::string& mode_spec, bool validate,
                    const Guards& guards, Output& out) {
    auto parsed = signet::parse_network(read_file(path));
    const auto& g = parsed.graph;
    bool any_fail = false;

    auto emit = [&](const std::string& name, bool consistent,
                    const std::vector<std::string>& extra) {
        std::vector<std::string> tokens{kv("theorem", name)};
        tokens.insert(tokens.end(), extra.begin(), extra.end());
        tokens.push_back(kv("status", consistent ? std::string("PASS") : std::string("FAIL")));
        out.line(tokens);
        if (!consistent) any_fail = true;
    };

    // Main theorem on this instance: condition + optional enumeration.
    try {
        auto verdict = signet::check_parallel_stability(g, parsed.thresholds, validate,
                                                        guards.subgraph_scan_max_n,
                                                        guards.enum_max_n);
        bool consistent = !verdict.validated_by_enumeration || *verdict.validated_by_enumeration;
        emit("main_theorem", consistent,
             {kv("condition_holds", verdict.sufficient_condition_holds),
              kv("worst_S", verdict.worst_subgraph.value),
              kv("worst_set", vertices_to_string(verdict.worst_subgraph.vertices)),
              kv("validated", verdict.validated_by_enumeration
                                   ? (*verdict.validated_by_enumeration ? "true" : "false")
                                   : "skipped")});
    } catch (const signet::GuardError&) {
        out.line({kv("theorem", "main_theorem"), kv("status", "N/A(guard)")});
    }

    // Stability theorem, forward direction: witness => S >= 0.
    try {
        auto witness = signet::exists_total_cycle_config(g, guards.enum_max_n);
        long long s_full = signet::stability_index(g);
        bool consistent = !witness || s_full >= 0;
        emit("stability_forward", consistent,
             {kv("total_cycle_witness", witness ? witness->to_string() : "none"),
              kv("S", s_full)});
        // Converse: S >= 0 => a constructed period-2 attractor.
        if (s_full >= 0) {
            auto built = signet::construct_period2_threshold(g, guards.enum_max_n);
            if (built) {
                std::string b_text;
                for (std::size_t i = 0; i < built->thresholds.size(); ++i) {
                    if (i) b_text += ",";
                    b_text += std::to_string(built->thresholds[i]);
                }
                emit("stability_converse", true,
                     {kv("strategy", signet::to_string(built->strategy)), kv("b", b_text),
                      kv("x", built->x.to_string())});
            } else {
                emit("stability_converse", false, {kv("finding", "no period-2 construction")});
            }
        } else {
            out.line({kv("theorem", "stability_converse"), kv("S", s_full),
                      kv("status", "N/A(S<0)")});
        }
    } catch (const signet::GuardError&) {
        out.line({kv("theorem", "stability_theorem"), kv("status", "N/A(guard)")});
    }

    // Periodic-mode condition for the supplied mode.
    if (!mode_spec.empty()) {
        try {
            signet::ThresholdNetwork net(g, parsed.thresholds);
            auto mode = signet::UpdateMode::parse(inline_or_file(mode_spec), g.n());
            auto verdict = signet::check_periodic_stability(net, mode, validate,
                                                            guards.subgraph_scan_max_n,
                                                            guards.enum_max_n);
            bool consistent =
                !verdict.validated_by_enumeration || *verdict.validated_by_enumeration;
            emit("periodic_theorem", consistent,
                 {kv("condition_holds", verdict.condition_holds),
                  kv("validated", verdict.validated_by_enumeration
                                       ? (*verdict.validated_by_enumeration ? "true" : "false")
                                       : "skipped")});
        } catch (const signet::GuardError&) {
            out.line({kv("theorem", "periodic_theorem"), kv("status", "N/A(guard)")});
        }
    }
    if (any_fail) {
        std::string file = "counterexample.graph";
        write_file(file, signet::serialize_network(g, parsed.thresholds));
        out.line({kv("counterexample_file", file)});
    }
    return any_fail ? 1 : 0;
}

int cmd_check_sweep(int max_n, int modes, int orbits, int b_range, const Guards& guards,
                    Output& out) {
    signet::sweeps::Scale scale;
    scale.max_n = std::min(max_n, 4);
    scale.include_n5_sample = max_n >= 5;
    scale.periodic_modes = modes;
    scale.b_range = b_range;
    scale.threads = signet::resolve_threads(guards.threads);
    bool any_fail = false;

    auto emit = [&](const signet::sweeps::Outcome& o) {
        out.line({kv("theorem", o.name), kv("graphs", o.graphs), kv("qualifying", o.qualifying),
                  kv("checked", o.checked), kv("violations", o.violations),
                  kv("status", o.passed() ? "PASS" : "FAIL")});
        for (const auto& d : o.details) out.line({kv("detail", d)});
        for (std::size_t i = 0; i < o.counterexample_files.size(); ++i) {
            std::string path = "counterexample_" + o.name + "_" + std::to_string(i) + ".graph";
            write_file(path, o.counterexample_files[i]);
            out.line({kv("counterexample_file", path)});
        }
        if (!o.passed()) any_fail = true;
    };

    emit(signet::sweeps::sweep_main_theorem(scale));
    emit(signet::sweeps::sweep_periodic_theorem(scale));
    emit(signet::sweeps::sweep_two_cycle_condition(scale));
    emit(signet::sweeps::sweep_corollary(scale));
    emit(signet::sweeps::sweep_stability_theorem(scale));
    emit(signet::sweeps::sweep_energy_laws(scale));
    emit(signet::sweeps::sweep_parallel_period(orbits, 12, scale.seed, scale.threads));
    emit(signet::sweeps::sweep_psd_fixed_points(10, 200, 4, scale.seed, scale.threads));
    return any_fail ? 1 : 0;
}

int cmd_construct_cycle(int n, const std::string& prefix, const Guards& guards, Output& out) {
    if (n < 8 || n % 2 != 0)
        throw signet::PreconditionError("construct cycle requires an even n >= 8");
    auto spec = signet::make_cycle_spec(n);
    long long measured = signet::certify_period(spec.network, spec.schedule, spec.seed,
                                                guards.step_budget);
    std::string base = prefix.empty() ? "cycle_n" + std::to_string(n) : prefix;
    write_file(base + ".graph", signet::serialize_network(spec.network.graph()));
    write_file(base + ".mode", spec.schedule.format() + "\n");
    write_file(base + ".seed", spec.seed.to_string() + "\n");
    out.line({kv("kind", "cycle"), kv("n", n),
              kv("files", base + ".graph," + base + ".mode," + base + ".seed")});
    out.line({kv("predicted", spec.expected_period), kv("measured", measured)});
    if (measured != spec.expected_period)
        throw signet::CertificationError("cycle construction failed certification");
    return 0;
}

int cmd_construct_superpoly(int m, const std::string& layout_name, const std::string& prefix,
                            const Guards& guards, Output& out) {
    signet::SuperPolyLayout layout;
    if (layout_name == "disjoint")
        layout = signet::SuperPolyLayout::disjoint;
    else if (layout_name == "concatenated")
        layout = signet::SuperPolyLayout::concatenated;
    else
        throw signet::PreconditionError("layout must be disjoint or concatenated");
    auto spec = signet::build_superpolynomial(m, layout, guards.step_budget);
    std::string base = prefix.empty()
                           ? "superpoly_m" + std::to_string(m) + "_" + layout_name
                           : prefix;
    write_file(base + ".graph", signet::serialize_network(spec.network.graph()));
    write_file(base + ".mode", spec.schedule.format() + "\n");
    write_file(base + ".seed", spec.seed.to_string() + "\n");
    std::string primes, blocks;
    for (std::size_t i = 0; i < spec.prime_list.size(); ++i) {
        if (i) {
            primes += ",";
            blocks += ",";
        }
        primes += std::to_string(spec.prime_list[i]);
        blocks += std::to_string(spec.block_sizes[i]);
    }
    out.line({kv("kind", "superpoly"), kv("m", m), kv("layout", layout_name),
              kv("n", spec.total_nodes), kv("primes", primes), kv("blocks", blocks),
              kv("files", base + ".graph," + base + ".mode," + base + ".seed")});
    out.line({kv("predicted", spec.predicted_period), kv("measured", spec.measured_period)});
    if (!spec.finding.empty()) out.line({kv("finding", spec.finding)});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"threshold-network stability toolkit for undirected signed graphs"};
    app.require_subcommand(1);

    Guards guards;
    std::string output_format = "text";
    app.add_option("--output", output_format, "output format: text or tsv")
        ->check(CLI::IsMember({"text", "tsv"}));
    app.add_option("--threads", guards.threads, "worker threads (0 = SIGNET_THREADS or hardware)");
    app.add_option("--exact-rho-max-n", guards.exact_rho_max_n, "guard for exact frustration");
    app.add_option("--subgraph-scan-max-n", guards.subgraph_scan_max_n,
                   "guard for induced-subgraph scans");
    app.add_option("--enum-max-n", guards.enum_max_n, "guard for attractor enumeration");
    app.add_option("--step-budget", guards.step_budget, "simulation step budget");
    app.add_flag("--heuristic-ok", guards.heuristic_ok,
                 "allow uncertified local search above the exact guard");

    std::string graph_path, mode_spec, init = "all:-", prefix, sweep_spec, layout = "disjoint";
    bool subgraphs = false, substeps = false, validate = false;
    int cycle_n = 8, superpoly_m = 15, sweep_modes = 1000, sweep_orbits = 20000,
        sweep_b_range = 2;

    auto* analyze = app.add_subcommand("analyze", "structural indices of a signed graph");
    analyze->add_option("graph", graph_path, "graph file")->required();
    analyze->add_flag("--subgraphs", subgraphs, "add the induced-subgraph stability maximum");

    auto* simulate = app.add_subcommand("simulate", "trajectory under a periodic update mode");
    simulate->add_option("graph", graph_path, "graph file")->required();
    simulate->add_option("--mode", mode_spec, "update mode (or @file)")->required();
    simulate->add_option("--init", init, "initial configuration, all:+, all:-, or @file");
    simulate->add_flag("--substeps", substeps, "print substep configurations");

    auto* attractors = app.add_subcommand("attractors", "exhaustive attractor landscape");
    attractors->add_option("graph", graph_path, "graph file")->required();
    attractors->add_option("--mode", mode_spec, "update mode (or @file)")->required();

    auto* check = app.add_subcommand("check", "run the theorem checkers");
    check->add_option("graph", graph_path, "graph file (omit with --sweep)");
    check->add_option("--mode", mode_spec, "update mode for the periodic condition");
    check->add_flag("--validate", validate, "cross-check conditions by enumeration");
    check->add_option("--sweep", sweep_spec, "exhaustive suites, e.g. n<=4");
    check->add_option("--sweep-modes", sweep_modes, "random modes for the periodic suite");
    check->add_option("--sweep-orbits", sweep_orbits, "random orbits for the period<=2 suite");
    check->add_option("--sweep-b-range", sweep_b_range, "threshold grid half-width for sweeps");

    auto* construct = app.add_subcommand("construct", "emit witness families");
    auto* cycle = construct->add_subcommand("cycle", "unstable-majority cycle with period n-3");
    cycle->add_option("--n", cycle_n, "even cycle size >= 8")->required();
    cycle->add_option("--out", prefix, "output file prefix");
    auto* superpoly =
        construct->add_subcommand("superpoly", "prime-block network with period = product");
    superpoly->add_option("--m", superpoly_m, "prime bound m >= 5")->required();
    superpoly->add_option("--layout", layout, "disjoint or concatenated");
    superpoly->add_option("--out", prefix, "output file prefix");
    construct->require_subcommand(1);

    // Global guard/output flags may appear before or after the verb.
    for (auto* sub : {analyze, simulate, attractors, check, construct, cycle, superpoly})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    Output out;
    out.sep = output_format == "tsv" ? '\t' : ' ';

    try {
        if (*analyze) return cmd_analyze(graph_path, subgraphs, guards, out);
        if (*simulate) return cmd_simulate(graph_path, mode_spec, init, substeps, guards, out);
        if (*attractors) return cmd_attractors(graph_path, mode_spec, guards, out);
        if (*check) {
            if (!sweep_spec.empty()) {
                int max_n = 4;
                if (sweep_spec.rfind("n<=", 0) == 0)
                    max_n = std::stoi(sweep_spec.substr(3));
                else
                    throw signet::PreconditionError("--sweep expects the form n<=K");
                return cmd_check_sweep(max_n, sweep_modes, sweep_orbits, sweep_b_range,
                                       guards, out);
            }
            if (graph_path.empty())
                throw signet::PreconditionError("check needs a graph file or --sweep");
            return cmd_check_graph(graph_path, mode_spec, validate, guards, out);
        }
        if (*cycle) return cmd_construct_cycle(cycle_n, prefix, guards, out);
        if (*superpoly) return cmd_construct_superpoly(superpoly_m, layout, prefix, guards, out);
    } catch (const signet::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const signet::GuardError& e) {
        std::cerr << "guard error: " << e.what() << "\n";
        return 3;
    } catch (const signet::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 4;
    } catch (const signet::CertificationError& e) {
        std::cerr << "certification error: " << e.what() << "\n";
        return 5;
    } catch (const signet::PreconditionError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
