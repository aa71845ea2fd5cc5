// Acceptance suite: runs every stated criterion end to end and prints one
// PASS/FAIL line per criterion. Exits non-zero if any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_helpers.hpp"
#include "signet/analysis.hpp"
#include "signet/constructions.hpp"
#include "signet/dynamics.hpp"
#include "signet/frustration.hpp"
#include "signet/graph_io.hpp"
#include "signet/parallel.hpp"
#include "signet/sweeps.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string command = std::string(SIGNET_CLI_PATH) + " " + args + " 2>&1";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return result;
    std::array<char, 4096> buffer;
    while (std::size_t got = fread(buffer.data(), 1, buffer.size(), pipe))
        result.output.append(buffer.data(), got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

// All needles present, in order.
bool contains_in_order(const std::string& haystack, const std::vector<std::string>& needles) {
    std::size_t at = 0;
    for (const auto& n : needles) {
        auto pos = haystack.find(n, at);
        if (pos == std::string::npos) return false;
        at = pos + n.size();
    }
    return true;
}

fs::path scratch_dir() {
    auto dir = fs::temp_directory_path() / "signet_acceptance";
    fs::create_directories(dir);
    return dir;
}

std::string write_scratch(const std::string& name, const std::string& content) {
    auto path = scratch_dir() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

int g_failures = 0;

void report(int id, const std::string& name, bool pass, double seconds,
            const std::string& detail) {
    std::ostringstream line;
    line << "criterion=" << id << " name=" << name << " status=" << (pass ? "PASS" : "FAIL")
         << " seconds=" << std::fixed << std::setprecision(2) << seconds;
    if (!detail.empty()) line << " " << detail;
    std::cout << line.str() << std::endl;
    if (!pass) ++g_failures;
}

template <typename Fn>
void criterion(int id, const std::string& name, Fn&& fn) {
    auto start = Clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    report(id, name, pass, seconds, detail);
}

const char* kLoopedTriangle =
    "nodes 3\nedge 1 2 +1\nedge 2 3 +1\nedge 1 3 +1\nloop 1 +1\nloop 2 -1\n";
const char* kChordedSquare =
    "nodes 4\nedge 1 2 +1\nedge 1 3 -1\nedge 2 3 +1\nedge 3 4 +1\nedge 1 4 +1\nloop 3 +1\n";
const char* kChordedSquareFrustrated =
    "nodes 4\nedge 1 2 +1\nedge 1 3 +1\nedge 2 3 -1\nedge 3 4 +1\nedge 1 4 +1\nloop 3 +1\n";
const char* kUnstableSquare =
    "nodes 4\nedge 1 2 +1\nedge 2 3 +1\nedge 3 4 +1\nedge 1 4 +1\n"
    "loop 1 -1\nloop 2 -1\nloop 3 -1\nloop 4 -1\n";

}  // namespace

int main() {
    const int threads = signet::resolve_threads(0);
    std::cout << "acceptance threads=" << threads << std::endl;

    // 1. Structural indices of the two consistent worked examples, via the CLI.
    criterion(1, "analyze_worked_examples", [&](std::string& detail) {
        auto left = write_scratch("looped_triangle.graph", kLoopedTriangle);
        auto middle = write_scratch("chorded_square.graph", kChordedSquare);
        auto t0 = Clock::now();
        auto r1 = run_cli("analyze " + left);
        auto r2 = run_cli("analyze " + middle);
        double each = std::chrono::duration<double>(Clock::now() - t0).count() / 2;
        bool ok = r1.exit_code == 0 && contains(r1.output, "rho=1") &&
                  contains(r1.output, "S=-1") && r2.exit_code == 0 &&
                  contains(r2.output, "rho=0") && contains(r2.output, "S=5") && each < 1.0;
        // Third worked example: its quoted values disagree with its edge
        // list; the derived values are emitted with a warning instead.
        auto right = signet::parse_graph(kChordedSquareFrustrated);
        auto rho = signet::frustration_index(right, signet::FrustrationMode::antibalance).count;
        auto s = signet::stability_index(right);
        std::cout << "warning=frustrated chorded square: quoted values rho=2,S=-3 disagree "
                     "with the edge list; derived rho=" << rho
                  << ",S=" << s << " used instead" << std::endl;
        ok = ok && rho == 1 && s == 1;
        detail = "left(rho=1,S=-1) middle(rho=0,S=5) right_derived(rho=1,S=1)";
        return ok;
    });

    // 2. Antibalance classification of the four cycle examples.
    criterion(2, "frustration_classification", [&](std::string& detail) {
        auto c4_one_neg = signet::parse_graph(
            "nodes 4\nedge 1 2 +1\nedge 2 3 +1\nedge 3 4 +1\nedge 1 4 -1\n");
        auto c4_pos =
            signet::parse_graph("nodes 4\nedge 1 2 +1\nedge 2 3 +1\nedge 3 4 +1\nedge 1 4 +1\n");
        auto tri_one_neg =
            signet::parse_graph("nodes 3\nedge 1 2 +1\nedge 2 3 +1\nedge 1 3 -1\n");
        auto tri_pos = signet::parse_graph("nodes 3\nedge 1 2 +1\nedge 2 3 +1\nedge 1 3 +1\n");
        bool ok = !signet::is_antibalanced(c4_one_neg) && signet::is_antibalanced(c4_pos) &&
                  signet::is_antibalanced(tri_one_neg) && !signet::is_antibalanced(tri_pos);
        detail = "verdicts=frustrated,non-frustrated,non-frustrated,frustrated";
        return ok;
    });

    // 3. Four-cell traces: parallel total two-cycle and the sequential
    //    substep trace, exact string equality. Block-sequential semantics
    //    are pinned separately by the unit tests.
    criterion(3, "four_cell_traces", [&](std::string& detail) {
        auto square = write_scratch("unstable_square.graph", kUnstableSquare);
        auto par = run_cli("simulate " + square + " --mode parallel --init -+-+");
        bool ok = par.exit_code == 0 && contains(par.output, "t=0 -+-+") &&
                  contains(par.output, "t=1 +-+-") &&
                  contains(par.output, "classification=total_two_cycle");
        auto seq = run_cli("simulate " + square + " --mode seq:1,2,4,3 --init -+-+ --substeps");
        ok = ok && seq.exit_code == 0 &&
             contains_in_order(seq.output, {"t=0 -+-+", "s=0.1 ++-+", "s=0.2 +--+", "s=0.3 +---",
                                            "s=0.4 +---", "s=1.1 ----"}) &&
             contains(seq.output, "period=1") && contains(seq.output, "cycle=----");
        detail = "parallel=-+-+<->+-+- sequential=---- substeps=6/6";
        return ok;
    });

    // 4. Eight-cell schedule reproduction through construct + simulate.
    criterion(4, "eight_cell_schedule", [&](std::string& detail) {
        auto prefix = (scratch_dir() / "cycle8").string();
        auto built = run_cli("construct cycle --n 8 --out " + prefix);
        bool ok = built.exit_code == 0 && contains(built.output, "predicted=5 measured=5");
        std::ifstream seed_file(prefix + ".seed");
        std::string seed;
        std::getline(seed_file, seed);
        ok = ok && seed == "-+----+-";
        auto sim = run_cli("simulate " + prefix + ".graph --mode @" + prefix + ".mode --init @" +
                           prefix + ".seed");
        ok = ok && sim.exit_code == 0 && contains(sim.output, "period=5 transient=0") &&
             contains(sim.output, "t=1 -+++--+-");
        detail = "seed=-+----+- t1=-+++--+- period=5";
        return ok;
    });

    // 5. Stability-index spot value.
    criterion(5, "spot_stability_value", [&](std::string& detail) {
        auto s = signet::stability_index(signet::unstable_majority_cycle(8).graph());
        detail = "S(C8,-loops)=" + std::to_string(s);
        return s == 16;
    });

    // 6. Certified long-cycle schedules at growing sizes.
    criterion(6, "certified_long_cycles", [&](std::string& detail) {
        std::ostringstream d;
        for (int n : {8, 10, 12, 14}) {
            auto t0 = Clock::now();
            auto spec = signet::make_cycle_spec(n);
            long long measured = signet::certify_cycle_spec(spec, 4LL * n + 64);
            double secs = std::chrono::duration<double>(Clock::now() - t0).count();
            if (measured != n - 3 || secs >= 10.0) {
                detail = "n=" + std::to_string(n) + " measured=" + std::to_string(measured);
                return false;
            }
            d << "n" << n << "=" << measured << " ";
        }
        detail = "periods: " + d.str();
        return true;
    });

    // 7. Super-polynomial witness via the CLI.
    criterion(7, "superpolynomial_witness", [&](std::string& detail) {
        auto t0 = Clock::now();
        auto r = run_cli("construct superpoly --m 15 --layout disjoint --out " +
                         (scratch_dir() / "sp15").string());
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        bool ok = r.exit_code == 0 && contains(r.output, "n=48") &&
                  contains(r.output, "predicted=5005 measured=5005") && secs < 30.0;
        detail = "n=48 period=5005 > n^2=2304";
        return ok && 5005 > 48 * 48;
    });

    // 8. Main-theorem exhaustive suite: connected n <= 4, all signs, all
    //    loop patterns, b in [-2,2]^n (one representative per isomorphism
    //    class; both the hypothesis and the conclusion are invariants).
    criterion(8, "main_theorem_suite", [&](std::string& detail) {
        signet::sweeps::Scale scale;
        scale.max_n = 4;
        scale.b_range = 2;
        scale.threads = threads;
        auto outcome = signet::sweeps::sweep_main_theorem(scale);
        detail = "reps=" + std::to_string(outcome.graphs) +
                 " qualifying=" + std::to_string(outcome.qualifying) +
                 " violations=" + std::to_string(outcome.violations);
        return outcome.passed() && outcome.qualifying > 0;
    });

    // 9. Periodic-mode theorem suite: 1000 random modes of length <= 6.
    criterion(9, "periodic_theorem_suite", [&](std::string& detail) {
        signet::sweeps::Scale scale;
        scale.max_n = 4;
        scale.b_range = 2;
        scale.periodic_modes = 1000;
        scale.periodic_mode_max_len = 6;
        scale.threads = threads;
        auto outcome = signet::sweeps::sweep_periodic_theorem(scale);
        detail = "reps=" + std::to_string(outcome.graphs) +
                 " qualifying_checks=" + std::to_string(outcome.qualifying) +
                 " violations=" + std::to_string(outcome.violations);
        return outcome.passed() && outcome.qualifying > 0;
    });

    // 10. Stability theorem, both directions, n <= 4 exhaustive plus the
    //     fixed n = 5 topology sample.
    criterion(10, "stability_theorem_suite", [&](std::string& detail) {
        signet::sweeps::Scale scale;
        scale.max_n = 4;
        scale.threads = threads;
        scale.include_n5_sample = true;
        auto outcome = signet::sweeps::sweep_stability_theorem(scale);
        detail = "instances=" + std::to_string(outcome.graphs) +
                 " constructions=" + std::to_string(outcome.qualifying) +
                 " violations=" + std::to_string(outcome.violations);
        return outcome.passed() && outcome.qualifying > 0;
    });

    // 11. Classical properties: random parallel orbits settle at period <=
    //     2; exhaustively verified PSD instances reach only fixed points;
    //     energy laws hold exhaustively (n <= 4 full family, n = 5 sample).
    criterion(11, "classical_properties", [&](std::string& detail) {
        auto orbits = signet::sweeps::sweep_parallel_period(100000, 12, 0xC0FFEEu, threads);
        auto psd = signet::sweeps::sweep_psd_fixed_points(10, 400, 6, 0xC0FFEEu, threads);
        signet::sweeps::Scale scale;
        scale.max_n = 4;
        scale.b_range = 2;
        scale.threads = threads;
        scale.include_n5_sample = true;
        auto energy = signet::sweeps::sweep_energy_laws(scale);
        detail = "orbits=" + std::to_string(orbits.checked) +
                 " psd_instances=" + std::to_string(psd.qualifying) +
                 " energy_steps=" + std::to_string(energy.checked) + " violations=" +
                 std::to_string(orbits.violations + psd.violations + energy.violations);
        return orbits.passed() && psd.passed() && energy.passed() && psd.qualifying >= 14;
    });

    // 12. Exact rho against brute-force edge deletion on a >= 500 graph
    //     corpus with n <= 5: the full families up to n = 3, every sign
    //     pattern of a fixed n = 5 topology sample, plus random graphs.
    criterion(12, "rho_oracle_equivalence", [&](std::string& detail) {
        long long checked = 0, mismatches = 0;
        auto compare = [&](const signet::SignedGraph& g) {
            ++checked;
            auto fast = signet::frustration_index(g, signet::FrustrationMode::antibalance).count;
            if (fast != oracle::brute_rho(g)) ++mismatches;
        };
        for (int n = 1; n <= 3; ++n)
            for (const auto& g : signet::sweeps::connected_signed_family(n)) compare(g);
        for (const auto& topo : signet::sweeps::sampled_topologies_n5()) {
            if (topo.edges.size() > 7) continue;  // keep the edge-subset oracle quick
            for (std::uint32_t signs = 0; signs < (1u << topo.edges.size()); ++signs) {
                std::vector<signet::SignedEdge> edges;
                for (std::size_t i = 0; i < topo.edges.size(); ++i)
                    edges.push_back({topo.edges[i].first, topo.edges[i].second,
                                     (signs >> i) & 1 ? -1 : +1});
                compare(signet::SignedGraph(topo.n, std::move(edges)));
            }
        }
        std::mt19937 rng(0x5106E7u);
        for (int t = 0; t < 200; ++t) compare(oracle::random_graph(rng, 4));
        for (int t = 0; t < 200; ++t) compare(oracle::random_graph(rng, 5));
        detail = "corpus=" + std::to_string(checked) +
                 " mismatches=" + std::to_string(mismatches);
        return checked >= 500 && mismatches == 0;
    });

    std::cout << "acceptance failures=" << g_failures << std::endl;
    return g_failures == 0 ? 0 : 1;
}
