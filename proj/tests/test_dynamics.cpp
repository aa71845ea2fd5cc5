#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracle_helpers.hpp"
#include "signet/dynamics.hpp"
#include "signet/graph_io.hpp"

using namespace signet;

namespace {

// The four-vertex unstable-majority cycle, exercised under parallel,
// sequential, and block-sequential modes.
ThresholdNetwork unstable_square() {
    return ThresholdNetwork(parse_graph(
        "nodes 4\nedge 1 2 +1\nedge 2 3 +1\nedge 3 4 +1\nedge 1 4 +1\n"
        "loop 1 -1\nloop 2 -1\nloop 3 -1\nloop 4 -1\n"));
}

ThresholdNetwork unstable_octagon() {
    std::vector<SignedEdge> edges;
    for (int i = 0; i < 8; ++i) edges.push_back({i, (i + 1) % 8, +1});
    return ThresholdNetwork(SignedGraph(8, std::move(edges), std::vector<int>(8, -1)));
}

const UpdateMode octagon_schedule = UpdateMode::parse("{3,5};{1,2,7,8};{4,6};{1,2,7,8}", 8);

}  // namespace

TEST_CASE("update mode parsing and formatting") {
    auto par = UpdateMode::parse("parallel", 4);
    REQUIRE(par.is_parallel());
    REQUIRE(par.format() == "parallel");
    REQUIRE(par.size_r() == 4);

    auto seq = UpdateMode::parse("seq:1,2,4,3", 4);
    REQUIRE(seq.length() == 4);
    REQUIRE(seq.size_r() == 1);
    REQUIRE(seq.format() == "seq:1,2,4,3");

    auto blocks = UpdateMode::parse("{3,5};{1,2,7,8};{4,6};{1,2,7,8}", 8);
    REQUIRE(blocks.length() == 4);
    REQUIRE(blocks.size_r() == 4);
    REQUIRE(blocks.format() == "{3,5};{1,2,7,8};{4,6};{1,2,7,8}");
    REQUIRE(UpdateMode::parse(blocks.format(), 8).steps == blocks.steps);

    // Vertices may repeat across subsets.
    auto repeats = UpdateMode::parse("{1};{1,2};{1}", 4);
    REQUIRE(repeats.length() == 3);
    REQUIRE(repeats.size_r() == 2);

    REQUIRE_THROWS_AS(UpdateMode::parse("seq:0", 4), ParseError);
    REQUIRE_THROWS_AS(UpdateMode::parse("seq:5", 4), ParseError);
    REQUIRE_THROWS_AS(UpdateMode::parse("{}", 4), ParseError);
    REQUIRE_THROWS_AS(UpdateMode::parse("", 4), ParseError);
    REQUIRE_THROWS_AS(UpdateMode::parse("bogus", 4), ParseError);
}

TEST_CASE("local field, update, and margin") {
    auto net = unstable_square();
    auto x = Configuration::from_string("-+-+");
    REQUIRE(net.local_field(x, 0) == 3);  // x2 + x4 - x1
    REQUIRE(net.local_update(x, 0) == +1);
    for (int i = 0; i < 4; ++i) REQUIRE(net.flip_margin(x, i) == 3);

    // Isolated vertex: empty sum, ties preserve the state.
    ThresholdNetwork lone(parse_graph("nodes 1\n"));
    auto minus = Configuration::from_string("-");
    REQUIRE(lone.local_field(minus, 0) == 0);
    REQUIRE(lone.local_update(minus, 0) == -1);
    REQUIRE(lone.flip_margin(minus, 0) == 0);

    // Tie on a path: field of the middle vertex vanishes.
    ThresholdNetwork path(parse_graph("nodes 3\nedge 1 2 +1\nedge 2 3 +1\n"));
    auto tie = Configuration::from_string("+--");
    REQUIRE(path.local_field(tie, 1) == 0);
    REQUIRE(path.local_update(tie, 1) == -1);

    // The unstable tie rule is the negative loop, not a flag: a lone vertex
    // with a negative loop flips from either state.
    ThresholdNetwork unstable(parse_graph("nodes 1\nloop 1 -1\n"));
    REQUIRE(unstable.local_update(Configuration::from_string("+"), 0) == -1);
    REQUIRE(unstable.local_update(Configuration::from_string("-"), 0) == +1);
}

TEST_CASE("margins at a fixed point are non-positive") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        ThresholdNetwork net(oracle::random_graph(rng, n), oracle::random_thresholds(rng, n, 2));
        auto rec = orbit(net, {rng() & Configuration::full_mask(n), n}, UpdateMode::parallel(n));
        if (rec.period != 1) continue;
        for (int i = 0; i < n; ++i) REQUIRE(net.flip_margin(rec.cycle[0], i) <= 0);
    }
}

TEST_CASE("apply_set") {
    auto net = unstable_octagon();
    auto x = Configuration::from_string("-+----+-");
    auto after = net.apply_set(x, octagon_schedule.steps[0]);  // {3,5}
    REQUIRE(after.to_string() == "-++---+-");

    // Updating everything at once is one parallel step.
    auto f4 = unstable_square();
    auto alt = Configuration::from_string("-+-+");
    REQUIRE(f4.apply_set(alt, Configuration::full_mask(4)) ==
            f4.apply_mode(alt, UpdateMode::parallel(4)));

    // Disjoint sets compose sequentially.
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        ThresholdNetwork net2(oracle::random_graph(rng, n), oracle::random_thresholds(rng, n, 2));
        std::uint64_t a = rng() & Configuration::full_mask(n);
        std::uint64_t b = (rng() & Configuration::full_mask(n)) & ~a;
        if (!a || !b) continue;
        Configuration x0{rng() & Configuration::full_mask(n), n};
        auto two = net2.apply_set(net2.apply_set(x0, a), b);
        auto mode = UpdateMode{{a, b}, n};
        REQUIRE(net2.apply_mode(x0, mode) == two);
    }
}

TEST_CASE("apply_mode reproduces the worked traces") {
    SECTION("parallel step of the alternating state") {
        auto net = unstable_square();
        REQUIRE(net.apply_mode(Configuration::from_string("-+-+"), UpdateMode::parallel(4))
                    .to_string() == "+-+-");
    }
    SECTION("one full step of the eight-cell schedule") {
        auto net = unstable_octagon();
        std::vector<Configuration> subs;
        auto out = net.apply_mode(Configuration::from_string("-+----+-"), octagon_schedule, &subs);
        REQUIRE(out.to_string() == "-+++--+-");
        REQUIRE(subs.size() == 4);
        REQUIRE(subs[0].to_string() == "-++---+-");
        REQUIRE(subs[1].to_string() == "+-+----+");
        REQUIRE(subs[2].to_string() == "+-++---+");
        REQUIRE(subs[3].to_string() == "-+++--+-");
    }
    SECTION("sequential substeps of the four-cell network") {
        auto net = unstable_square();
        auto mode = UpdateMode::parse("seq:1,2,4,3", 4);
        std::vector<Configuration> subs;
        net.apply_mode(Configuration::from_string("-+-+"), mode, &subs);
        REQUIRE(subs.size() == 4);
        REQUIRE(subs[0].to_string() == "++-+");
        REQUIRE(subs[1].to_string() == "+--+");
        REQUIRE(subs[2].to_string() == "+---");
        REQUIRE(subs[3].to_string() == "+---");
    }
    SECTION("block-sequential semantics: parallel inside each block") {
        // f_I evaluates every vertex of the block against the incoming
        // state, so {1,4} then {2,3} maps the alternating state to its
        // shifted twin rather than collapsing it.
        auto net = unstable_square();
        auto mode = UpdateMode::parse("{1,4};{2,3}", 4);
        std::vector<Configuration> subs;
        auto out = net.apply_mode(Configuration::from_string("-+-+"), mode, &subs);
        REQUIRE(subs[0].to_string() == "++--");
        REQUIRE(out.to_string() == "+-+-");
        auto rec = orbit(net, Configuration::from_string("-+-+"), mode);
        REQUIRE(rec.period == 2);
    }
}

TEST_CASE("orbit records") {
    SECTION("parallel total two-cycle") {
        auto rec = orbit(unstable_square(), Configuration::from_string("-+-+"),
                         UpdateMode::parallel(4));
        REQUIRE(rec.transient == 0);
        REQUIRE(rec.period == 2);
        REQUIRE(rec.classification == AttractorClass::total_two_cycle);
        REQUIRE(rec.cycle[0].to_string() == "-+-+");
        REQUIRE(rec.cycle[1].to_string() == "+-+-");
    }
    SECTION("sequential fixed point") {
        auto rec = orbit(unstable_square(), Configuration::from_string("-+-+"),
                         UpdateMode::parse("seq:1,2,4,3", 4));
        REQUIRE(rec.period == 1);
        REQUIRE(rec.classification == AttractorClass::fixed_point);
        REQUIRE(rec.cycle[0].to_string() == "----");
        REQUIRE(rec.transient == 2);
    }
    SECTION("period five under the block schedule") {
        auto rec = orbit(unstable_octagon(), Configuration::from_string("-+----+-"), octagon_schedule);
        REQUIRE(rec.transient == 0);
        REQUIRE(rec.period == 5);
        REQUIRE(rec.classification == AttractorClass::long_cycle);
    }
    SECTION("budget error keeps the partial trajectory") {
        auto net = ThresholdNetwork(parse_graph("nodes 2\nedge 1 2 -1"));
        try {
            orbit(net, Configuration::from_string("++"), UpdateMode::parallel(2), 1);
            FAIL("expected OrbitBudgetError");
        } catch (const OrbitBudgetError& e) {
            REQUIRE(e.partial_trajectory.size() == 2);
            REQUIRE(e.partial_trajectory[0].to_string() == "++");
            REQUIRE(e.partial_trajectory[1].to_string() == "--");
        }
    }
    SECTION("deterministic") {
        auto a = orbit(unstable_octagon(), Configuration::from_string("-+----+-"), octagon_schedule, 1000,
                       true);
        auto b = orbit(unstable_octagon(), Configuration::from_string("-+----+-"), octagon_schedule, 1000,
                       true);
        REQUIRE(a.trajectory.size() == b.trajectory.size());
        for (std::size_t i = 0; i < a.trajectory.size(); ++i)
            REQUIRE(a.trajectory[i] == b.trajectory[i]);
        for (std::size_t i = 0; i < a.substeps.size(); ++i)
            REQUIRE(a.substeps[i] == b.substeps[i]);
    }
}

TEST_CASE("attractor enumeration") {
    SECTION("negative K2 under parallel") {
        ThresholdNetwork net(parse_graph("nodes 2\nedge 1 2 -1"));
        auto atlas = enumerate_attractors(net, UpdateMode::parallel(2));
        REQUIRE(atlas.total_states == 4);
        long long basin_sum = 0;
        bool total_cycle_found = false;
        for (const auto& a : atlas.attractors) {
            basin_sum += a.basin;
            if (a.period == 2) {
                total_cycle_found = true;
                REQUIRE(a.classification == AttractorClass::total_two_cycle);
                REQUIRE(a.cycle[0].to_string() == "++");
                REQUIRE(a.cycle[1].to_string() == "--");
            }
        }
        REQUIRE(total_cycle_found);
        REQUIRE(basin_sum == 4);
        REQUIRE(atlas.period_histogram.at(1) == 2);  // the mixed states are fixed
        REQUIRE(atlas.period_histogram.at(2) == 1);
    }
    SECTION("single loopless vertex has two fixed points") {
        ThresholdNetwork net(parse_graph("nodes 1\n"));
        auto atlas = enumerate_attractors(net, UpdateMode::parallel(1));
        REQUIRE(atlas.attractors.size() == 2);
        for (const auto& a : atlas.attractors) REQUIRE(a.period == 1);
    }
    SECTION("cycles stay successor-consecutive after canonical rotation") {
        std::mt19937 rng(53);
        for (int trial = 0; trial < 40; ++trial) {
            int n = 1 + static_cast<int>(rng() % 6);
            ThresholdNetwork net(oracle::random_graph(rng, n),
                                 oracle::random_thresholds(rng, n, 2));
            auto mode = UpdateMode{{(rng() & Configuration::full_mask(n)) | 1u,
                                    (rng() & Configuration::full_mask(n)) | 1u},
                                   n};
            auto atlas = enumerate_attractors(net, mode);
            for (const auto& a : atlas.attractors) {
                std::set<std::uint64_t> distinct;
                for (std::size_t i = 0; i < a.cycle.size(); ++i) {
                    distinct.insert(a.cycle[i].bits);
                    REQUIRE(net.apply_mode(a.cycle[i], mode) ==
                            a.cycle[(i + 1) % a.cycle.size()]);
                }
                REQUIRE(distinct.size() == a.cycle.size());
            }
        }
    }
    SECTION("histogram matches the independent double loop") {
        auto net = unstable_square();
        for (const char* spec : {"parallel", "seq:1,2,4,3", "{1,4};{2,3}"}) {
            auto mode = UpdateMode::parse(spec, 4);
            auto atlas = enumerate_attractors(net, mode);
            REQUIRE(atlas.period_histogram == oracle::brute_period_histogram(net, mode));
        }
    }
    SECTION("guard") {
        REQUIRE_THROWS_AS(enumerate_attractors(unstable_square(), UpdateMode::parallel(4), 3),
                          GuardError);
    }
}

TEST_CASE("energy") {
    auto net = unstable_square();
    REQUIRE(energy2(net, Configuration::from_string("-+-+")) == 12);
    REQUIRE(energy2(net, Configuration::from_string("++++")) == -4);

    SECTION("even when all thresholds vanish") {
        std::mt19937 rng(31);
        for (int trial = 0; trial < 80; ++trial) {
            int n = 1 + static_cast<int>(rng() % 9);
            ThresholdNetwork net2(oracle::random_graph(rng, n));
            Configuration x{rng() & Configuration::full_mask(n), n};
            REQUIRE(energy2(net2, x) == energy2(net2, x.negated()));
        }
    }
}

TEST_CASE("energy delta") {
    auto net = unstable_square();
    SECTION("no movement, no change") {
        auto x = Configuration::from_string("+-+-");
        auto d = energy_delta(net, x, x);
        REQUIRE(d.dl2 == 0);
        REQUIRE(d.flip_mask == 0);
    }
    SECTION("parallel step from the alternating state") {
        auto x = Configuration::from_string("-+-+");
        auto y = net.apply_mode(x, UpdateMode::parallel(4));
        auto d = energy_delta(net, x, y);
        REQUIRE(d.flip_mask == Configuration::full_mask(4));
        for (auto v : d.delta2) REQUIRE(v == -12);
    }
    SECTION("dimension mismatch") {
        REQUIRE_THROWS_AS(energy_delta(net, Configuration::from_string("-+-+"),
                                       Configuration::from_string("---")),
                          PreconditionError);
    }
    SECTION("identity 2dL = sum 2delta - y^T W y holds exactly") {
        std::mt19937 rng(37);
        for (int trial = 0; trial < 300; ++trial) {
            int n = 1 + static_cast<int>(rng() % 8);
            auto g = oracle::random_graph(rng, n);
            ThresholdNetwork net2(g, oracle::random_thresholds(rng, n, 3));
            Configuration x{rng() & Configuration::full_mask(n), n};
            Configuration y{rng() & Configuration::full_mask(n), n};
            auto d = energy_delta(net2, x, y);
            long long sum_delta = 0;
            for (auto v : d.delta2) sum_delta += v;
            long long quad = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    quad += static_cast<long long>(y.state(i) - x.state(i)) * g.w(i, j) *
                            (y.state(j) - x.state(j));
            REQUIRE(d.dl2 == sum_delta - quad);
        }
    }
    SECTION("flipped vertices drop by at least four on parallel steps") {
        std::mt19937 rng(41);
        for (int trial = 0; trial < 300; ++trial) {
            int n = 1 + static_cast<int>(rng() % 8);
            ThresholdNetwork net2(oracle::random_graph(rng, n),
                                  oracle::random_thresholds(rng, n, 3));
            Configuration x{rng() & Configuration::full_mask(n), n};
            auto y = net2.apply_mode(x, UpdateMode::parallel(n));
            auto d = energy_delta(net2, x, y);
            for (int i = 0; i < n; ++i)
                if ((d.flip_mask >> i) & 1)
                    REQUIRE(d.delta2[static_cast<std::size_t>(i)] <= -4);
        }
    }
}

TEST_CASE("parallel orbits settle into period at most two") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 2000; ++trial) {
        int n = 1 + static_cast<int>(rng() % 12);
        ThresholdNetwork net(oracle::random_graph(rng, n), oracle::random_thresholds(rng, n, 3));
        auto rec = orbit(net, {rng() & Configuration::full_mask(n), n}, UpdateMode::parallel(n));
        REQUIRE(rec.period <= 2);
    }
}

TEST_CASE("negation symmetry without ties") {
    std::mt19937 rng(47);
    int tested = 0;
    for (int trial = 0; trial < 500 && tested < 120; ++trial) {
        int n = 1 + static_cast<int>(rng() % 9);
        ThresholdNetwork net(oracle::random_graph(rng, n));
        Configuration x{rng() & Configuration::full_mask(n), n};
        bool tie = false;
        for (int i = 0; i < n; ++i)
            if (net.local_field(x, i) == 0) tie = true;
        if (tie) continue;
        ++tested;
        auto fx = net.apply_mode(x, UpdateMode::parallel(n));
        auto fnx = net.apply_mode(x.negated(), UpdateMode::parallel(n));
        REQUIRE(fnx == fx.negated());
    }
    REQUIRE(tested >= 100);
}
