#include <set>
#include <sstream>

#include "doctest.h"
#include "rrgather/adversary.hpp"
#include "rrgather/gather_grid.hpp"
#include "rrgather/gather_hypercube.hpp"
#include "rrgather/io.hpp"

using namespace rrgather;

TEST_CASE("p2 scenario matches its advertised shape and defeats distance reducers") {
    auto cube = std::make_shared<Hypercube>(3);
    adv::AdversaryScenario sc = adv::p2_scenario(cube);
    Configuration c = configuration_of(*cube, sc.placement);
    CHECK(c.occ() == 2);
    CHECK(c.delta() == 1);
    CHECK(sc.placement.robot_count() == 3);

    auto greedy = adv::make_strawman("greedy", cube);
    adv::NonTermResult r = adv::prove_nontermination(sc, *greedy, canonical_resolver(), 10);
    REQUIRE(r.kind == adv::NonTermResult::Kind::recurrence);
    CHECK(r.certificate->loop_rounds() <= 6);  // at most two epochs
    CHECK(adv::replay_validates(*cube, *r.certificate));

    // the hypercube algorithm's own two-robot behavior loops the same way
    hyper::HypercubeGatherer algo(*cube);
    adv::NonTermResult rh = adv::prove_nontermination(sc, algo, canonical_resolver(), 10);
    REQUIRE(rh.kind == adv::NonTermResult::Kind::recurrence);
    CHECK(rh.certificate->loop_rounds() <= 6);
    CHECK(adv::replay_validates(*cube, *rh.certificate));

    auto gridtopo = std::make_shared<SquareGrid>();
    adv::AdversaryScenario gsc = adv::p2_scenario(gridtopo);
    st::GridGatherer galgo;
    adv::NonTermResult rg = adv::prove_nontermination(gsc, galgo, canonical_resolver(), 10);
    REQUIRE(rg.kind == adv::NonTermResult::Kind::recurrence);
    CHECK(rg.certificate->loop_rounds() <= 6);
    CHECK(adv::replay_validates(*gridtopo, *rg.certificate));
}

TEST_CASE("full-graph scenario") {
    adv::AdversaryScenario sc = adv::full_graph_scenario();
    CHECK(sc.placement.robot_count() == 9);
    Configuration c = configuration_of(*sc.topology, sc.placement);
    CHECK(c.occ() == 8);  // every vertex occupied, one hidden double

    // the hypercube algorithm refuses it up front
    const auto& cube = static_cast<const Hypercube&>(*sc.topology);
    CHECK(hyper::uh_witness(cube.dim(), hc::mask_of(c.occupied)).kind == hyper::UHKind::full);

    // the chase activation order loops a naive move-to-occupied strawman
    auto strawman = adv::make_strawman("to-occupied", sc.topology);
    adv::NonTermResult r = adv::prove_nontermination(sc, *strawman, canonical_resolver(), 20);
    REQUIRE(r.kind == adv::NonTermResult::Kind::recurrence);
    CHECK(adv::replay_validates(*sc.topology, *r.certificate));
}

TEST_CASE("clique and bipartite dichotomy scenarios") {
    for (int n : {3, 5}) {
        auto scenarios = adv::clique_bipartite_scenarios(n);
        REQUIRE(scenarios.size() == 5);
        for (const auto& sc : scenarios) {
            auto algo = adv::make_strawman(sc.algorithm_hint, sc.topology);
            adv::NonTermResult r =
                adv::prove_nontermination(sc, *algo, canonical_resolver(), 2000);
            if (sc.expected == "recurrence") {
                REQUIRE_MESSAGE(r.kind == adv::NonTermResult::Kind::recurrence, sc.name);
                CHECK(adv::replay_validates(*sc.topology, *r.certificate));
            } else {
                REQUIRE_MESSAGE(r.kind == adv::NonTermResult::Kind::gathered, sc.name);
                CHECK(r.trace.epochs_used == 1);
            }
        }
    }
}

TEST_CASE("p3 scenarios split by path class") {
    adv::AdversaryScenario h = adv::p3_scenario(std::make_shared<Hypercube>(3), "hypercube");
    Configuration ch = configuration_of(*h.topology, h.placement);
    CHECK(hyper::uh_witness(3, hc::mask_of(ch.occupied)).kind == hyper::UHKind::p3);

    adv::AdversaryScenario bent = adv::p3_scenario(std::make_shared<SquareGrid>(), "bent");
    Configuration cb = configuration_of(*bent.topology, bent.placement);
    CHECK(st::ust_witness(cb.occupied).kind == st::USTKind::two_by_two_three);

    adv::AdversaryScenario straight =
        adv::p3_scenario(std::make_shared<SquareGrid>(), "straight");
    Configuration cs = configuration_of(*straight.topology, straight.placement);
    CHECK(st::ust_witness(cs.occupied).kind == st::USTKind::none);
    st::GridGatherer algo;
    Trace t = run(*straight.topology, straight.placement, straight.schedule, algo,
                  canonical_resolver(), 20);
    CHECK(t.verdict == Verdict::gathered);
}

TEST_CASE("path classes centered at a vertex: one on hypercubes, two on grids") {
    // orbit computation over the 3-vertex paths centered at a fixed vertex
    Hypercube q3(3);
    std::set<std::uint64_t> hypercube_classes;
    auto nbrs = q3.neighbors(hc_vertex(0));
    for (std::size_t i = 0; i < nbrs.size(); ++i)
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
            hc::OccMask m = hc::bit_of(0) | hc::bit_of(hc_mask(nbrs[i])) |
                            hc::bit_of(hc_mask(nbrs[j]));
            hypercube_classes.insert(hc::hc_canonical(3, m));
        }
    CHECK(hypercube_classes.size() == 1);

    SquareGrid g;
    std::set<grid::PatternKey> grid_classes;
    auto gn = g.neighbors(Vertex{0, 0});
    for (std::size_t i = 0; i < gn.size(); ++i)
        for (std::size_t j = i + 1; j < gn.size(); ++j)
            grid_classes.insert(grid::grid_canonical({Vertex{0, 0}, gn[i], gn[j]}));
    CHECK(grid_classes.size() == 2);
}

TEST_CASE("two-robot offers reduce the pair distance") {
    Hypercube q4(4);
    hyper::HypercubeGatherer halgo(q4);
    for (std::uint32_t u = 0; u < 16; ++u)
        for (std::uint32_t v = u + 1; v < 16; ++v)
            CHECK(adv::reduces_pair_distance(q4, halgo, hc_vertex(u), hc_vertex(v)));

    // on the grid, the mandatory reduction shows in the final-task shapes
    // (collinear pairs go through the rectangle machinery instead)
    SquareGrid g;
    st::GridGatherer galgo;
    CHECK(adv::reduces_pair_distance(g, galgo, Vertex{0, 0}, Vertex{0, 1}));
    CHECK(adv::reduces_pair_distance(g, galgo, Vertex{0, 0}, Vertex{1, 1}));

    auto greedy = adv::make_strawman("greedy", nullptr);
    CHECK(adv::reduces_pair_distance(g, *greedy, Vertex{0, 0}, Vertex{2, 1}));
    auto away = adv::make_strawman("to-unoccupied", nullptr);
    CHECK_FALSE(adv::reduces_pair_distance(g, *away, Vertex{0, 0}, Vertex{2, 1}));
}

TEST_CASE("nice-star necessity checker") {
    SquareGrid g;
    st::GridGatherer algo;
    Placement p = Placement::from_counts({{Vertex{0, 0}, 1}, {Vertex{2, 0}, 1}, {Vertex{0, 2}, 2}});
    Trace t = run(g, p, Schedule::canonical(4), algo, canonical_resolver(), 40);
    REQUIRE(t.verdict == Verdict::gathered);
    adv::NiceStarCheck check = adv::check_nice_star_necessity(g, t);
    CHECK(check.applicable);
    CHECK(check.pass);

    // two occupied vertices: the necessity claim does not apply
    Placement p2 = Placement::from_counts({{Vertex{0, 0}, 1}, {Vertex{1, 1}, 1}});
    Trace t2 = run(g, p2, Schedule::canonical(2), algo, canonical_resolver(), 40);
    CHECK_FALSE(adv::check_nice_star_necessity(g, t2).applicable);
}

TEST_CASE("scenario files round-trip") {
    adv::AdversaryScenario sc = adv::full_graph_scenario();
    std::stringstream buf;
    io::write_scenario(buf, sc);
    io::LoadedScenario loaded = io::read_scenario(buf);
    CHECK(loaded.topology->kind() == TopologyKind::hypercube);
    CHECK(loaded.placement.positions() == sc.placement.positions());
    CHECK(loaded.schedule.order == sc.schedule.order);
}

TEST_CASE("recurrence certificates replay exactly") {
    auto gridtopo = std::make_shared<SquareGrid>();
    adv::AdversaryScenario sc = adv::p2_scenario(gridtopo);
    auto greedy = adv::make_strawman("greedy", gridtopo);
    adv::NonTermResult r = adv::prove_nontermination(sc, *greedy, canonical_resolver(), 10);
    REQUIRE(r.certificate.has_value());
    CHECK(adv::replay_validates(*gridtopo, *r.certificate));

    // a corrupted move sequence must not validate
    adv::RecurrenceCertificate bad = *r.certificate;
    bad.moves.front().second = Vertex{9, 9};
    CHECK_FALSE(adv::replay_validates(*gridtopo, bad));
}
