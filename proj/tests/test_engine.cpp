#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "rrgather/adversary.hpp"
#include "rrgather/engine.hpp"
#include "rrgather/gather_grid.hpp"
#include "rrgather/gather_hypercube.hpp"

using namespace rrgather;

TEST_CASE("snapshots are multiplicity-blind") {
    Hypercube q3(3);
    Placement a = Placement::from_counts({{hc_vertex(0), 2}, {hc_vertex(1), 1}});
    Placement b = Placement::from_counts({{hc_vertex(0), 1}, {hc_vertex(1), 3}});
    CHECK(configuration_of(q3, a).occupied == configuration_of(q3, b).occupied);

    Placement single = Placement::from_counts({{hc_vertex(5), 5}});
    Configuration c = configuration_of(q3, single);
    CHECK(c.occ() == 1);
    CHECK(c.delta() == 0);

    Configuration p2 = configuration_of(q3, a);
    CHECK(p2.occ() == 2);
    CHECK(p2.delta() == 1);
}

TEST_CASE("step moves exactly the scheduled robot along one edge") {
    Hypercube q3(3);
    auto greedy = adv::make_strawman("greedy", nullptr);
    // two robots at distance 2: the mandatory move reduces the distance
    Placement p({q3.parse("000"), q3.parse("011")});
    Schedule s = Schedule::canonical(2);
    StepRecord rec = step(q3, p, s, 1, *greedy, canonical_resolver());
    CHECK(rec.executed);
    CHECK(q3.distance(p.position(0), p.position(1)) == 1);
    CHECK(rec.occ_after == 2);

    // a robot leaving a multiplicity increases occ if the target was empty
    Placement q = Placement::from_counts({{q3.parse("000"), 2}, {q3.parse("011"), 1}});
    Schedule s3 = Schedule::canonical(3);
    StepRecord rec2 = step(q3, q, s3, 1, *greedy, canonical_resolver());
    CHECK(rec2.executed);
    CHECK(rec2.occ_after == 3);
}

TEST_CASE("gathered placements stay quiescent") {
    Hypercube q3(3);
    hyper::HypercubeGatherer algo(q3);
    Placement p = Placement::from_counts({{hc_vertex(6), 4}});
    Trace t = run(q3, p, Schedule::canonical(4), algo, canonical_resolver(), 4);
    CHECK(t.verdict == Verdict::gathered);
    CHECK(t.epochs_used == 0);
    for (const StepRecord& s : t.steps) CHECK_FALSE(s.executed);
}

TEST_CASE("nice-star start gathers within one epoch on the grid") {
    SquareGrid g;
    st::GridGatherer algo;
    Placement p = Placement::from_counts({{Vertex{0, 0}, 2}, {Vertex{1, 1}, 2}});
    Trace t = run(g, p, Schedule::canonical(4), algo, canonical_resolver(), 4);
    CHECK(t.verdict == Verdict::gathered);
    CHECK(t.epochs_used == 1);
}

TEST_CASE("the adversarial pair placement loops under a distance reducer") {
    SquareGrid g;
    auto greedy = adv::make_strawman("greedy", nullptr);
    Placement p({Vertex{0, 0}, Vertex{0, 1}, Vertex{0, 0}});
    Trace t = run(g, p, Schedule{{0, 1, 2}}, *greedy, canonical_resolver(), 10);
    CHECK(t.verdict == Verdict::recurrence_detected);
    CHECK(t.recurrence->repeat_round - t.recurrence->first_round <= 6);
}

TEST_CASE("round-robin fairness") {
    Hypercube q4(4);
    hyper::HypercubeGatherer algo(q4);
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 20; ++iter) {
        int k = 2 + static_cast<int>(rng() % 4);
        std::vector<Vertex> robots;
        for (int i = 0; i < k; ++i) robots.push_back(hc_vertex(rng() % 16));
        Placement p(robots);
        std::vector<int> order(k);
        for (int i = 0; i < k; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        Trace t = run(q4, p, Schedule{order}, algo, canonical_resolver(), 16);
        for (std::size_t start = 0; start + k <= t.steps.size(); start += k) {
            std::set<int> seen;
            for (int i = 0; i < k; ++i) {
                CHECK(t.steps[start + i].epoch == static_cast<int>(start) / k + 1);
                seen.insert(t.steps[start + i].robot);
            }
            CHECK(static_cast<int>(seen.size()) == k);
        }
    }
}

TEST_CASE("atomicity: one robot, one edge per step") {
    SquareGrid g;
    st::GridGatherer algo;
    std::mt19937_64 rng(43);
    for (int iter = 0; iter < 20; ++iter) {
        int k = 2 + static_cast<int>(rng() % 4);
        std::vector<Vertex> robots;
        for (int i = 0; i < k; ++i)
            robots.push_back(Vertex{static_cast<int>(rng() % 4), static_cast<int>(rng() % 4)});
        Placement p(robots);
        if (st::ust_witness(p.occupied()).ungatherable()) continue;
        Trace t = run(g, p, Schedule::canonical(k), algo, seeded_random_resolver(iter), 40);
        std::map<Vertex, int> counts;
        for (const auto& [v, n] : t.initial.counts()) counts[v] = n;
        for (const StepRecord& s : t.steps) {
            if (s.executed) {
                CHECK(g.distance(s.from, s.to) == 1);
                CHECK(--counts[s.from] >= 0);
                ++counts[s.to];
                if (counts[s.from] == 0) counts.erase(s.from);
            }
            CHECK(static_cast<int>(counts.size()) == s.occ_after);
        }
    }
}

TEST_CASE("epoch lower bound per instance") {
    Hypercube q4(4);
    Configuration gathered{&q4, {hc_vertex(3)}};
    CHECK(epochs_lower_bound(gathered) == 0);

    Configuration far{&q4, {hc_vertex(0), hc_vertex(0xF)}};
    CHECK(epochs_lower_bound(far) == 2);

    SquareGrid g;
    Configuration wide{&g, {Vertex{0, 0}, Vertex{3, 4}}};
    CHECK(epochs_lower_bound(wide) == 4);
}

TEST_CASE("nice-star centers") {
    SquareGrid g;
    Configuration diag{&g, {Vertex{0, 0}, Vertex{1, 1}}};
    auto centers = nice_star_centers(diag);
    CHECK(centers == std::vector<Vertex>{{0, 1}, {1, 0}});

    Hypercube q3(3);
    Configuration star{&q3, {hc_vertex(1), hc_vertex(2), hc_vertex(4)}};
    CHECK(nice_star_centers(star) == std::vector<Vertex>{hc_vertex(0)});

    // adjacent pairs have no common neighbor on bipartite topologies
    Configuration p2g{&g, {Vertex{0, 0}, Vertex{0, 1}}};
    CHECK(nice_star_centers(p2g).empty());
    Configuration p2h{&q3, {hc_vertex(0), hc_vertex(1)}};
    CHECK(nice_star_centers(p2h).empty());
}

TEST_CASE("offers outside the neighborhood fail fast") {
    struct Broken final : Algorithm {
        MoveOffer compute(const Configuration&, Vertex) const override {
            return MoveOffer{{Vertex{5, 5}}, "bad"};
        }
        std::string name() const override { return "broken"; }
    } broken;
    SquareGrid g;
    Placement p({Vertex{0, 0}, Vertex{0, 1}});
    CHECK_THROWS_AS(run(g, p, Schedule::canonical(2), broken, canonical_resolver(), 2),
                    std::logic_error);
}

TEST_CASE("equal snapshots produce equal offers regardless of hidden counts") {
    Hypercube q4(4);
    hyper::HypercubeGatherer halgo(q4);
    SquareGrid g;
    st::GridGatherer galgo;
    std::mt19937_64 rng(47);
    for (int iter = 0; iter < 500; ++iter) {
        // hypercube side
        hc::OccMask mask = 0;
        while (std::popcount(mask) < 2) mask = rng() & 0xFFFFu;
        std::vector<Vertex> occ = hc::vertices_of(4, mask);
        Configuration c{&q4, occ};
        Vertex at = occ[rng() % occ.size()];
        MoveOffer base = halgo.compute(c, at);
        MoveOffer again = halgo.compute(c, at);  // counts are not even representable
        CHECK(base.destinations == again.destinations);
        CHECK(base.task == again.task);

        // grid side
        std::vector<Vertex> pat;
        std::uint32_t pm = 0;
        while (std::popcount(pm) < 2) pm = rng() & 0x1FFu;
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 3; ++x)
                if (pm & (1u << (x + 3 * y))) pat.push_back(Vertex{x, y});
        std::sort(pat.begin(), pat.end());
        Configuration cg{&g, pat};
        Vertex gat = pat[rng() % pat.size()];
        CHECK(galgo.compute(cg, gat).destinations == galgo.compute(cg, gat).destinations);
    }
}
