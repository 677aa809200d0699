#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "rrgather/gather_grid.hpp"
#include "rrgather/gather_hypercube.hpp"
#include "rrgather/io.hpp"
#include "rrgather/verifier.hpp"

using namespace rrgather;
using verify::SweepSpec;
using verify::TransitionPair;

TEST_CASE("small exhaustive sweeps are clean") {
    SweepSpec hc_spec;
    hc_spec.target = SweepSpec::Target::hypercube;
    hc_spec.dim = 3;
    hc_spec.k_max = 3;
    hc_spec.horizon_epochs = 12;
    verify::SweepReport hc_report = verify::sweep(hc_spec);
    CHECK(hc_report.clean());
    CHECK(hc_report.gathered > 0);
    CHECK(hc_report.rejected_initials > 0);
    CHECK(verify::pairs_conform(hc_report.observed_pairs, SweepSpec::Target::hypercube));

    SweepSpec g_spec;
    g_spec.target = SweepSpec::Target::grid;
    g_spec.rows_cap = 3;
    g_spec.cols_cap = 3;
    g_spec.k_max = 3;
    g_spec.horizon_epochs = 24;
    verify::SweepReport g_report = verify::sweep(g_spec);
    CHECK(g_report.clean());
    CHECK(verify::pairs_conform(g_report.observed_pairs, SweepSpec::Target::grid));
}

TEST_CASE("sweeps are deterministic given the seed") {
    SweepSpec spec;
    spec.target = SweepSpec::Target::hypercube;
    spec.dim = 4;
    spec.k_min = 2;
    spec.k_max = 5;
    spec.schedules = SweepSpec::Schedules::canonical;
    spec.placements = SweepSpec::Placements::random;
    spec.random_samples = 50;
    spec.seed = 99;
    spec.horizon_epochs = 16;
    verify::SweepReport a = verify::sweep(spec);
    spec.workers = 3;
    verify::SweepReport b = verify::sweep(spec);
    CHECK(a.instances == b.instances);
    CHECK(a.gathered == b.gathered);
    CHECK(a.max_epochs == b.max_epochs);
    CHECK(a.max_ratio == doctest::Approx(b.max_ratio));
    CHECK(a.observed_pairs == b.observed_pairs);
    CHECK(a.violations.size() == b.violations.size());
}

TEST_CASE("transition conformance rules") {
    CHECK(verify::hyper_pair_allowed({"T5ii", "T2", false}));
    CHECK_FALSE(verify::hyper_pair_allowed({"T2", "T3", false}));
    CHECK(verify::hyper_pair_allowed({"T2", "T3", true}));  // bound shrank
    CHECK(verify::hyper_pair_allowed({"T6", "T1", true}));
    CHECK_FALSE(verify::hyper_pair_allowed({"T5i", "T1", true}));
    CHECK(verify::grid_pair_allowed({"T4", "G", false}));
    CHECK(verify::grid_pair_allowed({"T1", "T3", false}));
    CHECK_FALSE(verify::grid_pair_allowed({"T3", "T2", false}));
}

TEST_CASE("trace transition check accepts real runs and rejects fabricated ones") {
    Hypercube q4(4);
    hyper::HypercubeGatherer algo(q4);
    Placement p = Placement::from_counts(
        {{hc_vertex(0b0000), 1}, {hc_vertex(0b1011), 2}, {hc_vertex(0b0110), 1}});
    Trace t = run(q4, p, Schedule::canonical(4), algo, canonical_resolver(), 16);
    REQUIRE(t.verdict == Verdict::gathered);
    CHECK(verify::check_transitions(q4, t, SweepSpec::Target::hypercube).pass);
    CHECK(verify::check_lower_bound(q4, t));

    // fabricate a step labeled T2 whose successor classifies as T6 at the
    // same bounding dimension; Table 1 has no such row
    Trace fake;
    StepRecord s;
    s.executed = true;
    s.task = "T2";
    s.occupied_before = hc::vertices_of(4, 0xFFFF);  // b = 4
    s.occupied_after = {hc_vertex(0b0000), hc_vertex(0b1111)};  // T6, still b = 4
    REQUIRE(hyper::classify_h(4, hc::mask_of(s.occupied_after)).task == hyper::HTask::t6);
    fake.steps.push_back(s);
    verify::TransitionCheck check =
        verify::check_transitions(q4, fake, SweepSpec::Target::hypercube);
    CHECK_FALSE(check.pass);
    CHECK(check.offending.from == "T2");
}

TEST_CASE("observed cycle analysis") {
    std::set<TransitionPair> pairs;
    for (const auto& cycle : verify::allowed_hyper_cycles()) {
        for (std::size_t i = 0; i < cycle.size(); ++i)
            pairs.insert(TransitionPair{cycle[i], cycle[(i + 1) % cycle.size()], false});
    }
    auto cycles = verify::task_cycles(pairs);
    CHECK(cycles.size() >= verify::allowed_hyper_cycles().size());
    for (const auto& c : cycles) CHECK(verify::cycle_sanctioned(c));

    // a rogue edge creating a new cycle is caught
    pairs.insert(TransitionPair{"T4", "T2", false});
    pairs.insert(TransitionPair{"T2", "T4", false});
    bool all_ok = true;
    for (const auto& c : verify::task_cycles(pairs)) all_ok &= verify::cycle_sanctioned(c);
    CHECK_FALSE(all_ok);

    // shrink transitions and self-loops never count as cycles
    std::set<TransitionPair> benign{{"T2", "T2", false}, {"T3", "T2", true}, {"T2", "T3", true}};
    CHECK(verify::task_cycles(benign).empty());
}

TEST_CASE("table certification catches injected defects") {
    hyper::Q3MoveTable table = hyper::synthesize_t1_table();
    REQUIRE(verify::certify_q3_table(table).all_pass());

    SUBCASE("a two-cycle breaks acyclicity") {
        hyper::Q3MoveTable broken = table;
        // send the distance-2 pair away to the antipodal pair and back
        std::uint64_t k22 = hyper::q3_distance2_pair_key();
        // moving one end of {001,010} to 101 yields the distance-3 pair
        broken.entries.at(k22).pairs = {{0b001, 0b101}, {0b010, 0b110}};
        std::uint64_t k23 = hc::hc_canonical(3, hc::bit_of(0b010) | hc::bit_of(0b101));
        auto& other = broken.entries.at(k23);
        auto rep23 = hc::vertices_of(3, k23);
        std::uint32_t a = hc_mask(rep23[0]);
        // step back toward the partner: distance 3 becomes 2
        std::uint32_t b = a ^ 1u;
        if (std::popcount(b ^ hc_mask(rep23[1])) != 2) b = a ^ 2u;
        other.pairs = {{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)}};
        verify::TableCertificateReport report = verify::certify_q3_table(broken);
        bool acyclic_pass = true;
        for (const auto& clause : report.clauses)
            if (clause.name == "acyclicity") acyclic_pass = clause.pass;
        CHECK_FALSE(acyclic_pass);
    }

    SUBCASE("a missing class breaks totality") {
        hyper::Q3MoveTable broken = table;
        broken.entries.erase(hyper::q3_path3_key());
        CHECK_FALSE(verify::certify_q3_table(broken).all_pass());
    }

    SUBCASE("mutual feeding breaks the drain clause") {
        hyper::Q3MoveTable broken = table;
        // opposite-edges class: movers onto occupied partners refill movers
        std::uint64_t key = hc::hc_canonical(
            3, hc::bit_of(0b010) | hc::bit_of(0b011) | hc::bit_of(0b100) | hc::bit_of(0b101));
        auto rep = hc::vertices_of(3, key);
        std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs;
        for (Vertex v : rep)
            for (Vertex w : rep)
                if (std::popcount(hc_mask(v) ^ hc_mask(w)) == 1)
                    pairs.push_back({static_cast<std::uint8_t>(hc_mask(v)),
                                     static_cast<std::uint8_t>(hc_mask(w))});
        broken.entries.at(key).pairs = pairs;
        verify::TableCertificateReport report = verify::certify_q3_table(broken);
        bool drain_pass = true;
        for (const auto& clause : report.clauses)
            if (clause.name == "self-loops-drain") drain_pass = clause.pass;
        CHECK_FALSE(drain_pass);
    }
}

TEST_CASE("grid table certification catches growth") {
    st::Grid32Table table = st::synthesize_32_table();
    REQUIRE(verify::certify_grid32_table(table).all_pass());

    st::Grid32Table broken = table;
    auto& entry = broken.entries.begin()->second;
    entry.pairs = {{Vertex{0, 0}, Vertex{-1, 0}}};  // leaves the window
    CHECK_FALSE(verify::certify_grid32_table(broken).all_pass());
}

TEST_CASE("equivariance checks pass for the gatherers and fail for a label-reader") {
    Hypercube q3(3);
    hyper::HypercubeGatherer halgo(q3);
    CHECK_FALSE(verify::equivariance_check_hypercube(halgo, 3, 40, 1).has_value());

    st::GridGatherer galgo;
    CHECK_FALSE(verify::equivariance_check_grid(galgo, 40, 2).has_value());

    // a strawman that steers toward the lexicographically smallest occupied
    // vertex depends on the labeling, not the structure
    struct LabelReader final : Algorithm {
        MoveOffer compute(const Configuration& config, Vertex at) const override {
            Vertex target = config.occupied.front();
            if (target == at) return nil_offer(at, "label");
            for (Vertex n : config.topology->neighbors(at))
                if (config.topology->distance(n, target) < config.topology->distance(at, target))
                    return MoveOffer{{n}, "label"};
            return nil_offer(at, "label");
        }
        std::string name() const override { return "label-reader"; }
    } reader;
    CHECK(verify::equivariance_check_hypercube(reader, 3, 40, 3).has_value());
}

TEST_CASE("report serialization is stable") {
    SweepSpec spec;
    spec.target = SweepSpec::Target::hypercube;
    spec.dim = 3;
    spec.k_max = 2;
    verify::SweepReport report = verify::sweep(spec);
    Hypercube q3(3);
    std::stringstream a, b;
    io::write_report(a, spec, report, q3);
    io::write_report(b, spec, verify::sweep(spec), q3);
    CHECK(a.str() == b.str());
}
