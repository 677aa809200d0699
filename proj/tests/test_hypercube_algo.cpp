#include <algorithm>
#include <bit>
#include <set>

#include "doctest.h"
#include "rrgather/engine.hpp"
#include "rrgather/gather_hypercube.hpp"
#include "rrgather/hypercube_geometry.hpp"

using namespace rrgather;
using hyper::DmaStatus;
using hyper::HTask;

namespace {

hc::OccMask mask_of_list(std::initializer_list<std::uint32_t> vs) {
    hc::OccMask m = 0;
    for (auto v : vs) m |= hc::bit_of(v);
    return m;
}

// the ordered split of Q4 along `axis` with S the side where the bit is 0
hc::Split q4_split(int axis, bool s_is_low) {
    hc::SubHypercube bound{4, 0, 0};
    for (const auto& sp : hc::axis_splits(4, bound)) {
        bool low_s = !(sp.s.frozen_values & (1u << axis));
        if (sp.axis == axis && low_s == s_is_low) return sp;
    }
    throw std::logic_error("split not found");
}

}  // namespace

TEST_CASE("direct-move-allowed fails by exactly the three clauses") {
    // (a): one occupied vertex in S, D full
    hc::Split sp = q4_split(3, true);
    hc::OccMask occ_a = hc::bit_of(0b0000) | sp.d_cells;
    hyper::DmaVerdict a = hyper::dma(sp, occ_a);
    CHECK(a.status == DmaStatus::fail_a);
    CHECK(a.v == 0b0000);

    // (b): lone vertex v in S, D misses only the mirror of v
    hc::OccMask occ_b = hc::bit_of(0b0000) | (sp.d_cells & ~hc::bit_of(0b1000));
    hyper::DmaVerdict b = hyper::dma(sp, occ_b);
    CHECK(b.status == DmaStatus::fail_b);
    CHECK(b.v == 0b0000);
    CHECK(b.w == 0b1000);

    // (c): two adjacent occupied in S, D misses only a vertex adjacent to one
    hc::OccMask occ_c =
        mask_of_list({0b0000, 0b0001}) | (sp.d_cells & ~hc::bit_of(0b1000));
    hyper::DmaVerdict c = hyper::dma(sp, occ_c);
    CHECK(c.status == DmaStatus::fail_c);
    CHECK(c.v == 0b0000);
    CHECK(c.w == 0b1000);

    // two non-adjacent occupied in S with two unoccupied in D: allowed
    hc::OccMask occ_ok =
        mask_of_list({0b0000, 0b0011}) | (sp.d_cells & ~mask_of_list({0b1000, 0b1111}));
    CHECK(hyper::dma(sp, occ_ok).status == DmaStatus::allowed);
}

TEST_CASE("L sets") {
    // perfectly balanced splits leave L1 empty (antipodal pair)
    hyper::LSets balanced = hyper::l_sets(4, mask_of_list({0b0000, 0b1111}));
    CHECK(balanced.l0.size() == 8);
    CHECK(balanced.l1.empty());

    // fully occupied Q4: L1 empty too, routed to T8 by classify
    hc::OccMask full = 0xFFFF;
    CHECK(hyper::l_sets(4, full).l1.empty());

    CHECK_THROWS_AS(hyper::l_sets(3, mask_of_list({0b000, 0b111})), std::invalid_argument);
}

TEST_CASE("a constructed Q4 instance with |L2| = 1") {
    // lone robot below, an independent 4-set above: only the axis-3 split
    // reaches the maximum occ(D), and its direct move is allowed
    hc::OccMask occ = mask_of_list({0b0000, 0b1000, 0b1011, 0b1101, 0b1110});
    // oracle: replay the set definitions over all 8 ordered splits
    hc::SubHypercube bound = hc::mbh(4, occ);
    CHECK(bound.dim() == 4);
    auto splits = hc::axis_splits(4, bound);
    int max_d = 0;
    for (const auto& sp : splits)
        max_d = std::max(max_d, std::popcount(occ & sp.d_cells));
    int l1 = 0, l2 = 0;
    for (const auto& sp : splits) {
        if (std::popcount(occ & sp.d_cells) != max_d) continue;
        if (std::popcount(occ & sp.s_cells) >= std::popcount(occ & sp.d_cells)) continue;
        ++l1;
        if (hyper::dma(sp, occ).status == DmaStatus::allowed) ++l2;
    }
    CHECK(l1 >= 1);
    CHECK(l2 == 1);

    hyper::LSets ls = hyper::l_sets(4, occ);
    CHECK(ls.l2.size() == 1);
    CHECK(hyper::classify_h(4, occ).task == HTask::t2);
}

TEST_CASE("ungatherable witnesses") {
    CHECK(hyper::uh_witness(3, mask_of_list({0b000, 0b001})).kind == hyper::UHKind::p2);
    CHECK(hyper::uh_witness(3, mask_of_list({0b000, 0b001, 0b011})).kind == hyper::UHKind::p3);
    CHECK(hyper::uh_witness(3, 0xFF).kind == hyper::UHKind::full);
    CHECK(hyper::uh_witness(3, mask_of_list({0b000, 0b011})).kind == hyper::UHKind::none);
    CHECK(hyper::uh_witness(3, mask_of_list({0b000, 0b011, 0b101})).kind == hyper::UHKind::none);
    // a fully occupied sub-cube of a larger cube is not in U_H
    CHECK(hyper::uh_witness(4, 0xFF).kind == hyper::UHKind::none);
}

TEST_CASE("task classification") {
    // any bounding cube of dimension <= 3 is task T1
    CHECK(hyper::classify_h(4, mask_of_list({0b0000, 0b0111})).task == HTask::t1);
    // fully occupied bounding cube of dimension 4 is task T8
    CHECK(hyper::classify_h(4, 0xFFFF).task == HTask::t8);
    // balanced, not full, crossing edge present: T6
    CHECK(hyper::classify_h(4, mask_of_list({0b0000, 0b1111})).task == HTask::t6);

    // fail (b) on the only candidate split: T5ii
    hc::Split sp = q4_split(3, true);
    hc::OccMask occ_b = hc::bit_of(0b0000) | (sp.d_cells & ~hc::bit_of(0b1000));
    CHECK(hyper::classify_h(4, occ_b).task == HTask::t5ii);

    // fail (a): D full, S lone robot: T5i
    hc::OccMask occ_a = hc::bit_of(0b0000) | sp.d_cells;
    CHECK(hyper::classify_h(4, occ_a).task == HTask::t5i);
}

TEST_CASE("moves designate the paper's robots") {
    Hypercube q4(4);
    const hyper::Q3MoveTable& table = hyper::default_t1_table();

    SUBCASE("T5i: the robot across the lone vertex moves to it") {
        hc::Split sp = q4_split(3, true);
        hc::OccMask occ = hc::bit_of(0b0000) | sp.d_cells;
        MoveOffer o = hyper::move_h(q4, occ, hc_vertex(0b1000), table);
        CHECK(o.task == "T5i");
        CHECK(o.destinations == std::vector<Vertex>{hc_vertex(0b0000)});
        // every other robot idles
        MoveOffer nil = hyper::move_h(q4, occ, hc_vertex(0b1111), table);
        CHECK(nil.is_nil(hc_vertex(0b1111)));
    }

    SUBCASE("T5ii: the lone robot moves to an arbitrary neighbor within S") {
        hc::Split sp = q4_split(3, true);
        hc::OccMask occ = hc::bit_of(0b0000) | (sp.d_cells & ~hc::bit_of(0b1000));
        MoveOffer o = hyper::move_h(q4, occ, hc_vertex(0b0000), table);
        CHECK(o.task == "T5ii");
        CHECK(o.destinations ==
              std::vector<Vertex>{hc_vertex(0b0001), hc_vertex(0b0010), hc_vertex(0b0100)});
    }

    SUBCASE("T8: robots step outside a fully occupied bounding cube") {
        Hypercube q5(5);
        hc::OccMask occ = 0xFFFF;  // a full Q4 inside Q5
        MoveOffer o = hyper::move_h(q5, occ, hc_vertex(0b00101), hyper::default_t1_table());
        CHECK(o.task == "T8");
        CHECK(o.destinations == std::vector<Vertex>{hc_vertex(0b10101)});
    }

    SUBCASE("T1 from the distance-2 pair offers both common neighbors") {
        Hypercube q3(3);
        hc::OccMask occ = mask_of_list({0b000, 0b011});
        MoveOffer o = hyper::move_h(q3, occ, hc_vertex(0b000), table);
        CHECK(o.task == "T1");
        CHECK(o.destinations == std::vector<Vertex>{hc_vertex(0b001), hc_vertex(0b010)});
    }

    SUBCASE("T2 movers sit in S; robots in D idle") {
        hc::OccMask occ = mask_of_list({0b0000, 0b1000, 0b1011, 0b1101, 0b1110});
        hyper::HClassification cls = hyper::classify_h(4, occ);
        REQUIRE(cls.task == HTask::t2);
        const hc::Split& sp = cls.lsets.l2.front();
        for (std::uint32_t v = 0; v < 16; ++v) {
            if (!(occ & hc::bit_of(v))) continue;
            MoveOffer o = hyper::move_h(q4, occ, hc_vertex(v), table);
            if (sp.s_cells & hc::bit_of(v)) {
                CHECK(o.destinations ==
                      std::vector<Vertex>{hc_vertex(v ^ (1u << sp.axis))});
            } else {
                CHECK(o.is_nil(hc_vertex(v)));
            }
        }
    }

    SUBCASE("gathered snapshots always yield nil") {
        MoveOffer o = hyper::move_h(q4, hc::bit_of(0b0101), hc_vertex(0b0101), table);
        CHECK(o.is_nil(hc_vertex(0b0101)));
        CHECK(o.task == "G");
    }
}

TEST_CASE("table synthesis is deterministic and well-structured") {
    hyper::Q3MoveTable a = hyper::synthesize_t1_table();
    hyper::Q3MoveTable b = hyper::synthesize_t1_table();
    REQUIRE(a.entries.size() == b.entries.size());
    for (const auto& [key, entry] : a.entries) {
        REQUIRE(b.entries.count(key));
        CHECK(b.entries.at(key).kind == entry.kind);
        CHECK(b.entries.at(key).pairs == entry.pairs);
    }
    CHECK(a.entries.size() == 21);

    // gathered class idles, adjacent pair heads for its partner
    CHECK(a.entries.at(hyper::q3_gathered_key()).kind ==
          hyper::Q3TableEntry::Kind::nil_move);
    const auto& p2 = a.entries.at(hyper::q3_adjacent_pair_key());
    REQUIRE(p2.pairs.size() == 2);
    for (const auto& [src, dst] : p2.pairs)
        CHECK((hyper::q3_adjacent_pair_key() & hc::bit_of(dst)) != 0);

    // the distance-2 pair offers exactly the two common neighbors per end
    const auto& pair22 = a.entries.at(hyper::q3_distance2_pair_key());
    CHECK(pair22.pairs.size() == 4);
    CHECK(a.entries.at(hyper::q3_full_key()).kind == hyper::Q3TableEntry::Kind::exit_move);

    // the path class collapses its ends onto the occupied center
    const auto& p3 = a.entries.at(hyper::q3_path3_key());
    for (const auto& [src, dst] : p3.pairs)
        CHECK((hyper::q3_path3_key() & hc::bit_of(dst)) != 0);
}

TEST_CASE("the blocked-direct-move chain runs to gathering") {
    // lone robot opposite a full half-cube: T5i empties the facing vertex,
    // T5ii sidesteps, and the direct moves of T2 finish the reduction
    Hypercube q4(4);
    hyper::HypercubeGatherer algo(q4);
    std::vector<std::pair<Vertex, int>> counts{{hc_vertex(0b0000), 1}};
    for (std::uint32_t v = 0b1000; v <= 0b1111; ++v) counts.emplace_back(hc_vertex(v), 1);
    Placement p = Placement::from_counts(counts);
    REQUIRE(hyper::classify_h(4, hc::mask_of(p.occupied())).task == HTask::t5i);

    Trace t = run(q4, p, Schedule::canonical(9), algo, canonical_resolver(), 30);
    CHECK(t.verdict == Verdict::gathered);
    std::set<std::string> seen;
    for (const StepRecord& s : t.steps)
        if (s.executed) seen.insert(s.task);
    CHECK(seen.count("T5i"));
    CHECK(seen.count("T5ii"));
    CHECK(seen.count("T2"));
}

TEST_CASE("lower-dimensional bounding cubes route through the virtual Q3 table") {
    Hypercube q4(4);
    const auto& table = hyper::default_t1_table();
    // a face pair at distance 2 inside Q4: same move as the Q3 class 2.2
    hc::OccMask occ = mask_of_list({0b0000, 0b0011});
    MoveOffer o = hyper::move_h(q4, occ, hc_vertex(0b0000), table);
    CHECK(o.task == "T1");
    CHECK(o.destinations == std::vector<Vertex>{hc_vertex(0b0001), hc_vertex(0b0010)});

    // a fully occupied 2-face escapes along the unfrozen ambient axes
    hc::OccMask face = mask_of_list({0b0000, 0b0001, 0b0010, 0b0011});
    MoveOffer esc = hyper::move_h(q4, face, hc_vertex(0b0000), table);
    CHECK(esc.task == "T1");
    CHECK(esc.destinations == std::vector<Vertex>{hc_vertex(0b0100), hc_vertex(0b1000)});
}
