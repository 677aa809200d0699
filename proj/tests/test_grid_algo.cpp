#include <algorithm>
#include <set>

#include "doctest.h"
#include "rrgather/gather_grid.hpp"

using namespace rrgather;
using st::GTask;

namespace {

std::vector<Vertex> pattern(std::initializer_list<Vertex> vs) {
    std::vector<Vertex> out(vs);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("shape classification") {
    // a 1x4 line is the special task
    CHECK(st::classify_st(pattern({{0, 0}, {3, 0}})).task == GTask::t1);
    // a 4x5 configuration with one occupied corner is the general task
    CHECK(st::classify_st(pattern({{0, 0}, {4, 1}, {2, 3}})).task == GTask::t2);
    // the 2x2 diagonal is the final task
    CHECK(st::classify_st(pattern({{0, 0}, {1, 1}})).task == GTask::t4);
    // 3x2 with a free corner is the pre-final task
    CHECK(st::classify_st(pattern({{0, 0}, {1, 0}, {0, 2}})).task == GTask::t3);
    // all four corners occupied goes back to the special task
    CHECK(st::classify_st(pattern({{0, 0}, {1, 0}, {0, 2}, {1, 2}})).task == GTask::t1);
    CHECK(st::classify_st(pattern({{0, 0}, {1, 0}, {0, 1}, {1, 1}})).task == GTask::t1);
    // the orientation of a 2x3 pattern is irrelevant
    CHECK(st::classify_st(pattern({{0, 0}, {2, 0}, {0, 1}})).task == GTask::t3);
    // the (1,2) intermediate belongs to the final task
    CHECK(st::classify_st(pattern({{0, 0}, {0, 1}})).task == GTask::t4);
}

TEST_CASE("ungatherable witnesses") {
    CHECK(st::ust_witness(pattern({{0, 0}, {0, 1}})).kind == st::USTKind::one_by_two);
    CHECK(st::ust_witness(pattern({{0, 0}, {0, 1}, {1, 0}})).kind ==
          st::USTKind::two_by_two_three);
    // the straight 3-vertex path stays gatherable
    CHECK(st::ust_witness(pattern({{0, 0}, {0, 1}, {0, 2}})).kind == st::USTKind::none);
    CHECK(st::ust_witness(pattern({{0, 0}, {1, 1}})).kind == st::USTKind::none);
}

TEST_CASE("special-task moves") {
    const auto& table = st::default_32_table();
    // on a line, every robot offers both off-line steps
    MoveOffer o = st::move_st(pattern({{0, 0}, {1, 0}, {3, 0}}), Vertex{1, 0}, table);
    CHECK(o.task == "T1");
    CHECK(o.destinations == std::vector<Vertex>{{1, -1}, {1, 1}});

    // all-corners case: boundary robots step outward, interior robots idle
    std::vector<Vertex> square =
        pattern({{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}, {1, 0}});
    MoveOffer corner = st::move_st(square, Vertex{0, 0}, table);
    CHECK(corner.task == "T1");
    CHECK(corner.destinations == std::vector<Vertex>{{-1, 0}, {0, -1}});
    MoveOffer side = st::move_st(square, Vertex{1, 0}, table);
    CHECK(side.destinations == std::vector<Vertex>{{1, -1}});
    MoveOffer inner = st::move_st(square, Vertex{1, 1}, table);
    CHECK(inner.is_nil(Vertex{1, 1}));
}

TEST_CASE("general-task moves") {
    const auto& table = st::default_32_table();
    // 4 rows x 2 columns, free corners at the top: the far (bottom) side
    // robots enter the rectangle
    std::vector<Vertex> tall = pattern({{0, 0}, {1, 0}, {0, 1}, {1, 2}, {0, 3}});
    REQUIRE(st::classify_st(tall).task == GTask::t2);
    MoveOffer far_mover = st::move_st(tall, Vertex{0, 0}, table);
    CHECK(far_mover.task == "T2");
    CHECK(far_mover.destinations == std::vector<Vertex>{{0, 1}});
    // robots away from the far short side idle
    CHECK(st::move_st(tall, Vertex{0, 1}, table).is_nil(Vertex{0, 1}));

    // movers never leave their row or column, so the unoccupied reference
    // corner stays unoccupied
    std::set<Vertex> dests;
    for (Vertex v : tall)
        for (Vertex d : st::move_st(tall, v, table).destinations) dests.insert(d);
    CHECK_FALSE(dests.count(Vertex{1, 3}));
}

TEST_CASE("final-task moves") {
    const auto& table = st::default_32_table();
    // diagonal: both free corners are offered as star centers
    MoveOffer diag = st::move_st(pattern({{0, 0}, {1, 1}}), Vertex{0, 0}, table);
    CHECK(diag.task == "T4");
    CHECK(diag.destinations == std::vector<Vertex>{{0, 1}, {1, 0}});

    // three occupied: ends join the middle, the middle idles
    std::vector<Vertex> bent = pattern({{0, 0}, {0, 1}, {1, 1}});
    MoveOffer end = st::move_st(bent, Vertex{0, 0}, table);
    CHECK(end.destinations == std::vector<Vertex>{{0, 1}});
    CHECK(st::move_st(bent, Vertex{0, 1}, table).is_nil(Vertex{0, 1}));

    // the (1,2) intermediate collapses onto the other occupied vertex
    MoveOffer last = st::move_st(pattern({{0, 0}, {0, 1}}), Vertex{0, 1}, table);
    CHECK(last.destinations == std::vector<Vertex>{{0, 0}});
}

TEST_CASE("pre-final task stays within its domain") {
    const auto& table = st::default_32_table();
    // one step away from the diagonal: the table takes it
    std::vector<Vertex> pat = pattern({{0, 0}, {1, 0}, {0, 2}});
    REQUIRE(st::classify_st(pat).task == GTask::t3);
    bool some_move = false;
    for (Vertex v : pat) {
        MoveOffer o = st::move_st(pat, v, table);
        CHECK(o.task == "T3");
        for (Vertex d : o.destinations) {
            if (d == v) continue;
            some_move = true;
            // simulate the solid move: the result is a 3x2 class or the diagonal
            std::vector<Vertex> next;
            for (Vertex w : pat)
                if (w != v) next.push_back(w);
            if (!std::binary_search(pat.begin(), pat.end(), d)) next.push_back(d);
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            auto cls = st::classify_st(next);
            CHECK((cls.task == GTask::t3 || cls.task == GTask::t4));
        }
    }
    CHECK(some_move);
}

TEST_CASE("3x2 table synthesis is deterministic") {
    st::Grid32Table a = st::synthesize_32_table();
    st::Grid32Table b = st::synthesize_32_table();
    REQUIRE(a.entries.size() == b.entries.size());
    for (const auto& [key, entry] : a.entries) {
        REQUIRE(b.entries.count(key));
        CHECK(b.entries.at(key).pairs == entry.pairs);
    }
    CHECK(a.entries.size() == 9);
}

TEST_CASE("dihedral-equivariant offers by construction") {
    const auto& table = st::default_32_table();
    std::vector<Vertex> pat = pattern({{0, 0}, {1, 0}, {0, 2}});
    grid::GridIsometry g{1, Vertex{3, 4}};
    std::vector<Vertex> img = g.apply(pat);
    for (Vertex v : pat) {
        MoveOffer base = st::move_st(pat, v, table);
        MoveOffer image = st::move_st(img, g.apply(v), table);
        std::vector<Vertex> mapped;
        for (Vertex d : base.destinations) mapped.push_back(g.apply(d));
        std::sort(mapped.begin(), mapped.end());
        CHECK(mapped == image.destinations);
    }
}
