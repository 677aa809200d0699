#pragma once

#include <map>
#include <string>
#include <vector>

#include "rrgather/engine.hpp"
#include "rrgather/grid_geometry.hpp"
#include "rrgather/topology.hpp"

// The square-tessellation gathering algorithm. Shapes are matched on the
// minimum bounding rectangle with (m,n) and (n,m) identified, since
// disoriented robots cannot tell rows from columns. The 3x2 endgame moves are
// synthesized under a structural certificate and re-checked by the verifier.

namespace rrgather::st {

enum class GTask { t1, t2, t3, t4 };
const char* to_string(GTask t);

enum class USTKind { none, one_by_two, two_by_two_three };
const char* to_string(USTKind k);

struct USTWitness {
    USTKind kind = USTKind::none;
    bool ungatherable() const { return kind != USTKind::none; }
};

USTWitness ust_witness(const std::vector<Vertex>& occupied);

struct GClassification {
    GTask task = GTask::t4;
    grid::Rectangle box;
};

// Total on every configuration with occ >= 2 (U_ST members classify too; the
// engine front ends reject them as initial configurations).
GClassification classify_st(const std::vector<Vertex>& occupied);

// Moves for the 3x2 pre-final task, keyed on the canonical pattern; the
// designated (mover, destination) pairs are stored in the coordinates of the
// canonical representative (a 2-wide, 3-tall anchored window).
struct G32Entry {
    std::vector<std::pair<Vertex, Vertex>> pairs;
};

struct Grid32Table {
    std::map<grid::PatternKey, G32Entry> entries;
};

Grid32Table synthesize_32_table();
const Grid32Table& default_32_table();

std::vector<Vertex> t3_offer(const Grid32Table& table, const std::vector<Vertex>& occupied,
                             Vertex at);

MoveOffer move_st(const std::vector<Vertex>& occupied, Vertex at, const Grid32Table& table);

class GridGatherer final : public Algorithm {
public:
    GridGatherer() : table_(&default_32_table()) {}
    explicit GridGatherer(const Grid32Table& table) : table_(&table) {}

    MoveOffer compute(const Configuration& config, Vertex at) const override;
    std::string name() const override { return "grid"; }

private:
    const Grid32Table* table_;
};

// Canonical key of the 2x2 pattern with two non-adjacent occupied vertices,
// the terminal configuration of the 3x2 table.
grid::PatternKey diagonal_22_key();

}  // namespace rrgather::st
