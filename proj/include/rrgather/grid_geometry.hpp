#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rrgather/vertex.hpp"

// Bounding rectangles and the dihedral-plus-translation symmetries of the
// square tessellation graph. Patterns are canonicalized by anchoring their
// bounding rectangle at the origin and minimizing over the 8 dihedral maps,
// so a key identifies a pattern up to any grid isometry.

namespace rrgather::grid {

struct Rectangle {
    Vertex lo;  // componentwise minimum corner
    Vertex hi;  // componentwise maximum corner

    int rows() const { return hi.y - lo.y + 1; }
    int cols() const { return hi.x - lo.x + 1; }
    int long_side() const { return rows() > cols() ? rows() : cols(); }
    int short_side() const { return rows() < cols() ? rows() : cols(); }
    std::array<Vertex, 4> corners() const {
        return {lo, Vertex{hi.x, lo.y}, Vertex{lo.x, hi.y}, hi};
    }
    bool contains(Vertex v) const {
        return v.x >= lo.x && v.x <= hi.x && v.y >= lo.y && v.y <= hi.y;
    }

    bool operator==(const Rectangle&) const = default;
};

Rectangle mbr(const std::vector<Vertex>& occupied);

// Grid isometry v |-> D8[d8] * v + t.
struct GridIsometry {
    int d8 = 0;  // index into the 8 dihedral linear maps
    Vertex t{0, 0};

    Vertex apply(Vertex v) const;
    std::vector<Vertex> apply(const std::vector<Vertex>& vs) const;  // sorted image
    GridIsometry inverse() const;
};

Vertex d8_apply(int d8, Vertex v);
int d8_inverse(int d8);

// Anchored canonical form of a pattern: width, height (width <= height after
// minimization) and the cell bitmask with bit index x + width * y.
struct PatternKey {
    int width = 0;
    int height = 0;
    std::uint64_t mask = 0;

    auto operator<=>(const PatternKey&) const = default;
};

std::vector<Vertex> pattern_vertices(const PatternKey& key);

struct GridCanonical {
    PatternKey key;
    GridIsometry to_canonical;  // maps the input pattern onto key's cells
};

// Requires a nonempty pattern with at most 64 bounding-box cells.
GridCanonical grid_canonicalize(const std::vector<Vertex>& occupied);
PatternKey grid_canonical(const std::vector<Vertex>& occupied);

}  // namespace rrgather::grid
